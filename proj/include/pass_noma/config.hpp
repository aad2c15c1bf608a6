#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pass_noma/ao_driver.hpp"
#include "pass_noma/baselines.hpp"
#include "pass_noma/geometry_channel.hpp"

namespace pass_noma {

enum class ExperimentKind { vary_antennas, vary_users, sic_compare, single };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& text);

struct PhysicalParams {
    double carrier_frequency = 28e9;  // Hz
    double n_eff = 1.4;
    double kappa_db_per_m = 0.08;
    double height = 3.0;  // m
    double d1 = 10.0;     // m, along the waveguide
    double d2 = 6.0;      // m
    double noise_dbm = -90.0;
    double power_budget = 1.0;  // W
    double r_min = 0.5;         // bits/s/Hz
    bool free_space_phase = false;
    BudgetReading budget_reading = BudgetReading::squared_amplitudes;

    double noise_variance() const { return dbm_to_watts(noise_dbm); }
    LayoutParams layout(int num_antennas) const;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::single;
    int trials = 100;
    std::uint64_t seed = 1;
    std::vector<int> sweep;  // N_t values, or K values for vary-users; empty means the default for the kind
    int num_users = 3;       // fixed K when sweeping N_t
    int num_antennas = 20;   // fixed N_t when sweeping K
    ActivationStrategy activation = ActivationStrategy::greedy;
    PhysicalParams physical;
    AoConfig solver;
    std::string output_dir = "out";

    /// Sweep values after defaults are filled in.
    std::vector<int> sweep_values() const;
    void validate() const;
};

/// Parse INI text. Keys are addressed as section.key; `overrides` holds
/// "section.key=value" strings applied on top of the file. Errors carry the
/// source name, line number when known, and the offending field.
ExperimentConfig parse_config(const std::string& text, const std::string& source_name = "<config>",
                              const std::vector<std::string>& overrides = {});

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// INI rendering that parse_config reads back to an equal configuration.
std::string render_config(const ExperimentConfig& config);

}  // namespace pass_noma
