#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pass_noma/config.hpp"
#include "pass_noma/geometry_channel.hpp"

namespace pass_noma {

enum class Scheme { gpr, epr_all, epr_activation, exhaustive_sic };

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& text);

/// Schemes evaluated per trial for an experiment kind, in output order.
std::vector<Scheme> schemes_for(ExperimentKind kind);

struct TrialRecord {
    int trial = 0;
    int sweep_value = 0;
    int num_users = 0;
    int num_antennas = 0;
    Scheme scheme = Scheme::gpr;
    bool feasible = false;
    std::string status;
    double sum_rate = 0.0;
    std::vector<double> rates;
    int outer_iterations = 0;
    std::uint64_t channel_hash = 0;
    double wall_time = 0.0;  // seconds; not part of equality

    bool operator==(const TrialRecord& o) const;
};

struct SummaryRow {
    int sweep_value = 0;
    Scheme scheme = Scheme::gpr;
    int trials = 0;
    int feasible = 0;
    double feasible_fraction = 0.0;
    double mean = 0.0;       // over feasible trials; NaN if none
    double std_error = 0.0;  // sample standard deviation / sqrt(n); 0 for n = 1
    // Mean paired relative gain over `reference` on trials where both are feasible.
    std::string reference;
    double paired_gain = 0.0;
    int pairs = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<TrialRecord> records;  // ordered by (sweep value position, trial, scheme)
    std::vector<SummaryRow> summary;   // ordered by (sweep value position, scheme)
};

/// FNV-1a over the channel coefficients and the noise variance.
std::uint64_t channel_hash(const ChannelMatrix& channels);

/// Channels of one trial: users drawn with seed + trial on the layout for (K, N_t).
ChannelMatrix trial_channels(const ExperimentConfig& config, int num_users, int num_antennas, int trial);

/// Every scheme of the experiment on one trial's channels.
std::vector<TrialRecord> run_trial(const ExperimentConfig& config, int sweep_value, int trial);

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

/// Worker count from PASS_NOMA_WORKERS, defaulting to the hardware concurrency.
int workers_from_env();

/// Runs all (sweep value, trial) pairs on `workers` threads (0 reads the environment).
ExperimentResult run_experiment(const ExperimentConfig& config, int workers = 0);

}  // namespace pass_noma
