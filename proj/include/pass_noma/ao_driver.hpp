#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pass_noma/geometry_channel.hpp"
#include "pass_noma/noma_core.hpp"
#include "pass_noma/sca_radiation.hpp"

namespace pass_noma {

enum class SicMode { dynamic, exhaustive };

std::string to_string(SicMode mode);
SicMode parse_sic_mode(const std::string& text);

struct AoConfig {
    double eps_outer = 1e-4;  // bits/s/Hz
    int max_outer = 50;
    SicMode sic_mode = SicMode::dynamic;
    BudgetReading budget_reading = BudgetReading::squared_amplitudes;
    // Also start from the single-user matched beam of every user and keep the best run.
    bool multi_start = true;
    // Candidate radiation vectors drawn when searching a feasible start for a frozen order.
    int start_search_samples = 2000;
    ScaConfig sca;

    void validate() const;
};

enum class AoStatus { converged, max_iters, qos_infeasible };

std::string to_string(AoStatus status);

struct AoTraceRow {
    int outer = 0;
    std::vector<int> order;
    Eigen::VectorXd alpha;
    double sum_rate = 0.0;
    int sca_iterations = 0;
};

struct AoResult {
    Eigen::VectorXd p_star;
    Eigen::VectorXd alpha_star;  // by user
    DecodingOrder order_star;
    double sum_rate = 0.0;
    Eigen::VectorXd rates;  // by user
    std::vector<double> outer_trajectory;
    std::vector<AoTraceRow> trace;
    AoStatus status = AoStatus::qos_infeasible;
    int outer_iterations = 0;

    bool feasible() const { return status != AoStatus::qos_infeasible; }
};

// Optional overrides of the starting point and of the ordering policy.
struct AoStart {
    std::optional<Eigen::VectorXd> p_init;
    std::optional<DecodingOrder> frozen_order;
};

/// Alternate closed-form shares and SCA on the radiation vector, re-deriving the
/// SIC order from the effective gains at the top of every outer iteration.
AoResult ao_optimize(const ChannelMatrix& channels, const QosParams& qos, double power_budget,
                     const AoConfig& config = {}, const AoStart& start = {});

/// Best frozen-order run over all K! decoding orders (K <= 6).
AoResult ao_exhaustive_sic(const ChannelMatrix& channels, const QosParams& qos, double power_budget,
                           const AoConfig& config = {});

/// Dispatch on config.sic_mode.
AoResult ao_solve(const ChannelMatrix& channels, const QosParams& qos, double power_budget,
                  const AoConfig& config = {});

/// Highest sum-rate radiation vector among equal amplitudes, matched beams and
/// seeded samples for which `order` admits feasible shares and SIC. Empty if none.
std::optional<Eigen::VectorXd> feasible_start(const ChannelMatrix& channels, const DecodingOrder& order,
                                              const QosParams& qos, const RadiationBudget& budget,
                                              int samples, std::uint64_t seed);

}  // namespace pass_noma
