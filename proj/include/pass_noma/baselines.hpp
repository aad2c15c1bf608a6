#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pass_noma/geometry_channel.hpp"
#include "pass_noma/noma_core.hpp"
#include "pass_noma/sca_radiation.hpp"

namespace pass_noma {

// Which pinching antennas radiate under equal power radiation.
struct ActivationMask {
    std::vector<bool> active;

    static ActivationMask all(int num_antennas);
    /// Bit n of `bits` activates antenna n.
    static ActivationMask from_bits(int num_antennas, unsigned long long bits);

    int size() const { return static_cast<int>(active.size()); }
    int count() const;
    std::string to_string() const;  // e.g. "1101"
};

struct EprResult {
    bool feasible = false;
    double sum_rate = 0.0;
    Eigen::VectorXd p;
    Eigen::VectorXd alpha;  // by user
    Eigen::VectorXd rates;  // by user
    DecodingOrder order;
};

/// Equal amplitudes on the active antennas, gain-sorted order and closed-form shares.
EprResult epr_rate(const ChannelMatrix& channels, const ActivationMask& mask, const QosParams& qos,
                   double power_budget, BudgetReading reading = BudgetReading::squared_amplitudes);

enum class ActivationStrategy { exhaustive, greedy };

std::string to_string(ActivationStrategy strategy);
ActivationStrategy parse_activation_strategy(const std::string& text);

struct ActivationResult {
    ActivationMask mask;
    EprResult epr;
    long long evaluated = 0;
};

/// Exhaustive search over every non-empty mask (N_t <= 16), or greedy single flips
/// starting from all antennas active until no flip improves the sum rate.
ActivationResult best_activation(const ChannelMatrix& channels, const QosParams& qos, double power_budget,
                                 ActivationStrategy strategy,
                                 BudgetReading reading = BudgetReading::squared_amplitudes);

}  // namespace pass_noma
