#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "pass_noma/geometry_channel.hpp"
#include "pass_noma/noma_core.hpp"

namespace pass_noma::oracle {

struct AlphaSearchResult {
    bool feasible = false;
    Eigen::VectorXd alpha;  // by user
    double sum_rate = 0.0;
    long long evaluated = 0;
};

/// Exhaustive search over the simplex grid {alpha_i in r N, sum alpha <= 1}
/// under the gain-sorted decoding order. K <= 4, resolution >= 1e-3.
AlphaSearchResult grid_alpha(const Eigen::VectorXd& gains, const QosParams& qos, double noise_variance,
                             double resolution);

struct RadiationSearchResult {
    bool feasible = false;
    Eigen::VectorXd p;
    Eigen::VectorXd alpha;
    double sum_rate = 0.0;
    long long feasible_samples = 0;
};

/// Uniform samples on the non-negative ball sum p_n^2 <= P_T, each paired with
/// the closed-form shares under its own gain ordering; keeps the best.
RadiationSearchResult random_p(const ChannelMatrix& channels, const QosParams& qos, double power_budget,
                               long long samples, std::uint64_t seed);

/// Rates evaluated by direct summation over users ordered after j.
Eigen::VectorXd reference_rates(const Eigen::VectorXd& gains, const Eigen::VectorXd& alpha,
                                const std::vector<int>& decoding_position, double noise_variance);

}  // namespace pass_noma::oracle
