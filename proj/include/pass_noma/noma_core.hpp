#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pass_noma/geometry_channel.hpp"

namespace pass_noma {

// SIC decoding order. Position 0 is decoded first (weakest user); users are 0-based.
class DecodingOrder {
public:
    DecodingOrder() = default;

    /// users[i] is the user decoded at position i; must be a permutation of 0..K-1.
    static DecodingOrder from_sequence(std::vector<int> users);
    static DecodingOrder identity(int num_users);

    int size() const { return static_cast<int>(sequence_.size()); }
    int user_at(int position) const { return sequence_[static_cast<std::size_t>(position)]; }
    int position_of(int user) const { return position_[static_cast<std::size_t>(user)]; }
    const std::vector<int>& sequence() const { return sequence_; }

    friend bool operator==(const DecodingOrder&, const DecodingOrder&) = default;

private:
    std::vector<int> sequence_;
    std::vector<int> position_;
};

// Per-user minimum rates (bits/s/Hz).
struct QosParams {
    std::vector<double> r_min;

    static QosParams uniform(int num_users, double rate);
    int size() const { return static_cast<int>(r_min.size()); }
    /// (2^R - 1) / 2^R
    double beta(int user) const;
    /// 2^R
    double a(int user) const;
};

// Suffix sums S_i = sum of alpha over positions >= i, with S_K = 0 appended.
std::vector<double> tail_sums(const Eigen::VectorXd& alpha, const DecodingOrder& order);

/// Rate at which user j decodes user m's stream. Requires position(j) >= position(m).
double cross_rate(int j, int m, const Eigen::VectorXd& gains, const Eigen::VectorXd& alpha,
                  const DecodingOrder& order, double noise_variance);

/// Own-stream rates after successful SIC.
Eigen::VectorXd user_rates(const Eigen::VectorXd& gains, const Eigen::VectorXd& alpha,
                           const DecodingOrder& order, double noise_variance);

/// Ascending effective gain, ties broken by user index.
DecodingOrder order_by_gains(const Eigen::VectorXd& gains);
DecodingOrder order_by_effective_gain(const ChannelMatrix& channels, const Eigen::VectorXd& p);

/// Sum-rate optimal NOMA fractions under per-user minimum rates for a fixed order.
///
/// Every user except the last one in the order is given exactly the share
/// that meets its minimum rate; the remaining budget goes to the last user.
/// `gains` and the result are indexed by user. Throws qos_infeasible when the
/// demands cannot be met within the unit budget.
Eigen::VectorXd closed_form_alpha(const Eigen::VectorXd& gains, const DecodingOrder& order,
                                  const QosParams& qos, double noise_variance);

/// Same closed form on normalized gains hbar (gain / noise) and betas, both listed in decoding order.
/// Returns shares in decoding order; no feasibility check.
Eigen::VectorXd closed_form_alpha_sorted(std::span<const double> hbar_sorted,
                                         std::span<const double> beta_sorted);

struct SicReport {
    bool feasible = true;
    double min_margin = 0.0;  // min over pairs of R_{m->j} - R_m; 0 when no pair exists
    int worst_decoder = -1;
    int worst_stream = -1;
};

SicReport check_sic_feasibility(const Eigen::VectorXd& gains, const Eigen::VectorXd& alpha,
                                const DecodingOrder& order, double noise_variance,
                                double tolerance = 1e-9);

double sum_rate(std::span<const double> rates);
double sum_rate(const Eigen::VectorXd& rates);

}  // namespace pass_noma
