#include "pass_noma/noma_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pass_noma/error.hpp"

namespace pass_noma {

DecodingOrder DecodingOrder::from_sequence(std::vector<int> users) {
    const int k = static_cast<int>(users.size());
    std::vector<int> position(users.size(), -1);
    for (int i = 0; i < k; ++i) {
        const int u = users[static_cast<std::size_t>(i)];
        if (u < 0 || u >= k || position[static_cast<std::size_t>(u)] != -1) {
            throw Error(ErrorKind::invalid_parameter, "decoding order is not a permutation");
        }
        position[static_cast<std::size_t>(u)] = i;
    }
    DecodingOrder out;
    out.sequence_ = std::move(users);
    out.position_ = std::move(position);
    return out;
}

DecodingOrder DecodingOrder::identity(int num_users) {
    std::vector<int> seq(static_cast<std::size_t>(num_users));
    std::iota(seq.begin(), seq.end(), 0);
    return from_sequence(std::move(seq));
}

QosParams QosParams::uniform(int num_users, double rate) {
    if (num_users < 1) throw Error(ErrorKind::invalid_parameter, "need at least one user");
    if (!(rate >= 0.0)) throw Error(ErrorKind::invalid_parameter, "minimum rate must be non-negative");
    return QosParams{std::vector<double>(static_cast<std::size_t>(num_users), rate)};
}

double QosParams::beta(int user) const {
    const double a_k = a(user);
    return (a_k - 1.0) / a_k;
}

double QosParams::a(int user) const { return std::exp2(r_min[static_cast<std::size_t>(user)]); }

std::vector<double> tail_sums(const Eigen::VectorXd& alpha, const DecodingOrder& order) {
    const int k = order.size();
    std::vector<double> s(static_cast<std::size_t>(k) + 1, 0.0);
    for (int i = k - 1; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i) + 1] + alpha(order.user_at(i));
    }
    return s;
}

namespace {

void check_sizes(const Eigen::VectorXd& gains, const Eigen::VectorXd& alpha, const DecodingOrder& order) {
    if (gains.size() != alpha.size() || gains.size() != order.size()) {
        throw Error(ErrorKind::dimension_mismatch, "gains, shares and order disagree on K");
    }
}

// log2(1 + g a / (g s + n)) written as log2((g (a + s) + n) / (g s + n)).
double stream_rate(double gain, double share, double interference_share, double noise) {
    return std::log2((gain * (share + interference_share) + noise) / (gain * interference_share + noise));
}

}  // namespace

double cross_rate(int j, int m, const Eigen::VectorXd& gains, const Eigen::VectorXd& alpha,
                  const DecodingOrder& order, double noise_variance) {
    check_sizes(gains, alpha, order);
    if (order.position_of(j) < order.position_of(m)) {
        throw Error(ErrorKind::invalid_pair,
                    "user " + std::to_string(j) + " does not decode user " + std::to_string(m));
    }
    const auto s = tail_sums(alpha, order);
    const double after = s[static_cast<std::size_t>(order.position_of(m)) + 1];
    return stream_rate(gains(j), alpha(m), after, noise_variance);
}

Eigen::VectorXd user_rates(const Eigen::VectorXd& gains, const Eigen::VectorXd& alpha,
                           const DecodingOrder& order, double noise_variance) {
    check_sizes(gains, alpha, order);
    const auto s = tail_sums(alpha, order);
    Eigen::VectorXd rates(gains.size());
    for (int k = 0; k < gains.size(); ++k) {
        const double after = s[static_cast<std::size_t>(order.position_of(k)) + 1];
        rates(k) = stream_rate(gains(k), alpha(k), after, noise_variance);
    }
    return rates;
}

DecodingOrder order_by_gains(const Eigen::VectorXd& gains) {
    std::vector<int> seq(static_cast<std::size_t>(gains.size()));
    std::iota(seq.begin(), seq.end(), 0);
    std::stable_sort(seq.begin(), seq.end(), [&](int a, int b) { return gains(a) < gains(b); });
    return DecodingOrder::from_sequence(std::move(seq));
}

DecodingOrder order_by_effective_gain(const ChannelMatrix& channels, const Eigen::VectorXd& p) {
    if (p.size() == 0 || (p.array() == 0.0).all()) {
        throw Error(ErrorKind::degenerate_radiation, "radiation vector is identically zero");
    }
    return order_by_gains(effective_gains(channels, p));
}

Eigen::VectorXd closed_form_alpha_sorted(std::span<const double> hbar_sorted,
                                         std::span<const double> beta_sorted) {
    const std::size_t k = hbar_sorted.size();
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
    if (k == 0) return alpha;
    // alpha_i = beta_i (prod_{j<i}(1-beta_j) + 1/hbar_i - sum_{j<i} beta_j/hbar_j prod_{j<l<i}(1-beta_l))
    double assigned = 0.0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        double prod = 1.0;
        for (std::size_t j = 0; j < i; ++j) prod *= 1.0 - beta_sorted[j];
        double carried = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            double inner = 1.0;
            for (std::size_t l = j + 1; l < i; ++l) inner *= 1.0 - beta_sorted[l];
            carried += inner * beta_sorted[j] / hbar_sorted[j];
        }
        const double a = beta_sorted[i] * (prod + 1.0 / hbar_sorted[i] - carried);
        alpha(static_cast<Eigen::Index>(i)) = std::max(a, 0.0);
        assigned += alpha(static_cast<Eigen::Index>(i));
    }
    alpha(static_cast<Eigen::Index>(k - 1)) = std::max(1.0 - assigned, 0.0);
    return alpha;
}

Eigen::VectorXd closed_form_alpha(const Eigen::VectorXd& gains, const DecodingOrder& order,
                                  const QosParams& qos, double noise_variance) {
    const int k = order.size();
    if (gains.size() != k || qos.size() != k) {
        throw Error(ErrorKind::dimension_mismatch, "gains, QoS and order disagree on K");
    }
    std::vector<double> hbar(static_cast<std::size_t>(k));
    std::vector<double> beta(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const int u = order.user_at(i);
        if (!(gains(u) > 0.0)) {
            throw Error(ErrorKind::qos_infeasible, "user " + std::to_string(u) + " has zero effective gain");
        }
        hbar[static_cast<std::size_t>(i)] = gains(u) / noise_variance;
        beta[static_cast<std::size_t>(i)] = qos.beta(u);
    }
    const Eigen::VectorXd sorted = closed_form_alpha_sorted(hbar, beta);

    double assigned = 0.0;
    for (int i = 0; i + 1 < k; ++i) assigned += sorted(i);
    if (assigned > 1.0) {
        throw Error(ErrorKind::qos_infeasible, "minimum-rate demands exceed the power budget");
    }
    // Remaining share must still carry the last user's own minimum rate.
    const int last = order.user_at(k - 1);
    const double needed_last = (qos.a(last) - 1.0) / hbar[static_cast<std::size_t>(k) - 1];
    if (sorted(k - 1) < needed_last * (1.0 - 1e-12)) {
        throw Error(ErrorKind::qos_infeasible, "last-decoded user cannot reach its minimum rate");
    }

    Eigen::VectorXd alpha(k);
    for (int i = 0; i < k; ++i) alpha(order.user_at(i)) = sorted(i);
    return alpha;
}

SicReport check_sic_feasibility(const Eigen::VectorXd& gains, const Eigen::VectorXd& alpha,
                                const DecodingOrder& order, double noise_variance, double tolerance) {
    check_sizes(gains, alpha, order);
    const auto s = tail_sums(alpha, order);
    SicReport report;
    report.min_margin = std::numeric_limits<double>::infinity();
    const int k = order.size();
    for (int pm = 0; pm < k; ++pm) {
        const int m = order.user_at(pm);
        const double after = s[static_cast<std::size_t>(pm) + 1];
        const double own = stream_rate(gains(m), alpha(m), after, noise_variance);
        for (int pj = pm + 1; pj < k; ++pj) {
            const int j = order.user_at(pj);
            const double margin = stream_rate(gains(j), alpha(m), after, noise_variance) - own;
            if (margin < report.min_margin) {
                report.min_margin = margin;
                report.worst_decoder = j;
                report.worst_stream = m;
            }
        }
    }
    if (report.worst_decoder < 0) report.min_margin = 0.0;
    report.feasible = report.min_margin >= -tolerance;
    return report;
}

double sum_rate(std::span<const double> rates) {
    return std::accumulate(rates.begin(), rates.end(), 0.0);
}

double sum_rate(const Eigen::VectorXd& rates) {
    return sum_rate(std::span<const double>(rates.data(), static_cast<std::size_t>(rates.size())));
}

}  // namespace pass_noma
