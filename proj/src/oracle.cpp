#include "pass_noma/oracle.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "pass_noma/error.hpp"

namespace pass_noma::oracle {

Eigen::VectorXd reference_rates(const Eigen::VectorXd& gains, const Eigen::VectorXd& alpha,
                                const std::vector<int>& decoding_position, double noise_variance) {
    const auto k = gains.size();
    Eigen::VectorXd rates(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        double interference = 0.0;
        for (Eigen::Index i = 0; i < k; ++i) {
            if (decoding_position[static_cast<std::size_t>(i)] > decoding_position[static_cast<std::size_t>(j)]) {
                interference += gains(j) * alpha(i);
            }
        }
        rates(j) = std::log2(1.0 + gains(j) * alpha(j) / (interference + noise_variance));
    }
    return rates;
}

namespace {

std::vector<int> positions_from_gains(const Eigen::VectorXd& gains) {
    // Rank by gain, ties by index: position = number of users that come before.
    const auto k = gains.size();
    std::vector<int> pos(static_cast<std::size_t>(k), 0);
    for (Eigen::Index u = 0; u < k; ++u) {
        int before = 0;
        for (Eigen::Index v = 0; v < k; ++v) {
            if (gains(v) < gains(u) || (gains(v) == gains(u) && v < u)) ++before;
        }
        pos[static_cast<std::size_t>(u)] = before;
    }
    return pos;
}

bool meets_qos(const Eigen::VectorXd& rates, const QosParams& qos) {
    for (Eigen::Index u = 0; u < rates.size(); ++u) {
        if (rates(u) < qos.r_min[static_cast<std::size_t>(u)] - 1e-12) return false;
    }
    return true;
}

}  // namespace

AlphaSearchResult grid_alpha(const Eigen::VectorXd& gains, const QosParams& qos, double noise_variance,
                             double resolution) {
    const int k = static_cast<int>(gains.size());
    if (k < 1 || k > 4) throw Error(ErrorKind::invalid_parameter, "grid oracle supports 1 <= K <= 4");
    if (!(resolution >= 1e-3 - 1e-15) || resolution > 1.0) {
        throw Error(ErrorKind::invalid_parameter, "grid resolution must lie in [1e-3, 1]");
    }
    if (qos.size() != k) throw Error(ErrorKind::dimension_mismatch, "QoS size differs from K");

    const auto pos = positions_from_gains(gains);
    int first = 0;
    for (int u = 0; u < k; ++u) {
        if (pos[static_cast<std::size_t>(u)] == 0) first = u;
    }
    const int steps = static_cast<int>(std::lround(1.0 / resolution));

    AlphaSearchResult best;
    best.alpha = Eigen::VectorXd::Zero(k);
    // The first-decoded user interferes with nobody, so for fixed remaining
    // shares its rate is maximised by taking everything that is left.
    std::vector<int> others;
    for (int u = 0; u < k; ++u) {
        if (u != first) others.push_back(u);
    }
    std::vector<int> units(others.size(), 0);
    Eigen::VectorXd alpha(k);

    auto visit = [&](int used) {
        alpha.setZero();
        for (std::size_t i = 0; i < others.size(); ++i) alpha(others[i]) = units[i] * resolution;
        alpha(first) = (steps - used) * resolution;
        const Eigen::VectorXd rates = reference_rates(gains, alpha, pos, noise_variance);
        ++best.evaluated;
        if (!meets_qos(rates, qos)) return;
        const double total = rates.sum();
        if (!best.feasible || total > best.sum_rate) {
            best.feasible = true;
            best.sum_rate = total;
            best.alpha = alpha;
        }
    };

    // Odometer over the K-1 remaining coordinates with sum <= steps.
    std::function<void(std::size_t, int)> recurse = [&](std::size_t idx, int used) {
        if (idx == others.size()) {
            visit(used);
            return;
        }
        for (int n = 0; n + used <= steps; ++n) {
            units[idx] = n;
            recurse(idx + 1, used + n);
        }
    };
    recurse(0, 0);
    return best;
}

RadiationSearchResult random_p(const ChannelMatrix& channels, const QosParams& qos, double power_budget,
                               long long samples, std::uint64_t seed) {
    const int k = channels.num_users();
    const int n = channels.num_antennas();
    if (samples < 1) throw Error(ErrorKind::invalid_parameter, "need at least one sample");
    if (qos.size() != k) throw Error(ErrorKind::dimension_mismatch, "QoS size differs from K");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    RadiationSearchResult best;
    Eigen::VectorXd p(n);
    Eigen::VectorXd gains(k);
    std::vector<double> hbar(static_cast<std::size_t>(k));
    std::vector<double> beta(static_cast<std::size_t>(k));
    std::vector<int> by_position(static_cast<std::size_t>(k));

    for (long long s = 0; s < samples; ++s) {
        for (int i = 0; i < n; ++i) p(i) = std::abs(normal(rng));
        const double radius = std::sqrt(power_budget) * std::pow(unit(rng), 1.0 / n);
        const double norm = p.norm();
        if (norm == 0.0) continue;
        p *= radius / norm;

        for (int u = 0; u < k; ++u) {
            std::complex<double> c = 0.0;
            for (int i = 0; i < n; ++i) c += channels.h(u, i) * p(i);
            gains(u) = std::norm(c);
        }
        const auto pos = positions_from_gains(gains);
        for (int u = 0; u < k; ++u) by_position[static_cast<std::size_t>(pos[static_cast<std::size_t>(u)])] = u;
        bool usable = true;
        for (int i = 0; i < k; ++i) {
            const int u = by_position[static_cast<std::size_t>(i)];
            if (!(gains(u) > 0.0)) usable = false;
            hbar[static_cast<std::size_t>(i)] = gains(u) / channels.noise_variance;
            beta[static_cast<std::size_t>(i)] = qos.beta(u);
        }
        if (!usable) continue;
        const Eigen::VectorXd sorted = closed_form_alpha_sorted(hbar, beta);
        Eigen::VectorXd alpha(k);
        for (int i = 0; i < k; ++i) alpha(by_position[static_cast<std::size_t>(i)]) = sorted(i);
        if (alpha.sum() > 1.0 + 1e-12) continue;

        const Eigen::VectorXd rates = reference_rates(gains, alpha, pos, channels.noise_variance);
        if (!meets_qos(rates, qos)) continue;
        ++best.feasible_samples;
        const double total = rates.sum();
        if (!best.feasible || total > best.sum_rate) {
            best.feasible = true;
            best.sum_rate = total;
            best.p = p;
            best.alpha = alpha;
        }
    }
    return best;
}

}  // namespace pass_noma::oracle
