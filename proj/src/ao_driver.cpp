#include "pass_noma/ao_driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "pass_noma/error.hpp"

namespace pass_noma {

std::string to_string(SicMode mode) { return mode == SicMode::dynamic ? "dynamic" : "exhaustive"; }

SicMode parse_sic_mode(const std::string& text) {
    if (text == "dynamic") return SicMode::dynamic;
    if (text == "exhaustive") return SicMode::exhaustive;
    throw Error(ErrorKind::invalid_parameter, "unknown SIC mode '" + text + "'");
}

std::string to_string(AoStatus status) {
    switch (status) {
        case AoStatus::converged: return "converged";
        case AoStatus::max_iters: return "max-iters";
        case AoStatus::qos_infeasible: return "qos-infeasible";
    }
    return "unknown";
}

void AoConfig::validate() const {
    if (!(eps_outer > 0.0) || !(sca.eps > 0.0)) throw Error(ErrorKind::invalid_parameter, "tolerances must be positive");
    if (max_outer < 1 || sca.max_iters < 1) throw Error(ErrorKind::invalid_parameter, "iteration limits must be >= 1");
    if (start_search_samples < 0) throw Error(ErrorKind::invalid_parameter, "start_search_samples must be >= 0");
}

namespace {

struct Shares {
    Eigen::VectorXd alpha;
    double sum_rate = -std::numeric_limits<double>::infinity();
    bool ok = false;
};

// Closed-form shares for a given order, accepted only if SIC also holds.
Shares shares_for(const ChannelMatrix& channels, const Eigen::VectorXd& p, const DecodingOrder& order,
                  const QosParams& qos) {
    Shares s;
    const Eigen::VectorXd gains = effective_gains(channels, p);
    try {
        s.alpha = closed_form_alpha(gains, order, qos, channels.noise_variance);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::qos_infeasible) throw;
        return s;
    }
    if (!check_sic_feasibility(gains, s.alpha, order, channels.noise_variance).feasible) return s;
    s.sum_rate = user_rates(gains, s.alpha, order, channels.noise_variance).sum();
    s.ok = true;
    return s;
}

AoResult infeasible_result(const ChannelMatrix& channels, const Eigen::VectorXd& p, const DecodingOrder& order) {
    AoResult r;
    r.p_star = p;
    r.alpha_star = Eigen::VectorXd::Zero(channels.num_users());
    r.order_star = order;
    r.rates = Eigen::VectorXd::Zero(channels.num_users());
    r.status = AoStatus::qos_infeasible;
    return r;
}

AoResult run_single(const ChannelMatrix& channels, const QosParams& qos, const RadiationBudget& budget,
                    const AoConfig& config, const Eigen::VectorXd& p0,
                    const std::optional<DecodingOrder>& frozen) {
    Eigen::VectorXd p = p0;
    DecodingOrder order = frozen ? *frozen : order_by_effective_gain(channels, p);
    Shares shares = shares_for(channels, p, order, qos);
    if (!shares.ok) return infeasible_result(channels, p, order);

    AoResult result;
    result.status = AoStatus::max_iters;
    double previous = -std::numeric_limits<double>::infinity();
    for (int outer = 1; outer <= config.max_outer; ++outer) {
        if (outer > 1) {
            shares = shares_for(channels, p, order, qos);
            if (!frozen) {
                const DecodingOrder candidate = order_by_effective_gain(channels, p);
                if (!(candidate == order)) {
                    Shares alt = shares_for(channels, p, candidate, qos);
                    if (alt.ok && (!shares.ok || alt.sum_rate >= shares.sum_rate)) {
                        order = candidate;
                        shares = std::move(alt);
                    }
                }
            }
            // The previous p met every constraint under the current order, so this cannot fail.
            if (!shares.ok) break;
        }

        ScaResult sca;
        try {
            sca = sca_loop(p, shares.alpha, order, channels, qos, budget, config.sca);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::infeasible_start) throw;
            sca.p = p;
            sca.trajectory = {true_objective(p, shares.alpha, order, channels)};
        }
        p = sca.p;
        const double current = sca.trajectory.back();
        result.alpha_star = shares.alpha;
        result.order_star = order;
        result.outer_trajectory.push_back(current);
        result.trace.push_back({outer, order.sequence(), shares.alpha, current, sca.iterations});
        result.outer_iterations = outer;
        if (std::abs(current - previous) < config.eps_outer) {
            result.status = AoStatus::converged;
            break;
        }
        previous = current;
    }

    result.p_star = p;
    result.rates = user_rates(effective_gains(channels, p), result.alpha_star, result.order_star,
                              channels.noise_variance);
    result.sum_rate = result.rates.sum();
    return result;
}

bool better(const AoResult& candidate, const AoResult& incumbent) {
    if (!candidate.feasible()) return false;
    if (!incumbent.feasible()) return true;
    return candidate.sum_rate > incumbent.sum_rate;
}

void check_inputs(const ChannelMatrix& channels, const QosParams& qos, double power_budget) {
    if (channels.num_users() < 1 || channels.num_antennas() < 1) {
        throw Error(ErrorKind::invalid_parameter, "need K >= 1 and N_t >= 1");
    }
    if (qos.size() != channels.num_users()) throw Error(ErrorKind::dimension_mismatch, "QoS length differs from K");
    if (!(power_budget > 0.0)) throw Error(ErrorKind::invalid_parameter, "P_T must be positive");
}

}  // namespace

AoResult ao_optimize(const ChannelMatrix& channels, const QosParams& qos, double power_budget,
                     const AoConfig& config, const AoStart& start) {
    check_inputs(channels, qos, power_budget);
    config.validate();
    const RadiationBudget budget{power_budget, config.budget_reading};
    if (start.p_init) {
        if (start.p_init->size() != channels.num_antennas()) {
            throw Error(ErrorKind::dimension_mismatch, "p_init length differs from N_t");
        }
        return run_single(channels, qos, budget, config, *start.p_init, start.frozen_order);
    }

    AoResult best = run_single(channels, qos, budget, config, budget.equal(channels.num_antennas()),
                               start.frozen_order);
    if (config.multi_start) {
        for (int u = 0; u < channels.num_users(); ++u) {
            const Eigen::VectorXd beam = matched_nonneg_beam(channels.h.row(u), budget);
            AoResult r = run_single(channels, qos, budget, config, beam, start.frozen_order);
            if (better(r, best)) best = std::move(r);
        }
    }
    return best;
}

std::optional<Eigen::VectorXd> feasible_start(const ChannelMatrix& channels, const DecodingOrder& order,
                                              const QosParams& qos, const RadiationBudget& budget,
                                              int samples, std::uint64_t seed) {
    const int n = channels.num_antennas();
    std::optional<Eigen::VectorXd> best;
    double best_rate = -std::numeric_limits<double>::infinity();
    auto consider = [&](const Eigen::VectorXd& p) {
        const Shares s = shares_for(channels, p, order, qos);
        if (s.ok && s.sum_rate > best_rate) {
            best_rate = s.sum_rate;
            best = p;
        }
    };
    consider(budget.equal(n));
    for (int u = 0; u < channels.num_users(); ++u) consider(matched_nonneg_beam(channels.h.row(u), budget));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd p(n);
        for (int i = 0; i < n; ++i) p(i) = std::abs(normal(rng));
        const double used = budget.usage(p);
        if (!(used > 0.0)) continue;
        p *= budget.reading == BudgetReading::squared_amplitudes ? std::sqrt(budget.total / used)
                                                                 : budget.total / used;
        consider(p);
    }
    return best;
}

AoResult ao_exhaustive_sic(const ChannelMatrix& channels, const QosParams& qos, double power_budget,
                           const AoConfig& config) {
    check_inputs(channels, qos, power_budget);
    const int k = channels.num_users();
    if (k > 6) throw Error(ErrorKind::too_many_users, "exhaustive SIC search supports K <= 6");
    const RadiationBudget budget{power_budget, config.budget_reading};

    AoConfig dynamic_config = config;
    dynamic_config.sic_mode = SicMode::dynamic;
    const AoResult dynamic = ao_optimize(channels, qos, power_budget, dynamic_config);
    if (k == 1) return dynamic;

    AoResult best;
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t index = 0;
    do {
        const DecodingOrder order = DecodingOrder::from_sequence(perm);
        AoStart start;
        start.frozen_order = order;
        if (dynamic.feasible() && order == dynamic.order_star) {
            // Warm start from the dynamic optimum so this family always contains it.
            start.p_init = dynamic.p_star;
        } else {
            start.p_init = feasible_start(channels, order, qos, budget, config.start_search_samples,
                                          0x9e3779b97f4a7c15ULL + index);
        }
        ++index;
        if (!start.p_init) continue;
        AoResult r = ao_optimize(channels, qos, power_budget, dynamic_config, start);
        if (better(r, best)) best = std::move(r);
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (!best.feasible()) return dynamic;
    return best;
}

AoResult ao_solve(const ChannelMatrix& channels, const QosParams& qos, double power_budget,
                  const AoConfig& config) {
    return config.sic_mode == SicMode::exhaustive ? ao_exhaustive_sic(channels, qos, power_budget, config)
                                                  : ao_optimize(channels, qos, power_budget, config);
}

}  // namespace pass_noma
