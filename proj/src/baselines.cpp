#include "pass_noma/baselines.hpp"

#include <algorithm>

#include "pass_noma/error.hpp"

namespace pass_noma {

ActivationMask ActivationMask::all(int num_antennas) {
    return ActivationMask{std::vector<bool>(static_cast<std::size_t>(num_antennas), true)};
}

ActivationMask ActivationMask::from_bits(int num_antennas, unsigned long long bits) {
    ActivationMask mask{std::vector<bool>(static_cast<std::size_t>(num_antennas), false)};
    for (int n = 0; n < num_antennas; ++n) mask.active[static_cast<std::size_t>(n)] = (bits >> n) & 1ULL;
    return mask;
}

int ActivationMask::count() const { return static_cast<int>(std::count(active.begin(), active.end(), true)); }

std::string ActivationMask::to_string() const {
    std::string s;
    for (bool a : active) s += a ? '1' : '0';
    return s;
}

EprResult epr_rate(const ChannelMatrix& channels, const ActivationMask& mask, const QosParams& qos,
                   double power_budget, BudgetReading reading) {
    if (mask.size() != channels.num_antennas()) {
        throw Error(ErrorKind::dimension_mismatch, "activation mask length differs from N_t");
    }
    if (mask.count() < 1) throw Error(ErrorKind::invalid_parameter, "activation mask has no active antenna");
    const RadiationBudget budget{power_budget, reading};
    EprResult r;
    r.p = budget.equal(channels.num_antennas(), mask.active);
    const Eigen::VectorXd gains = effective_gains(channels, r.p);
    r.order = order_by_gains(gains);
    try {
        r.alpha = closed_form_alpha(gains, r.order, qos, channels.noise_variance);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::qos_infeasible) throw;
        r.alpha = Eigen::VectorXd::Zero(channels.num_users());
        r.rates = Eigen::VectorXd::Zero(channels.num_users());
        return r;
    }
    r.rates = user_rates(gains, r.alpha, r.order, channels.noise_variance);
    r.sum_rate = r.rates.sum();
    r.feasible = true;
    return r;
}

std::string to_string(ActivationStrategy strategy) {
    return strategy == ActivationStrategy::exhaustive ? "exhaustive" : "greedy";
}

ActivationStrategy parse_activation_strategy(const std::string& text) {
    if (text == "exhaustive") return ActivationStrategy::exhaustive;
    if (text == "greedy") return ActivationStrategy::greedy;
    throw Error(ErrorKind::invalid_parameter, "unknown activation strategy '" + text + "'");
}

namespace {

bool improves(const EprResult& candidate, const EprResult& incumbent) {
    if (!candidate.feasible) return false;
    return !incumbent.feasible || candidate.sum_rate > incumbent.sum_rate;
}

}  // namespace

ActivationResult best_activation(const ChannelMatrix& channels, const QosParams& qos, double power_budget,
                                 ActivationStrategy strategy, BudgetReading reading) {
    const int n = channels.num_antennas();
    ActivationResult best;
    if (strategy == ActivationStrategy::exhaustive) {
        if (n > 16) throw Error(ErrorKind::too_many_antennas, "exhaustive activation supports N_t <= 16");
        best.mask = ActivationMask::all(n);
        best.epr = epr_rate(channels, best.mask, qos, power_budget, reading);
        best.evaluated = 1;
        const unsigned long long full = (1ULL << n) - 1;
        for (unsigned long long bits = 1; bits < full; ++bits) {
            ActivationMask mask = ActivationMask::from_bits(n, bits);
            EprResult r = epr_rate(channels, mask, qos, power_budget, reading);
            ++best.evaluated;
            if (improves(r, best.epr)) {
                best.mask = std::move(mask);
                best.epr = std::move(r);
            }
        }
        return best;
    }

    best.mask = ActivationMask::all(n);
    best.epr = epr_rate(channels, best.mask, qos, power_budget, reading);
    best.evaluated = 1;
    while (true) {
        ActivationMask step_mask;
        EprResult step = best.epr;
        bool found = false;
        for (int i = 0; i < n; ++i) {
            ActivationMask mask = best.mask;
            mask.active[static_cast<std::size_t>(i)] = !mask.active[static_cast<std::size_t>(i)];
            if (mask.count() == 0) continue;
            EprResult r = epr_rate(channels, mask, qos, power_budget, reading);
            ++best.evaluated;
            if (improves(r, step)) {
                step_mask = std::move(mask);
                step = std::move(r);
                found = true;
            }
        }
        if (!found) break;
        best.mask = std::move(step_mask);
        best.epr = std::move(step);
    }
    return best;
}

}  // namespace pass_noma
