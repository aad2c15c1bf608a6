#include "pass_noma/power_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pass_noma/error.hpp"

namespace pass_noma {

namespace {

constexpr double remaining_floor = 1e-15;
constexpr double sum_tolerance = 1e-12;

}  // namespace

double CouplingPhysicsParams::decay_rate() const {
    if (!(omega0 > 0.0 && gamma0 > 0.0 && n_clad > 0.0 && coupling_length > 0.0 && wavelength > 0.0)) {
        throw Error(ErrorKind::invalid_parameter, "coupling constants must be positive");
    }
    const double k_clad = 2.0 * std::numbers::pi * n_clad / wavelength;
    const double radicand = gamma0 * gamma0 - k_clad * k_clad;
    if (radicand <= 0.0) {
        throw Error(ErrorKind::invalid_parameter,
                    "gamma0 must exceed 2 pi n_clad / lambda for an evanescent coupling");
    }
    return std::sqrt(radicand);
}

PowerFractions couplings_to_fractions(const CouplingVector& delta) {
    PowerFractions out;
    out.beta.reserve(delta.delta.size());
    double remaining = 1.0;
    for (double d : delta.delta) {
        if (!(d >= 0.0 && d <= 1.0)) {
            throw Error(ErrorKind::invalid_parameter, "coupling coefficient outside [0, 1]");
        }
        const double d2 = d * d;
        out.beta.push_back(d2 * remaining);
        remaining *= 1.0 - d2;
    }
    return out;
}

double residual_power(const CouplingVector& delta) {
    double remaining = 1.0;
    for (double d : delta.delta) remaining *= 1.0 - d * d;
    return remaining;
}

CouplingVector fractions_to_couplings(const PowerFractions& beta) {
    double total = 0.0;
    for (double b : beta.beta) {
        if (!(b >= 0.0 && b <= 1.0)) {
            throw Error(ErrorKind::infeasible_fractions, "power fraction outside [0, 1]");
        }
        total += b;
    }
    if (total > 1.0 + sum_tolerance) {
        throw Error(ErrorKind::infeasible_fractions, "power fractions sum above one");
    }

    CouplingVector out;
    out.delta.reserve(beta.beta.size());
    double remaining = 1.0;
    for (std::size_t m = 0; m < beta.beta.size(); ++m) {
        const double b = beta.beta[m];
        if (b == 0.0) {
            out.delta.push_back(0.0);
            continue;
        }
        if (remaining < remaining_floor) {
            throw Error(ErrorKind::infeasible_fractions,
                        "no guided power left for PA " + std::to_string(m + 1));
        }
        double ratio = b / remaining;
        if (ratio > 1.0) {
            if (ratio > 1.0 + 1e-9) {
                throw Error(ErrorKind::infeasible_fractions,
                            "PA " + std::to_string(m + 1) + " requests more than the remaining power");
            }
            ratio = 1.0;
        }
        const double d = std::sqrt(ratio);
        out.delta.push_back(d);
        remaining *= 1.0 - ratio;
    }
    return out;
}

CouplingVector epr_couplings(int num_antennas, double p_eq) {
    if (num_antennas < 1) throw Error(ErrorKind::invalid_parameter, "need at least one PA");
    if (!(p_eq > 0.0 && p_eq <= 1.0)) {
        throw Error(ErrorKind::infeasible_fractions, "equal fraction must lie in (0, 1]");
    }
    CouplingVector out;
    out.delta.reserve(static_cast<std::size_t>(num_antennas));
    for (int m = 1; m <= num_antennas; ++m) {
        const double left = 1.0 - (m - 1) * p_eq;
        if (left <= 0.0 || p_eq > left * (1.0 + 1e-12)) {
            throw Error(ErrorKind::infeasible_fractions,
                        "PA " + std::to_string(m) + " cannot radiate the equal share");
        }
        out.delta.push_back(std::sqrt(std::min(1.0, p_eq / left)));
    }
    return out;
}

double coupling_to_spacing(double delta_m, const CouplingPhysicsParams& params) {
    if (!(delta_m > 0.0 && delta_m <= 1.0)) {
        throw Error(ErrorKind::out_of_range, "coupling must lie in (0, 1]");
    }
    const double decay = params.decay_rate();
    const double needed = std::asin(delta_m) / params.coupling_length;
    if (needed > params.omega0 * (1.0 + 1e-12)) {
        throw Error(ErrorKind::out_of_range, "coupling unreachable at non-negative spacing");
    }
    return std::max(0.0, -std::log(needed / params.omega0) / decay);
}

double spacing_to_coupling(double spacing, const CouplingPhysicsParams& params) {
    const double kappa = params.omega0 * std::exp(-params.decay_rate() * spacing);
    return std::sin(kappa * params.coupling_length);
}

}  // namespace pass_noma
