#include "pass_noma/barrier_solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pass_noma/error.hpp"

namespace pass_noma::convex {

namespace {

constexpr double inv_ln2 = 1.0 / std::numbers::ln2;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct TermValue {
    const Eigen::VectorXd& x;

    double operator()(const AffineTerm& t) const { return t.w.dot(x) + t.b; }

    double operator()(const Log2AffineTerm& t) const {
        const double arg = t.w.dot(x) + t.b;
        if (!(arg > 0.0)) return nan;
        return t.weight * std::log2(arg);
    }

    double operator()(const NegQuadraticTerm& t) const {
        double v = t.c - x.dot(t.m * x);
        if (t.q.size() != 0) v += t.q.dot(x);
        return v;
    }
};

struct TermDerivatives {
    const Eigen::VectorXd& x;
    Eigen::VectorXd& grad;
    Eigen::MatrixXd& hess;
    double scale;

    void operator()(const AffineTerm& t) const { grad += t.w; }

    void operator()(const Log2AffineTerm& t) const {
        const double arg = t.w.dot(x) + t.b;
        const double g = t.weight * inv_ln2 / arg;
        grad += g * t.w;
        if (scale != 0.0) hess.noalias() -= (scale * g / arg) * t.w * t.w.transpose();
    }

    void operator()(const NegQuadraticTerm& t) const {
        grad.noalias() -= 2.0 * (t.m * x);
        if (t.q.size() != 0) grad += t.q;
        if (scale != 0.0) hess.noalias() -= (2.0 * scale) * t.m;
    }
};

}  // namespace

double ConcaveFunction::value(const Eigen::VectorXd& x) const {
    double v = constant_;
    for (const auto& term : terms_) v += std::visit(TermValue{x}, term);
    return v;
}

void ConcaveFunction::derivatives(const Eigen::VectorXd& x, Eigen::VectorXd& grad, Eigen::MatrixXd& hess,
                                  double scale) const {
    grad.setZero(x.size());
    for (const auto& term : terms_) std::visit(TermDerivatives{x, grad, hess, scale}, term);
}

namespace {

class BarrierProblem {
public:
    BarrierProblem(const ConcaveFunction& objective, std::span<const ConcaveFunction> constraints,
                   std::vector<double> offsets)
        : objective_(objective), constraints_(constraints), offsets_(std::move(offsets)) {}

    // -t f0(x) - sum log(f_i(x) + offset_i); +inf outside the strict interior.
    double value(const Eigen::VectorXd& x, double t) const {
        const double f0 = objective_.value(x);
        if (!std::isfinite(f0)) return std::numeric_limits<double>::infinity();
        double v = -t * f0;
        for (std::size_t i = 0; i < constraints_.size(); ++i) {
            const double fi = constraints_[i].value(x) + offsets_[i];
            if (!(fi > 0.0)) return std::numeric_limits<double>::infinity();
            v -= std::log(fi);
        }
        return v;
    }

    void derivatives(const Eigen::VectorXd& x, double t, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
        const auto n = x.size();
        hess.setZero(n, n);
        Eigen::VectorXd g(n);
        // Objective enters with weight -t: hess += -t * Hess(f0).
        objective_.derivatives(x, g, hess, -t);
        grad = -t * g;
        for (std::size_t i = 0; i < constraints_.size(); ++i) {
            const double fi = constraints_[i].value(x) + offsets_[i];
            constraints_[i].derivatives(x, g, hess, -1.0 / fi);
            grad -= g / fi;
            hess.noalias() += (g / fi) * (g / fi).transpose();
        }
    }

private:
    const ConcaveFunction& objective_;
    std::span<const ConcaveFunction> constraints_;
    std::vector<double> offsets_;
};

}  // namespace

BarrierResult maximize(const ConcaveFunction& objective, std::span<const ConcaveFunction> constraints,
                       const Eigen::VectorXd& x0, const BarrierOptions& options) {
    if (!std::isfinite(objective.value(x0))) {
        throw Error(ErrorKind::infeasible_start, "start lies outside the objective domain");
    }
    std::vector<double> offsets(constraints.size(), 0.0);
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const double fi = constraints[i].value(x0);
        if (!std::isfinite(fi) || fi < -options.start_tolerance) {
            throw Error(ErrorKind::infeasible_start,
                        "constraint " + std::to_string(i) + " violated at start (" + std::to_string(fi) + ")");
        }
        offsets[i] = std::max(options.start_slack, 0.5 * options.start_slack - fi);
    }

    const BarrierProblem problem(objective, constraints, std::move(offsets));
    const double m = std::max<double>(1.0, static_cast<double>(constraints.size()));

    BarrierResult result;
    result.x = x0;
    double t = 1.0 / options.initial_mu;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    Eigen::LDLT<Eigen::MatrixXd> ldlt;

    while (true) {
        ++result.rounds;
        double psi = problem.value(result.x, t);
        for (int step = 0; step < options.max_newton_per_round; ++step) {
            problem.derivatives(result.x, t, grad, hess);
            ldlt.compute(hess);
            Eigen::VectorXd dx = ldlt.solve(-grad);
            double slope = grad.dot(dx);
            if (!dx.allFinite() || slope >= 0.0) {
                // Fall back to steepest descent scaled by the Hessian diagonal.
                dx = -grad.cwiseQuotient(hess.diagonal().cwiseMax(1e-300));
                slope = grad.dot(dx);
            }
            result.newton_decrement = std::sqrt(std::max(0.0, -slope));
            // Also centred once the predicted decrease is below the resolution of psi.
            const double resolution = 1e-13 * std::max(1.0, std::abs(psi));
            if (-slope / 2.0 <= options.newton_tolerance || -slope / 2.0 <= resolution) break;

            double s = 1.0;
            double trial = problem.value(result.x + dx, t);
            int halvings = 0;
            while (!(trial <= psi + 0.25 * s * slope) && halvings < 60 && -s * slope > resolution) {
                s *= 0.5;
                ++halvings;
                trial = problem.value(result.x + s * dx, t);
            }
            ++result.newton_steps;
            if (!(trial <= psi + 0.25 * s * slope)) {
                // Running out of resolvable decrease counts as centred.
                if (halvings == 60) result.stalled = true;
                break;
            }
            result.x += s * dx;
            psi = trial;
        }
        result.duality_gap = m / t;
        if (result.duality_gap < options.gap_tolerance || result.stalled) break;
        t /= options.mu_factor;
    }
    result.objective = objective.value(result.x);
    return result;
}

}  // namespace pass_noma::convex
