#pragma once

#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace pass_noma::convex {

// w.x + b
struct AffineTerm {
    Eigen::VectorXd w;
    double b = 0.0;
};

// weight * log2(w.x + b); weight >= 0, domain w.x + b > 0.
struct Log2AffineTerm {
    double weight = 1.0;
    Eigen::VectorXd w;
    double b = 1.0;
};

// c + q.x - x^T M x with M symmetric positive semidefinite. Empty q means zero.
struct NegQuadraticTerm {
    Eigen::MatrixXd m;
    Eigen::VectorXd q;
    double c = 0.0;
};

using Term = std::variant<AffineTerm, Log2AffineTerm, NegQuadraticTerm>;

// Sum of concave terms.
class ConcaveFunction {
public:
    ConcaveFunction() = default;
    explicit ConcaveFunction(std::vector<Term> terms) : terms_(std::move(terms)) {}

    void add(Term term) { terms_.push_back(std::move(term)); }
    void add_constant(double c) { constant_ += c; }
    const std::vector<Term>& terms() const { return terms_; }

    /// NaN outside the domain.
    double value(const Eigen::VectorXd& x) const;
    /// grad <- gradient; hess += scale * Hessian.
    void derivatives(const Eigen::VectorXd& x, Eigen::VectorXd& grad, Eigen::MatrixXd& hess,
                     double scale) const;

private:
    std::vector<Term> terms_;
    double constant_ = 0.0;
};

struct BarrierOptions {
    double initial_mu = 1.0;       // first barrier weight (t = 1 / mu)
    double mu_factor = 0.2;        // geometric decrease per centering round
    double gap_tolerance = 1e-8;   // stop once m / t falls below this
    double newton_tolerance = 1e-10;  // half squared Newton decrement
    int max_newton_per_round = 200;
    // Constraints that are active (or violated by at most start_tolerance) at
    // the start are relaxed so the start has slack start_slack.
    double start_slack = 1e-10;
    double start_tolerance = 1e-7;
};

struct BarrierResult {
    Eigen::VectorXd x;
    double objective = 0.0;
    double duality_gap = 0.0;
    double newton_decrement = 0.0;
    int newton_steps = 0;
    int rounds = 0;
    bool stalled = false;
};

/// Maximise a concave objective subject to concave constraints f_i(x) >= 0,
/// starting from x0. Throws Error(infeasible_start) if x0 violates a constraint
/// beyond options.start_tolerance or lies outside the objective's domain.
BarrierResult maximize(const ConcaveFunction& objective, std::span<const ConcaveFunction> constraints,
                       const Eigen::VectorXd& x0, const BarrierOptions& options = {});

}  // namespace pass_noma::convex
