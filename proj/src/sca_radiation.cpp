#include "pass_noma/sca_radiation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "pass_noma/error.hpp"

namespace pass_noma {

namespace {

constexpr double inv_ln2 = 1.0 / std::numbers::ln2;
using cd = std::complex<double>;

// Tr(A Q) for Hermitian arguments.
double trace_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& q) {
    return a.cwiseProduct(q.transpose()).sum().real();
}

Eigen::MatrixXcd outer_rank1(const Eigen::VectorXd& p, double scale) {
    return (scale * p * p.transpose()).cast<cd>();
}

Eigen::MatrixXcd gram(const Eigen::RowVectorXcd& h) { return h.adjoint() * h; }

}  // namespace

double RadiationBudget::usage(const Eigen::VectorXd& p) const {
    return reading == BudgetReading::squared_amplitudes ? p.squaredNorm() : p.sum();
}

Eigen::VectorXd RadiationBudget::equal(int num_antennas, const std::vector<bool>& mask) const {
    if (num_antennas < 1) throw Error(ErrorKind::invalid_parameter, "need at least one antenna");
    if (!mask.empty() && static_cast<int>(mask.size()) != num_antennas) {
        throw Error(ErrorKind::dimension_mismatch, "activation mask length differs from N_t");
    }
    int active = 0;
    for (int n = 0; n < num_antennas; ++n) active += mask.empty() || mask[static_cast<std::size_t>(n)];
    if (active == 0) throw Error(ErrorKind::invalid_parameter, "activation mask has no active antenna");
    const double level = reading == BudgetReading::squared_amplitudes ? std::sqrt(total / active) : total / active;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(num_antennas);
    for (int n = 0; n < num_antennas; ++n) {
        if (mask.empty() || mask[static_cast<std::size_t>(n)]) p(n) = level;
    }
    return p;
}

Eigen::VectorXd RadiationBudget::project(Eigen::VectorXd p) const {
    p = p.cwiseMax(0.0);
    const double used = usage(p);
    if (used > total) {
        p *= reading == BudgetReading::squared_amplitudes ? std::sqrt(total / used) : total / used;
    }
    return p;
}

Eigen::VectorXd matched_nonneg_beam(const Eigen::RowVectorXcd& h, const RadiationBudget& budget) {
    const auto n = h.size();
    if (n == 0) throw Error(ErrorKind::invalid_parameter, "empty channel");
    if (h.cwiseAbs().maxCoeff() == 0.0) return budget.equal(static_cast<int>(n));

    if (budget.reading == BudgetReading::sum_of_amplitudes) {
        // |h p|^2 is convex, so its maximum over the simplex sits on a vertex.
        Eigen::Index best = 0;
        h.cwiseAbs().maxCoeff(&best);
        Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
        p(best) = budget.total;
        return p;
    }

    // max_p |h p|^2 = max_theta || [Re(e^{-j theta} h)]_+ ||^2 * P_T. On each arc
    // between sign changes the active set is fixed and the value is a sinusoid in 2 theta.
    const double two_pi = 2.0 * std::numbers::pi;
    auto wrap = [&](double t) {
        t = std::fmod(t, two_pi);
        return t < 0.0 ? t + two_pi : t;
    };
    auto projected = [&](double theta) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = std::max(0.0, (std::polar(1.0, -theta) * h(i)).real());
        return v;
    };

    std::vector<double> breaks;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (h(i) == cd(0.0)) continue;
        const double phi = std::arg(h(i));
        breaks.push_back(wrap(phi + std::numbers::pi / 2.0));
        breaks.push_back(wrap(phi - std::numbers::pi / 2.0));
    }
    std::sort(breaks.begin(), breaks.end());

    double best_theta = breaks.front();
    double best_value = -1.0;
    auto consider = [&](double theta) {
        const double v = projected(theta).squaredNorm();
        if (v > best_value) {
            best_value = v;
            best_theta = theta;
        }
    };
    for (std::size_t b = 0; b < breaks.size(); ++b) {
        const double start = breaks[b];
        const double end = b + 1 < breaks.size() ? breaks[b + 1] : breaks.front() + two_pi;
        consider(start);
        if (end - start <= 0.0) continue;
        const double mid = 0.5 * (start + end);
        cd z = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if ((std::polar(1.0, -mid) * h(i)).real() > 0.0) z += std::norm(h(i)) * std::polar(1.0, -2.0 * std::arg(h(i)));
        }
        if (z == cd(0.0)) continue;
        // Re(e^{2 j theta} z) peaks at theta = -arg(z) / 2 (mod pi).
        for (int m = 0; m < 4; ++m) {
            double theta = -std::arg(z) / 2.0 + m * std::numbers::pi - two_pi;
            if (theta >= start && theta <= end) consider(theta);
            theta += two_pi;
            if (theta >= start && theta <= end) consider(theta);
        }
    }
    Eigen::VectorXd p = projected(best_theta);
    return p * (std::sqrt(budget.total) / p.norm());
}

double quadratic_form(const Eigen::RowVectorXcd& h, const Eigen::MatrixXcd& q) {
    return (h * q * h.adjoint())(0, 0).real();
}

AuxiliaryState build_auxiliary(const Eigen::VectorXd& p, const Eigen::VectorXd& alpha,
                               const DecodingOrder& order, double noise_variance) {
    AuxiliaryState aux;
    aux.tail = tail_sums(alpha, order);
    aux.q.resize(static_cast<std::size_t>(order.size()));
    for (int k = 0; k < order.size(); ++k) {
        aux.q[static_cast<std::size_t>(k)] =
            outer_rank1(p, aux.tail[static_cast<std::size_t>(order.position_of(k))] / noise_variance);
    }
    return aux;
}

double true_objective(const Eigen::VectorXd& p, const Eigen::VectorXd& alpha, const DecodingOrder& order,
                      const ChannelMatrix& channels) {
    return user_rates(effective_gains(channels, p), alpha, order, channels.noise_variance).sum();
}

double rewrite_term(int position, const Eigen::MatrixXcd& q, const ChannelMatrix& channels,
                    const DecodingOrder& order) {
    const double own = std::log2(1.0 + quadratic_form(channels.h.row(order.user_at(position)), q));
    if (position == 0) return own;
    return own - std::log2(1.0 + quadratic_form(channels.h.row(order.user_at(position - 1)), q));
}

double rewrite_objective(const AuxiliaryState& aux, const ChannelMatrix& channels, const DecodingOrder& order) {
    double total = 0.0;
    for (int i = 0; i < order.size(); ++i) {
        total += rewrite_term(i, aux.q[static_cast<std::size_t>(order.user_at(i))], channels, order);
    }
    return total;
}

double sic_function(int k, int j, const Eigen::MatrixXcd& q_k, const Eigen::MatrixXcd& q_next,
                    const ChannelMatrix& channels) {
    const auto hj = channels.h.row(j);
    const auto hk = channels.h.row(k);
    return std::log2((quadratic_form(hj, q_k) + 1.0) / (quadratic_form(hj, q_next) + 1.0)) -
           std::log2((quadratic_form(hk, q_k) + 1.0) / (quadratic_form(hk, q_next) + 1.0));
}

namespace {

SurrogateState::PairCoefficients make_pair(const SurrogateState& s, int k, int j) {
    const int pk = s.order.position_of(k);
    const auto& q_k = s.q_t[static_cast<std::size_t>(pk)];
    const auto& q_next = s.q_t[static_cast<std::size_t>(pk) + 1];
    const Eigen::RowVectorXcd hj = s.h.row(j);
    const Eigen::RowVectorXcd hk = s.h.row(k);
    const double xj = quadratic_form(hj, q_next);
    const double xk = quadratic_form(hk, q_k);
    SurrogateState::PairCoefficients c;
    c.stream = k;
    c.decoder = j;
    c.e = gram(hj) * (inv_ln2 / (1.0 + xj));
    c.f = gram(hk) * (inv_ln2 / (1.0 + xk));
    // Expansion of the two subtracted logs: log2(1 + h_j Q_{k+1}^0 h_j^H) + log2(1 + h_k Q_k^0 h_k^H).
    c.d = std::log2(1.0 + xj) + std::log2(1.0 + xk) - trace_product(c.e, q_next) - trace_product(c.f, q_k);
    return c;
}

}  // namespace

const SurrogateState::PairCoefficients& SurrogateState::pair(int k, int j) const {
    for (const auto& c : pairs) {
        if (c.stream == k && c.decoder == j) return c;
    }
    throw Error(ErrorKind::invalid_pair, "no SIC pair (" + std::to_string(k) + ", " + std::to_string(j) + ")");
}

SurrogateState build_surrogate(const Eigen::VectorXd& p_t, const Eigen::VectorXd& alpha,
                               const DecodingOrder& order, const ChannelMatrix& channels) {
    const int k = order.size();
    if (channels.num_users() != k || alpha.size() != k) {
        throw Error(ErrorKind::dimension_mismatch, "channels, shares and order disagree on K");
    }
    if (channels.num_antennas() != p_t.size()) {
        throw Error(ErrorKind::dimension_mismatch, "radiation vector length differs from N_t");
    }
    SurrogateState s;
    s.p_t = p_t;
    s.alpha = alpha;
    s.order = order;
    s.h = channels.h;
    s.noise_variance = channels.noise_variance;
    s.tail = tail_sums(alpha, order);
    s.q_t.reserve(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) {
        s.q_t.push_back(outer_rank1(p_t, s.tail[static_cast<std::size_t>(i)] / s.noise_variance));
    }
    s.a.resize(static_cast<std::size_t>(k));
    s.b.assign(static_cast<std::size_t>(k), 0.0);
    for (int i = 1; i < k; ++i) {
        const Eigen::RowVectorXcd prev = s.h.row(order.user_at(i - 1));
        const auto& q0 = s.q_t[static_cast<std::size_t>(i)];
        const double x0 = quadratic_form(prev, q0);
        s.a[static_cast<std::size_t>(i)] = gram(prev) * (inv_ln2 / (1.0 + x0));
        s.b[static_cast<std::size_t>(i)] = std::log2(1.0 + x0) - trace_product(s.a[static_cast<std::size_t>(i)], q0);
    }
    for (int pk = 0; pk < k; ++pk) {
        for (int pj = pk + 1; pj < k; ++pj) {
            s.pairs.push_back(make_pair(s, order.user_at(pk), order.user_at(pj)));
        }
    }
    return s;
}

double surrogate_objective_term(int position, const Eigen::MatrixXcd& q, const SurrogateState& state) {
    const double own = std::log2(1.0 + quadratic_form(state.h.row(state.order.user_at(position)), q));
    if (position == 0) return own;
    const auto i = static_cast<std::size_t>(position);
    return own - trace_product(state.a[i], q) - state.b[i];
}

double surrogate_sic(int k, int j, const Eigen::MatrixXcd& q_k, const Eigen::MatrixXcd& q_next,
                     const SurrogateState& state) {
    const SurrogateState::PairCoefficients c = k == j ? make_pair(state, k, j) : state.pair(k, j);
    return std::log2(quadratic_form(state.h.row(j), q_k) + 1.0) +
           std::log2(quadratic_form(state.h.row(k), q_next) + 1.0) - trace_product(c.e, q_next) -
           trace_product(c.f, q_k) - c.d;
}

AffineForm linearize_rank1(const SurrogateState& state, int user, int position) {
    const Eigen::RowVectorXcd h = state.h.row(user);
    const cd c0 = (h * state.p_t.cast<cd>())(0);
    const double scale = state.tail[static_cast<std::size_t>(position)] / state.noise_variance;
    AffineForm form;
    // 2 Re(conj(c0) h p) - |c0|^2
    form.w = scale * 2.0 * (std::conj(c0) * h).real().transpose();
    form.b = -scale * std::norm(c0);
    return form;
}

InnerProblem build_inner_problem(const SurrogateState& state, const QosParams& qos,
                                 const RadiationBudget& budget, SicConstraintForm sic_form) {
    using namespace convex;
    const int k = state.num_users();
    const int n = state.num_antennas();
    const double noise = state.noise_variance;
    const auto& order = state.order;
    const auto& tail = state.tail;

    // Per user: gradient direction and value of |h p|^2 at p_t, and the Gram matrix Re(h^H h).
    std::vector<Eigen::VectorXd> w(static_cast<std::size_t>(k));
    std::vector<double> g0(static_cast<std::size_t>(k));
    std::vector<Eigen::MatrixXd> m(static_cast<std::size_t>(k));
    for (int u = 0; u < k; ++u) {
        const Eigen::RowVectorXcd h = state.h.row(u);
        const cd c0 = (h * state.p_t.cast<cd>())(0);
        w[static_cast<std::size_t>(u)] = 2.0 * (std::conj(c0) * h).real().transpose();
        g0[static_cast<std::size_t>(u)] = std::norm(c0);
        m[static_cast<std::size_t>(u)] = gram(h).real();
    }
    // log2(1 + s l_u(p)) with l_u the rank-one linearisation of |h_u p|^2.
    auto log_linearised = [&](int u, double s) {
        return Log2AffineTerm{1.0, s * w[static_cast<std::size_t>(u)], 1.0 - s * g0[static_cast<std::size_t>(u)]};
    };
    // First-order upper expansion of log2(1 + s |h_u p|^2), negated.
    auto neg_log_upper = [&](int u, double s) {
        const double x0 = s * g0[static_cast<std::size_t>(u)];
        const double coef = s * inv_ln2 / (1.0 + x0);
        return NegQuadraticTerm{coef * m[static_cast<std::size_t>(u)], {}, coef * g0[static_cast<std::size_t>(u)] - std::log2(1.0 + x0)};
    };

    InnerProblem problem;
    for (int i = 0; i < k; ++i) {
        const double s = tail[static_cast<std::size_t>(i)] / noise;
        if (s <= 0.0) continue;
        problem.objective.add(log_linearised(order.user_at(i), s));
        if (i > 0) problem.objective.add(neg_log_upper(order.user_at(i - 1), s));
    }

    // Minimum rates: (S_i - a S_{i+1}) l_u / noise >= a - 1, scaled by 1 / (a - 1).
    for (int i = 0; i < k; ++i) {
        const int u = order.user_at(i);
        const double a = qos.a(u);
        if (a - 1.0 <= 1e-15) continue;
        const double lead = tail[static_cast<std::size_t>(i)] - a * tail[static_cast<std::size_t>(i) + 1];
        const double c = lead / (noise * (a - 1.0));
        problem.constraints.emplace_back(std::vector<Term>{AffineTerm{c * w[static_cast<std::size_t>(u)], -c * g0[static_cast<std::size_t>(u)] - 1.0}});
        problem.labels.push_back("qos user " + std::to_string(u));
    }

    // SIC: user j decodes stream k, for every pair ordered k before j with alpha_k > 0.
    for (int pk = 0; pk < k; ++pk) {
        const double sk = tail[static_cast<std::size_t>(pk)];
        const double sn = tail[static_cast<std::size_t>(pk) + 1];
        if (sk - sn <= 1e-15 * sk) continue;
        const int ku = order.user_at(pk);
        for (int pj = pk + 1; pj < k; ++pj) {
            const int ju = order.user_at(pj);
            ConcaveFunction g;
            if (sic_form == SicConstraintForm::gain_order) {
                // (l_j(p) - |h_k p|^2) / g_j(p_t)
                const double scale = 1.0 / std::max(g0[static_cast<std::size_t>(ju)], 1e-300);
                g.add(AffineTerm{scale * w[static_cast<std::size_t>(ju)], -scale * g0[static_cast<std::size_t>(ju)]});
                g.add(NegQuadraticTerm{scale * m[static_cast<std::size_t>(ku)], {}, 0.0});
                problem.constraints.push_back(std::move(g));
                problem.labels.push_back("sic " + std::to_string(ku) + "->" + std::to_string(ju));
                continue;
            }
            g.add(log_linearised(ju, sk / noise));
            g.add(neg_log_upper(ku, sk / noise));
            if (sn > 0.0) {
                g.add(log_linearised(ku, sn / noise));
                g.add(neg_log_upper(ju, sn / noise));
            }
            problem.constraints.push_back(std::move(g));
            problem.labels.push_back("sic " + std::to_string(ku) + "->" + std::to_string(ju));
        }
    }

    if (budget.reading == BudgetReading::squared_amplitudes) {
        problem.constraints.emplace_back(std::vector<Term>{NegQuadraticTerm{Eigen::MatrixXd::Identity(n, n) / budget.total, {}, 1.0}});
    } else {
        problem.constraints.emplace_back(std::vector<Term>{AffineTerm{Eigen::VectorXd::Constant(n, -1.0 / budget.total), 1.0}});
    }
    problem.labels.push_back("budget");

    const double unit = budget.reading == BudgetReading::squared_amplitudes ? std::sqrt(budget.total) : budget.total;
    for (int i = 0; i < n; ++i) {
        problem.constraints.emplace_back(std::vector<Term>{AffineTerm{Eigen::VectorXd::Unit(n, i) / unit, 0.0}});
        problem.labels.push_back("p" + std::to_string(i) + " >= 0");
    }
    return problem;
}

InnerResult solve_inner(const SurrogateState& state, const QosParams& qos, const RadiationBudget& budget,
                        const ScaConfig& config) {
    const InnerProblem problem = build_inner_problem(state, qos, budget, config.sic_form);
    InnerResult out;
    out.solver = convex::maximize(problem.objective, problem.constraints, state.p_t, config.barrier);
    out.p = budget.project(out.solver.x);
    out.surrogate_value = problem.objective.value(out.p);
    return out;
}

namespace {

struct Feasibility {
    double qos_margin = 0.0;
    double sic_margin = 0.0;
};

Feasibility feasibility(const Eigen::VectorXd& p, const Eigen::VectorXd& alpha, const DecodingOrder& order,
                        const ChannelMatrix& channels, const QosParams& qos) {
    const Eigen::VectorXd gains = effective_gains(channels, p);
    const Eigen::VectorXd rates = user_rates(gains, alpha, order, channels.noise_variance);
    Feasibility f;
    f.qos_margin = std::numeric_limits<double>::infinity();
    for (int u = 0; u < rates.size(); ++u) {
        f.qos_margin = std::min(f.qos_margin, rates(u) - qos.r_min[static_cast<std::size_t>(u)]);
    }
    f.sic_margin = check_sic_feasibility(gains, alpha, order, channels.noise_variance).min_margin;
    return f;
}

}  // namespace

ScaResult sca_loop(const Eigen::VectorXd& p_init, const Eigen::VectorXd& alpha, const DecodingOrder& order,
                   const ChannelMatrix& channels, const QosParams& qos, const RadiationBudget& budget,
                   const ScaConfig& config) {
    ScaResult result;
    result.p = p_init;
    double objective = true_objective(p_init, alpha, order, channels);
    result.trajectory.push_back(objective);

    for (int it = 1; it <= config.max_iters; ++it) {
        const SurrogateState state = build_surrogate(result.p, alpha, order, channels);
        const InnerResult inner = solve_inner(state, qos, budget, config);
        result.stalled = result.stalled || inner.solver.stalled;

        // Keep the longest step toward the inner solution that preserves true feasibility
        // and does not lose objective.
        const Eigen::VectorXd direction = inner.p - result.p;
        double step = 1.0;
        Eigen::VectorXd accepted = result.p;
        double accepted_objective = objective;
        Feasibility accepted_feas = feasibility(result.p, alpha, order, channels, qos);
        double kept = 0.0;
        for (int b = 0; b <= config.max_backtracks; ++b, step *= 0.5) {
            const Eigen::VectorXd candidate = budget.project(result.p + step * direction);
            const double value = true_objective(candidate, alpha, order, channels);
            const Feasibility f = feasibility(candidate, alpha, order, channels, qos);
            if (value >= objective - 1e-10 && f.qos_margin >= -config.qos_tolerance &&
                f.sic_margin >= -config.sic_tolerance) {
                accepted = candidate;
                accepted_objective = value;
                accepted_feas = f;
                kept = step;
                break;
            }
        }

        const double improvement = accepted_objective - objective;
        result.p = accepted;
        objective = accepted_objective;
        result.trajectory.push_back(objective);
        result.trace.push_back({it, objective, kept, accepted_feas.qos_margin, accepted_feas.sic_margin,
                                inner.solver.newton_steps});
        result.iterations = it;
        if (improvement < config.eps) {
            result.converged = true;
            break;
        }
    }
    return result;
}

}  // namespace pass_noma
