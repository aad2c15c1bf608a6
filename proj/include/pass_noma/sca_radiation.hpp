#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pass_noma/barrier_solver.hpp"
#include "pass_noma/geometry_channel.hpp"
#include "pass_noma/noma_core.hpp"

namespace pass_noma {

// How the radiation budget P_T constrains the amplitude vector p.
enum class BudgetReading {
    squared_amplitudes,  // sum p_n^2 <= P_T
    sum_of_amplitudes,   // sum p_n <= P_T
};

struct RadiationBudget {
    double total = 1.0;
    BudgetReading reading = BudgetReading::squared_amplitudes;

    double usage(const Eigen::VectorXd& p) const;
    /// Equal amplitude on the given antennas (all when mask is empty) using the full budget.
    Eigen::VectorXd equal(int num_antennas, const std::vector<bool>& mask = {}) const;
    /// Clamp negatives and scale down into the budget.
    Eigen::VectorXd project(Eigen::VectorXd p) const;
};

/// Non-negative p within the budget maximising |h p|^2 (single-user beam).
Eigen::VectorXd matched_nonneg_beam(const Eigen::RowVectorXcd& h, const RadiationBudget& budget);

/// Re(h Q h^H)
double quadratic_form(const Eigen::RowVectorXcd& h, const Eigen::MatrixXcd& q);

// Q_k = p p^T S_{pos(k)} / noise for every user, plus the tail sums by position.
struct AuxiliaryState {
    std::vector<double> tail;            // by position, K + 1 entries, tail[K] = 0
    std::vector<Eigen::MatrixXcd> q;     // by user
};

AuxiliaryState build_auxiliary(const Eigen::VectorXd& p, const Eigen::VectorXd& alpha,
                               const DecodingOrder& order, double noise_variance);

/// Sum rate for fixed (alpha, order) evaluated from the per-user rate formula.
double true_objective(const Eigen::VectorXd& p, const Eigen::VectorXd& alpha, const DecodingOrder& order,
                      const ChannelMatrix& channels);

/// F at decoding position i: log2(1 + h_i Q h_i^H) - log2(1 + h_{i-1} Q h_{i-1}^H); no subtraction at i = 0.
double rewrite_term(int position, const Eigen::MatrixXcd& q, const ChannelMatrix& channels,
                    const DecodingOrder& order);

/// Sum of rewrite_term over positions with Q taken from build_auxiliary.
double rewrite_objective(const AuxiliaryState& aux, const ChannelMatrix& channels, const DecodingOrder& order);

/// SIC margin G_{k,j}(Q_k, Q_{k+1}) for users k (stream) and j (decoder).
double sic_function(int k, int j, const Eigen::MatrixXcd& q_k, const Eigen::MatrixXcd& q_next,
                    const ChannelMatrix& channels);

// Affine approximation w.p + b of one quadratic form h Q h^H under the rank-one linearisation.
struct AffineForm {
    Eigen::VectorXd w;
    double b = 0.0;

    double operator()(const Eigen::VectorXd& p) const { return w.dot(p) + b; }
};

// Expansion point of one SCA iteration and the coefficients of the concave minorants.
struct SurrogateState {
    Eigen::VectorXd p_t;
    Eigen::VectorXd alpha;
    DecodingOrder order;
    Eigen::MatrixXcd h;                 // channel rows by user
    double noise_variance = 0.0;
    std::vector<double> tail;           // by position, K + 1
    std::vector<Eigen::MatrixXcd> q_t;  // by position, K + 1 (last is zero)
    std::vector<Eigen::MatrixXcd> a;    // by position; empty at position 0
    std::vector<double> b;              // by position

    struct PairCoefficients {
        int stream = 0;   // user k
        int decoder = 0;  // user j, decoded after k
        Eigen::MatrixXcd e;
        Eigen::MatrixXcd f;
        double d = 0.0;
    };
    std::vector<PairCoefficients> pairs;

    int num_users() const { return static_cast<int>(h.rows()); }
    int num_antennas() const { return static_cast<int>(h.cols()); }
    const PairCoefficients& pair(int k, int j) const;
};

SurrogateState build_surrogate(const Eigen::VectorXd& p_t, const Eigen::VectorXd& alpha,
                               const DecodingOrder& order, const ChannelMatrix& channels);

/// F'_i(Q; Q_i^t): concave lower bound of rewrite_term, tight at Q_i^t. Position 0 returns F_0 itself.
double surrogate_objective_term(int position, const Eigen::MatrixXcd& q, const SurrogateState& state);

/// G'_{k,j}(Q_k, Q_{k+1}): concave lower bound of sic_function, tight at the expansion point.
/// Also accepts k == j, in which case both bounds collapse onto the same user.
double surrogate_sic(int k, int j, const Eigen::MatrixXcd& q_k, const Eigen::MatrixXcd& q_next,
                     const SurrogateState& state);

/// h_user Q_position h_user^H with p p^T replaced by p_t p^T + p p_t^T - p_t p_t^T.
AffineForm linearize_rank1(const SurrogateState& state, int user, int position);

// How the SIC constraints enter the inner program.
enum class SicConstraintForm {
    gain_order,     // g_j(p) >= g_k(p), equivalent to G_{k,j} >= 0 whenever alpha_k > 0
    log_surrogate,  // G'_{k,j} >= 0
};

// Concave program in p solved at each SCA iteration.
struct InnerProblem {
    convex::ConcaveFunction objective;
    std::vector<convex::ConcaveFunction> constraints;
    std::vector<std::string> labels;
};

InnerProblem build_inner_problem(const SurrogateState& state, const QosParams& qos,
                                 const RadiationBudget& budget,
                                 SicConstraintForm sic_form = SicConstraintForm::gain_order);

struct ScaConfig {
    double eps = 1e-6;          // stop when the true objective improves by less (bits/s/Hz)
    int max_iters = 30;
    double qos_tolerance = 1e-9;
    double sic_tolerance = 1e-9;
    int max_backtracks = 30;
    SicConstraintForm sic_form = SicConstraintForm::gain_order;
    convex::BarrierOptions barrier;
};

struct InnerResult {
    Eigen::VectorXd p;
    double surrogate_value = 0.0;
    convex::BarrierResult solver;
};

/// Maximise the concave surrogate around state.p_t.
InnerResult solve_inner(const SurrogateState& state, const QosParams& qos, const RadiationBudget& budget,
                        const ScaConfig& config);

struct ScaTraceRow {
    int iteration = 0;
    double objective = 0.0;
    double step = 0.0;          // fraction of the inner step that was kept
    double qos_margin = 0.0;    // min_k R_k - R_min_k
    double sic_margin = 0.0;    // min pair margin
    int newton_steps = 0;
};

struct ScaResult {
    Eigen::VectorXd p;
    std::vector<double> trajectory;  // true objective, starting with p_init
    std::vector<ScaTraceRow> trace;
    int iterations = 0;
    bool converged = false;
    bool stalled = false;
};

ScaResult sca_loop(const Eigen::VectorXd& p_init, const Eigen::VectorXd& alpha, const DecodingOrder& order,
                   const ChannelMatrix& channels, const QosParams& qos, const RadiationBudget& budget,
                   const ScaConfig& config = {});

}  // namespace pass_noma
