#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pass_noma/noma_core.hpp"
#include "pass_noma/oracle.hpp"

using namespace pass_noma;

TEST_CASE("alpha grid") {
    SUBCASE("one user takes everything") {
        const auto r = oracle::grid_alpha(Eigen::VectorXd::Constant(1, 1e-11), QosParams::uniform(1, 0.5), 1e-12, 1e-2);
        REQUIRE(r.feasible);
        CHECK(r.alpha(0) == doctest::Approx(1.0));
    }
    SUBCASE("agrees with the closed form") {
        const Eigen::Vector2d gains(2e-12, 9e-12);
        const auto qos = QosParams::uniform(2, 0.5);
        const auto r = oracle::grid_alpha(gains, qos, 1e-12, 1e-3);
        const auto order = order_by_gains(gains);
        const auto alpha = closed_form_alpha(gains, order, qos, 1e-12);
        const double closed = user_rates(gains, alpha, order, 1e-12).sum();
        REQUIRE(r.feasible);
        CHECK(closed >= r.sum_rate - 1e-12);
        CHECK(closed - r.sum_rate <= 2e-3 * 9.0);
    }
    SUBCASE("unreachable demand") {
        const auto r = oracle::grid_alpha(Eigen::Vector2d(1e-12, 2e-12), QosParams::uniform(2, 3.0), 1e-12, 1e-2);
        CHECK_FALSE(r.feasible);
    }
}

TEST_CASE("random radiation search") {
    const auto ch = test::drop(2, 3, 5);
    const auto qos = QosParams::uniform(2, 0.5);
    const auto one = oracle::random_p(ch, qos, 1.0, 1, 9);
    CHECK(one.feasible_samples <= 1);
    if (one.feasible) {
        const auto gains = effective_gains(ch, one.p);
        const auto order = order_by_gains(gains);
        CHECK(one.sum_rate == doctest::Approx(user_rates(gains, closed_form_alpha(gains, order, qos, 1e-12), order, 1e-12).sum()));
    }
    double previous = -1.0;
    for (long long samples : {10LL, 100LL, 1000LL, 10000LL}) {
        const auto r = oracle::random_p(ch, qos, 1.0, samples, 9);
        if (r.feasible) {
            CHECK(r.sum_rate >= previous);
            previous = r.sum_rate;
            CHECK(r.p.minCoeff() >= 0.0);
            CHECK(r.p.squaredNorm() <= 1.0 + 1e-12);
        }
    }
    const auto a = oracle::random_p(ch, qos, 1.0, 5000, 3);
    const auto b = oracle::random_p(ch, qos, 1.0, 5000, 3);
    CHECK(a.sum_rate == b.sum_rate);
    CHECK(a.p == b.p);
}

TEST_CASE("reference rates match the optimised path") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        Eigen::Vector4d gains;
        for (int k = 0; k < 4; ++k) gains(k) = 1e-12 * std::pow(10.0, 3.0 * u(rng));
        Eigen::Vector4d alpha(u(rng), u(rng), u(rng), u(rng));
        alpha /= alpha.sum();
        const auto order = order_by_gains(gains);
        std::vector<int> positions(4);
        for (int k = 0; k < 4; ++k) positions[k] = order.position_of(k);
        const auto a = oracle::reference_rates(gains, alpha, positions, 1e-12);
        const auto b = user_rates(gains, alpha, order, 1e-12);
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
    }
}
