#include <doctest.h>

#include <cmath>
#include <random>

#include "pass_noma/error.hpp"
#include "pass_noma/power_model.hpp"

using namespace pass_noma;

TEST_CASE("couplings to fractions") {
    auto b = couplings_to_fractions({{1.0, 0.3}});
    CHECK(b.beta[0] == 1.0);
    CHECK(b.beta[1] == 0.0);

    b = couplings_to_fractions({{std::sqrt(0.5), 1.0}});
    CHECK(b.beta[0] == doctest::Approx(0.5));
    CHECK(b.beta[1] == doctest::Approx(0.5));

    // Residual tracking: the guide loses delta^2 of what is left at every PA.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        CouplingVector d;
        for (int i = 0; i < 9; ++i) d.delta.push_back(u(rng));
        const auto f = couplings_to_fractions(d);
        double guided = 1.0;
        for (int i = 0; i < 9; ++i) {
            const double out = guided * d.delta[i] * d.delta[i];
            CHECK(std::abs(f.beta[i] - out) <= 1e-12);
            guided -= out;
        }
        CHECK(std::abs(residual_power(d) - guided) <= 1e-12);
    }
}

TEST_CASE("fractions to couplings") {
    auto d = fractions_to_couplings({{0.25, 0.25, 0.25, 0.25}});
    CHECK(d.delta[0] == doctest::Approx(0.5));
    CHECK(d.delta[1] == doctest::Approx(0.57735).epsilon(1e-5));
    CHECK(d.delta[2] == doctest::Approx(0.70711).epsilon(1e-5));
    CHECK(d.delta[3] == doctest::Approx(1.0));

    d = fractions_to_couplings({{1.0, 0.0}});
    CHECK(d.delta[0] == 1.0);
    CHECK(d.delta[1] == 0.0);

    CHECK_THROWS_AS(fractions_to_couplings({{0.7, 0.4}}), Error);
    CHECK_THROWS_AS(fractions_to_couplings({{1.0, 0.1}}), Error);
}

TEST_CASE("equal power radiation couplings") {
    auto d = epr_couplings(2, 0.5);
    CHECK(d.delta[0] == doctest::Approx(0.70711).epsilon(1e-5));
    CHECK(d.delta[1] == doctest::Approx(1.0));

    const auto f = couplings_to_fractions(epr_couplings(4, 0.25));
    for (double b : f.beta) CHECK(std::abs(b - 0.25) <= 1e-12);

    CHECK_THROWS_AS(epr_couplings(3, 0.5), Error);

    const auto inc = epr_couplings(6, 0.1);
    for (std::size_t m = 1; m < inc.delta.size(); ++m) CHECK(inc.delta[m] > inc.delta[m - 1]);
}

TEST_CASE("coupling and spacing") {
    const CouplingPhysicsParams params;
    // Full transfer happens where kappa L = pi / 2, which lies at a positive spacing for these parameters.
    const double full = coupling_to_spacing(1.0, params);
    CHECK(full > 0.0);
    CHECK(spacing_to_coupling(full, params) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(coupling_to_spacing(0.0, params), Error);
    CHECK_THROWS_AS(coupling_to_spacing(1.5, params), Error);

    double last = 0.0;
    for (double d = 1.0; d > 1e-9; d *= 0.3) {
        const double s = coupling_to_spacing(d, params);
        CHECK(s >= last);
        last = s;
        CHECK(std::abs(spacing_to_coupling(s, params) - d) <= 1e-10 * d);
    }
    CHECK(coupling_to_spacing(1e-300, params) > coupling_to_spacing(1e-9, params));

    CouplingPhysicsParams weak = params;
    weak.omega0 = 10.0;  // kappa L never reaches asin(0.5)
    CHECK_THROWS_AS(coupling_to_spacing(0.5, weak), Error);
}
