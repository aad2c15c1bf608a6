#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "pass_noma/error.hpp"
#include "pass_noma/geometry_channel.hpp"

using namespace pass_noma;

TEST_CASE("antennas sit on a centred uniform grid") {
    auto one = place_antennas(10.0, 3.0, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].x == doctest::Approx(5.0));
    CHECK(one[0].y == 0.0);
    CHECK(one[0].z == 3.0);

    auto two = place_antennas(10.0, 3.0, 2);
    CHECK(two[0].x == doctest::Approx(2.5));
    CHECK(two[1].x == doctest::Approx(7.5));

    auto twenty = place_antennas(10.0, 3.0, 20);
    CHECK(twenty[0].x == doctest::Approx(0.25));
    for (std::size_t n = 1; n < twenty.size(); ++n) CHECK(twenty[n].x - twenty[n - 1].x == doctest::Approx(0.5));

    CHECK_THROWS_AS(place_antennas(10.0, 3.0, 0), Error);
    CHECK_THROWS_AS(place_antennas(0.0, 3.0, 4), Error);
}

TEST_CASE("layout derives wavelengths and the feed position") {
    const auto layout = test::layout_with(8);
    CHECK(layout.wavelength == doctest::Approx(speed_of_light / 28e9));
    CHECK(layout.guided_wavelength == layout.wavelength / 1.4);
    CHECK(layout.bs.x == 5.0);
    CHECK(layout.bs.y == 0.0);
    CHECK(layout.bs.z == 3.0);
    CHECK(layout.num_antennas() == 8);
}

TEST_CASE("user sampling is seeded, uniform and planar") {
    auto a = sample_users(3, 10.0, 6.0, 42);
    auto b = sample_users(3, 10.0, 6.0, 42);
    for (int k = 0; k < 3; ++k) {
        CHECK(a[k].x == b[k].x);
        CHECK(a[k].y == b[k].y);
        CHECK(a[k].z == 0.0);
        CHECK(a[k].x >= 0.0);
        CHECK(a[k].x <= 10.0);
        CHECK(a[k].y >= 0.0);
        CHECK(a[k].y <= 6.0);
    }
    auto many = sample_users(100000, 10.0, 6.0, 7);
    double mean = 0.0;
    for (const auto& u : many) mean += u.x;
    mean /= static_cast<double>(many.size());
    CHECK(std::abs(mean - 5.0) < 0.05);
    CHECK_THROWS_AS(sample_users(0, 10.0, 6.0, 1), Error);
}

TEST_CASE("waveguide link") {
    const Position3D feed{5.0, 0.0, 3.0};
    const auto at = [&](double x) { return Position3D{x, 0.0, 3.0}; };
    const double lg = speed_of_light / 28e9 / 1.4;

    CHECK(waveguide_channel(feed, at(5.0), 0.08, lg) == std::complex<double>(1.0, 0.0));

    const auto full = waveguide_channel(feed, at(5.0 + lg), 0.0, lg);
    CHECK(std::abs(full) == doctest::Approx(1.0));
    CHECK(std::abs(std::arg(full)) < 1e-9);

    CHECK(std::abs(waveguide_channel(feed, at(10.0), 0.08, lg)) == doctest::Approx(0.9120108394).epsilon(1e-9));

    double last = 1.0;
    for (double d = 0.0; d <= 5.0; d += 0.37) {
        const double m = std::abs(waveguide_channel(feed, at(5.0 + d), 0.08, lg));
        CHECK(m <= last + 1e-15);
        last = m;
    }
}

TEST_CASE("user link follows the spherical-wave model") {
    LayoutParams params;
    params.num_antennas = 4;
    params.kappa_db_per_m = 0.0;
    const auto layout = SystemLayout::make(params);
    const double lambda = layout.wavelength;

    // Directly below PA 0: distance equals the height.
    const Position3D below{layout.pa[0].x, 0.0, 0.0};
    const auto h = user_channel(below, layout);
    const double hp = std::abs(waveguide_channel(layout.bs, layout.pa[0], 0.0, layout.guided_wavelength));
    CHECK(std::abs(h(0)) == doctest::Approx(hp * lambda / (12.0 * std::numbers::pi)).epsilon(1e-12));

    CHECK(lambda / (4.0 * std::numbers::pi) == doctest::Approx(8.52e-4).epsilon(1e-3));

    // Doubling the distance halves the magnitude.
    LayoutParams high = params;
    high.height = 6.0;
    const auto h2 = user_channel(below, SystemLayout::make(high));
    CHECK(std::abs(h2(0)) == doctest::Approx(std::abs(h(0)) / 2.0).epsilon(1e-12));

    // Pure in its inputs.
    const auto again = user_channel(below, layout);
    CHECK((again.array() == h.array()).all());
}

TEST_CASE("degenerate geometry is rejected") {
    LayoutParams params;
    params.num_antennas = 1;
    params.height = 1e-9;
    const auto layout = SystemLayout::make(params);
    CHECK_THROWS_AS(user_channel(Position3D{5.0, 0.0, 0.0}, layout), Error);
}

TEST_CASE("optional free-space phase only rotates entries") {
    LayoutParams params;
    params.num_antennas = 6;
    auto plain = SystemLayout::make(params);
    params.free_space_phase = true;
    auto phased = SystemLayout::make(params);
    const Position3D user{2.0, 3.0, 0.0};
    const auto a = user_channel(user, plain);
    const auto b = user_channel(user, phased);
    for (int n = 0; n < 6; ++n) CHECK(std::abs(b(n)) == doctest::Approx(std::abs(a(n))).epsilon(1e-14));
    CHECK((a - b).norm() > 0.0);
}

TEST_CASE("effective gain") {
    Eigen::RowVectorXcd h(2);
    h << std::complex<double>(1, 0), std::complex<double>(0, 1);
    CHECK(effective_gain(h, Eigen::Vector2d(1, 1)) == doctest::Approx(2.0));
    CHECK(effective_gain(h, Eigen::Vector2d::Zero()) == 0.0);
    CHECK_THROWS_AS(effective_gain(h, Eigen::Vector3d(1, 1, 1)), Error);

    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        const auto row = test::random_row(7, rng);
        const auto p = test::random_nonneg(7, rng);
        std::complex<double> acc = 0.0;
        for (int n = 0; n < 7; ++n) acc += row(n) * p(n);
        const double naive = std::norm(acc);
        CHECK(std::abs(effective_gain(row, p) - naive) <= 1e-12 * naive);
        CHECK(effective_gain(row, 2.5 * p) == doctest::Approx(6.25 * naive).epsilon(1e-12));
    }
}

TEST_CASE("dBm conversion") {
    CHECK(dbm_to_watts(-90.0) == doctest::Approx(1e-12).epsilon(1e-15));
    CHECK(watts_to_dbm(1e-12) == doctest::Approx(-90.0).epsilon(1e-15));
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
}
