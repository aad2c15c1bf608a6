#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "pass_noma/geometry_channel.hpp"

namespace test {

inline pass_noma::SystemLayout layout_with(int num_antennas) {
    pass_noma::LayoutParams p;
    p.num_antennas = num_antennas;
    return pass_noma::SystemLayout::make(p);
}

/// Channels of K users dropped with `seed` on the default layout.
inline pass_noma::ChannelMatrix drop(int num_users, int num_antennas, std::uint64_t seed) {
    const auto layout = layout_with(num_antennas);
    return pass_noma::build_channels(pass_noma::sample_users(num_users, 10.0, 6.0, seed), layout, 1e-12);
}

inline Eigen::RowVectorXcd random_row(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::RowVectorXcd h(n);
    for (int i = 0; i < n; ++i) h(i) = {g(rng), g(rng)};
    return h;
}

inline Eigen::VectorXd random_nonneg(int n, std::mt19937_64& rng, double norm = 1.0) {
    std::normal_distribution<double> g;
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p(i) = std::abs(g(rng));
    return p * (norm / p.norm());
}

}  // namespace test
