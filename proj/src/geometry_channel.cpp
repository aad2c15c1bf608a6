#include "pass_noma/geometry_channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "pass_noma/error.hpp"

namespace pass_noma {

namespace {

constexpr double min_link_distance = 1e-6;

void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) throw Error(kind, msg);
}

}  // namespace

double distance(const Position3D& a, const Position3D& b) {
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

SystemLayout SystemLayout::make(const LayoutParams& params) {
    require(params.d1 > 0.0 && params.d2 > 0.0, ErrorKind::invalid_parameter,
            "region extents must be positive");
    require(params.height > 0.0, ErrorKind::invalid_parameter, "height must be positive");
    require(params.carrier_frequency > 0.0, ErrorKind::invalid_parameter,
            "carrier frequency must be positive");
    require(params.n_eff > 0.0, ErrorKind::invalid_parameter, "n_eff must be positive");
    require(params.kappa_db_per_m >= 0.0, ErrorKind::invalid_parameter,
            "waveguide attenuation must be non-negative");

    SystemLayout layout;
    layout.d1 = params.d1;
    layout.d2 = params.d2;
    layout.height = params.height;
    layout.carrier_frequency = params.carrier_frequency;
    layout.wavelength = speed_of_light / params.carrier_frequency;
    layout.n_eff = params.n_eff;
    layout.guided_wavelength = layout.wavelength / params.n_eff;
    layout.kappa_db_per_m = params.kappa_db_per_m;
    layout.free_space_phase = params.free_space_phase;
    layout.bs = {params.d1 / 2.0, 0.0, params.height};
    layout.pa = place_antennas(params.d1, params.height, params.num_antennas);
    return layout;
}

std::vector<Position3D> place_antennas(double d1, double height, int num_antennas) {
    require(num_antennas >= 1, ErrorKind::invalid_parameter, "need at least one pinching antenna");
    require(d1 > 0.0, ErrorKind::invalid_parameter, "waveguide length must be positive");
    std::vector<Position3D> out;
    out.reserve(static_cast<std::size_t>(num_antennas));
    const double spacing = d1 / num_antennas;
    for (int n = 0; n < num_antennas; ++n) {
        out.push_back({(n + 0.5) * spacing, 0.0, height});
    }
    return out;
}

std::vector<Position3D> sample_users(int num_users, double d1, double d2, std::uint64_t seed) {
    require(num_users >= 1, ErrorKind::invalid_parameter, "need at least one user");
    require(d1 > 0.0 && d2 > 0.0, ErrorKind::invalid_parameter, "region extents must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, d1);
    std::uniform_real_distribution<double> uy(0.0, d2);
    std::vector<Position3D> out;
    out.reserve(static_cast<std::size_t>(num_users));
    for (int k = 0; k < num_users; ++k) {
        const double x = ux(rng);
        const double y = uy(rng);
        out.push_back({x, y, 0.0});
    }
    return out;
}

std::complex<double> waveguide_channel(const Position3D& bs, const Position3D& pa,
                                       double kappa_db_per_m, double guided_wavelength) {
    const double d = std::abs(bs.x - pa.x);
    const double magnitude = std::pow(10.0, -kappa_db_per_m * d / 10.0);
    return std::polar(magnitude, -2.0 * std::numbers::pi * d / guided_wavelength);
}

Eigen::RowVectorXcd user_channel(const Position3D& user, const SystemLayout& layout) {
    const int n_t = layout.num_antennas();
    Eigen::RowVectorXcd row(n_t);
    for (int n = 0; n < n_t; ++n) {
        const auto& pa = layout.pa[static_cast<std::size_t>(n)];
        const double r = distance(user, pa);
        if (r < min_link_distance) {
            throw Error(ErrorKind::degenerate_geometry,
                        "user coincides with pinching antenna " + std::to_string(n));
        }
        std::complex<double> entry =
            waveguide_channel(layout.bs, pa, layout.kappa_db_per_m, layout.guided_wavelength) *
            (layout.wavelength / (4.0 * std::numbers::pi * r));
        if (layout.free_space_phase) {
            entry *= std::polar(1.0, -2.0 * std::numbers::pi * r / layout.wavelength);
        }
        row(n) = entry;
    }
    return row;
}

ChannelMatrix build_channels(const std::vector<Position3D>& users, const SystemLayout& layout,
                             double noise_variance) {
    require(noise_variance > 0.0, ErrorKind::invalid_parameter, "noise variance must be positive");
    ChannelMatrix out;
    out.noise_variance = noise_variance;
    out.h.resize(static_cast<Eigen::Index>(users.size()), layout.num_antennas());
    for (std::size_t k = 0; k < users.size(); ++k) {
        out.h.row(static_cast<Eigen::Index>(k)) = user_channel(users[k], layout);
    }
    return out;
}

double effective_gain(const Eigen::RowVectorXcd& h, const Eigen::VectorXd& p) {
    if (h.size() != p.size()) {
        throw Error(ErrorKind::dimension_mismatch, "channel and radiation vector lengths differ");
    }
    return std::norm((h * p.cast<std::complex<double>>())(0));
}

Eigen::VectorXd effective_gains(const ChannelMatrix& channels, const Eigen::VectorXd& p) {
    if (channels.num_antennas() != p.size()) {
        throw Error(ErrorKind::dimension_mismatch, "channel and radiation vector lengths differ");
    }
    const Eigen::VectorXcd c = channels.h * p.cast<std::complex<double>>();
    return c.cwiseAbs2();
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

}  // namespace pass_noma
