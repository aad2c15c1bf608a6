#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace pass_noma {

inline constexpr double speed_of_light = 299792458.0;

struct Position3D {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

double distance(const Position3D& a, const Position3D& b);

struct LayoutParams {
    double d1 = 10.0;                 // extent along the waveguide (m)
    double d2 = 6.0;                  // transverse extent (m)
    double height = 3.0;              // BS / waveguide height (m)
    int num_antennas = 20;
    double carrier_frequency = 28e9;  // Hz
    double n_eff = 1.4;
    double kappa_db_per_m = 0.08;     // in-guide attenuation
    bool free_space_phase = false;    // multiply user links by exp(-j 2 pi r / lambda)
};

// Geometry and propagation constants of one waveguide deployment.
struct SystemLayout {
    double d1 = 0.0;
    double d2 = 0.0;
    double height = 0.0;
    double carrier_frequency = 0.0;
    double wavelength = 0.0;
    double n_eff = 0.0;
    double guided_wavelength = 0.0;
    double kappa_db_per_m = 0.0;
    bool free_space_phase = false;
    Position3D bs;
    std::vector<Position3D> pa;

    static SystemLayout make(const LayoutParams& params);
    int num_antennas() const { return static_cast<int>(pa.size()); }
};

// Per-user channel rows h_k (K x N_t) plus the receiver noise power.
struct ChannelMatrix {
    Eigen::MatrixXcd h;
    double noise_variance = 0.0;

    int num_users() const { return static_cast<int>(h.rows()); }
    int num_antennas() const { return static_cast<int>(h.cols()); }
};

/// Centered uniform grid x_n = (n - 1/2) d1 / N_t at y = 0, z = height.
std::vector<Position3D> place_antennas(double d1, double height, int num_antennas);

/// K i.i.d. uniform users on [0, d1] x [0, d2] at z = 0. Deterministic in seed.
std::vector<Position3D> sample_users(int num_users, double d1, double d2, std::uint64_t seed);

/// In-guide link from the feed to one PA: 10^(-kappa d / 10) exp(-j 2 pi d / lambda_g).
std::complex<double> waveguide_channel(const Position3D& bs, const Position3D& pa,
                                       double kappa_db_per_m, double guided_wavelength);

/// Row vector of length N_t: h^P_n * lambda / (4 pi |user - pa_n|).
Eigen::RowVectorXcd user_channel(const Position3D& user, const SystemLayout& layout);

ChannelMatrix build_channels(const std::vector<Position3D>& users, const SystemLayout& layout,
                             double noise_variance);

/// |sum_n h[n] p[n]|^2
double effective_gain(const Eigen::RowVectorXcd& h, const Eigen::VectorXd& p);

/// Gains of every user for one radiation vector.
Eigen::VectorXd effective_gains(const ChannelMatrix& channels, const Eigen::VectorXd& p);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

}  // namespace pass_noma
