#pragma once

#include <vector>

namespace pass_noma {

// Coupling coefficients delta_m = sin(kappa_m L_m), one per PA, each in [0, 1].
struct CouplingVector {
    std::vector<double> delta;
};

// Fraction of the guided power radiated by each PA.
struct PowerFractions {
    std::vector<double> beta;
};

// Evanescent coupling model: kappa(S) = omega0 * exp(-sqrt(gamma0^2 - (2 pi n_clad / lambda)^2) S).
struct CouplingPhysicsParams {
    double omega0 = 1000.0;       // 1/m
    double gamma0 = 1500.0;       // 1/m
    double n_clad = 1.0;
    double coupling_length = 0.01;  // m
    double wavelength = 299792458.0 / 28e9;

    double decay_rate() const;  // throws when the exponent is not real
};

/// beta_m = delta_m^2 prod_{i<m} (1 - delta_i^2)
PowerFractions couplings_to_fractions(const CouplingVector& delta);

/// Power left in the guide after the last PA: prod_m (1 - delta_m^2).
double residual_power(const CouplingVector& delta);

/// Inverse recursion delta_m = sqrt(beta_m / prod_{i<m}(1 - delta_i^2)).
CouplingVector fractions_to_couplings(const PowerFractions& beta);

/// Couplings that make every PA radiate p_eq of the fed power.
CouplingVector epr_couplings(int num_antennas, double p_eq);

/// PA-to-guide spacing that realises coupling delta_m on the branch kappa L <= pi / 2.
double coupling_to_spacing(double delta_m, const CouplingPhysicsParams& params);

/// Forward model: spacing -> coupling coefficient.
double spacing_to_coupling(double spacing, const CouplingPhysicsParams& params);

}  // namespace pass_noma
