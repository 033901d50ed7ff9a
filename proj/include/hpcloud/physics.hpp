#pragma once

#include <limits>
#include <vector>

#include "hpcloud/grid.hpp"

namespace hpcloud {

namespace constants {
inline constexpr double speed_of_light = 137.035999084;  ///< atomic units
inline constexpr double bohr_in_fm = 5.29177210903e4;
inline constexpr double nuclear_radius_r0_fm = 1.2;
}  // namespace constants

enum class Nucleus { point, extended_uniform };

/// Hydrogen-like ion in atomic units (hbar = m_e = e = 1).
struct PhysicalSystem {
    double Z = 118.0;
    double A = 294.0;                                 ///< atomic weight, sets the nuclear radius
    int kappa = -2;
    double c = constants::speed_of_light;
    double m = 1.0;
    Nucleus nucleus = Nucleus::point;
    double r0_fm = constants::nuclear_radius_r0_fm;   ///< R = r0 A^{1/3}

    void validate() const;

    double alpha() const { return 1.0 / c; }
    double rest_energy() const { return m * c * c; }
    /// Uniform-sphere radius in bohr.
    double nuclear_radius() const;

    /// True when Z^2 alpha^2 < kappa^2.
    bool subcritical() const;
};

/// -Z/x (point) or the uniform-sphere potential matched C^1 at R.
double potential(const PhysicalSystem& sys, double x);
double potential_deriv(const PhysicalSystem& sys, double x);

/// w+-(x) = +-mc^2 + V(x); sign must be +1 or -1.
double w_pm(const PhysicalSystem& sys, double x, int sign);

/// Point-nucleus level for radial quantum number nr >= 1, shifted by -mc^2.
/// Depends on kappa only through kappa^2.
double exact_eigenvalue(const PhysicalSystem& sys, int nr);

/// Coefficients of F'' + g1 F' + g2 F = 0 and G'' + t1 G' + t2 G = 0.
struct SecondOrderCoefficients {
    double gamma1, gamma2, theta1, theta2;
};
SecondOrderCoefficients second_order_coefficients(const PhysicalSystem& sys, double lambda, double x);

enum class Component { large, small };

/// Grid Peclet/Damkohler numbers per interval for the normalized
/// second-order equation of one component (diffusivity 1).
struct ConvectionDiagnostics {
    static constexpr double infinite = std::numeric_limits<double>::infinity();
    std::vector<double> peclet;
    std::vector<double> damkohler;  ///< `infinite` where the convection coefficient vanishes
    std::vector<double> product2PeDa;
};

ConvectionDiagnostics convection_diagnostics(const PhysicalSystem& sys, double lambda, const Grid& grid,
                                             Component which);

}  // namespace hpcloud
