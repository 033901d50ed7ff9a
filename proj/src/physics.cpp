#include "hpcloud/physics.hpp"

#include <cmath>

#include "hpcloud/errors.hpp"

namespace hpcloud {

void PhysicalSystem::validate() const {
    if (kappa == 0) throw ConfigError("kappa", "must be a nonzero integer");
    if (Z < 0.0) throw ConfigError("Z", "must be non-negative");
    if (!(c > 0.0)) throw ConfigError("c", "must be positive");
    if (!(m > 0.0)) throw ConfigError("m", "must be positive");
    if (nucleus == Nucleus::extended_uniform && !(A > 0.0))
        throw ConfigError("A", "extended nucleus needs a positive atomic weight");
    if (nucleus == Nucleus::extended_uniform && !(r0_fm > 0.0))
        throw ConfigError("r0_fm", "nuclear radius constant must be positive");
}

double PhysicalSystem::nuclear_radius() const { return r0_fm * std::cbrt(A) / constants::bohr_in_fm; }

bool PhysicalSystem::subcritical() const {
    const double za = Z * alpha();
    return za * za < static_cast<double>(kappa) * kappa;
}

double potential(const PhysicalSystem& sys, double x) {
    if (sys.nucleus == Nucleus::extended_uniform) {
        if (x < 0.0) throw DomainError("potential: negative radius");
        const double R = sys.nuclear_radius();
        if (x <= R) return -(sys.Z / (2.0 * R)) * (3.0 - x * x / (R * R));
        return -sys.Z / x;
    }
    if (!(x > 0.0)) throw DomainError("potential: point nucleus is singular at x = 0");
    return -sys.Z / x;
}

double potential_deriv(const PhysicalSystem& sys, double x) {
    if (sys.nucleus == Nucleus::extended_uniform) {
        if (x < 0.0) throw DomainError("potential_deriv: negative radius");
        const double R = sys.nuclear_radius();
        if (x <= R) return sys.Z * x / (R * R * R);
        return sys.Z / (x * x);
    }
    if (!(x > 0.0)) throw DomainError("potential_deriv: point nucleus is singular at x = 0");
    return sys.Z / (x * x);
}

double w_pm(const PhysicalSystem& sys, double x, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("w_pm: sign must be +1 or -1");
    return sign * sys.rest_energy() + potential(sys, x);
}

double exact_eigenvalue(const PhysicalSystem& sys, int nr) {
    if (nr < 1) throw DomainError("exact_eigenvalue: nr must be >= 1");
    const double za2 = sys.Z * sys.Z * sys.alpha() * sys.alpha();
    const double k2 = static_cast<double>(sys.kappa) * sys.kappa;
    if (za2 >= k2) throw SupercriticalError("Z^2 alpha^2 >= kappa^2: no real point-nucleus levels");
    const double denom = (nr - 1) + std::sqrt(k2 - za2);
    const double a = za2 / (denom * denom);
    const double s = std::sqrt(1.0 + a);
    // mc^2 (1/s - 1) without the cancellation
    return -sys.rest_energy() * a / (s * (1.0 + s));
}

SecondOrderCoefficients second_order_coefficients(const PhysicalSystem& sys, double lambda, double x) {
    const double dV = potential_deriv(sys, x);
    const double wm = w_pm(sys, x, -1) - lambda;
    const double wp = w_pm(sys, x, +1) - lambda;
    if (wm == 0.0) throw PoleError(x, "w-(x) - lambda");
    if (wp == 0.0) throw PoleError(x, "w+(x) - lambda");
    const double k = sys.kappa;
    const double common = wp * wm / (sys.c * sys.c);
    return {
        -dV / wm,
        common - (k * k + k) / (x * x) - k * dV / (x * wm),
        -dV / wp,
        common - (k * k - k) / (x * x) + k * dV / (x * wp),
    };
}

ConvectionDiagnostics convection_diagnostics(const PhysicalSystem& sys, double lambda, const Grid& grid,
                                             Component which) {
    ConvectionDiagnostics out;
    const std::size_t n = grid.intervals();
    out.peclet.reserve(n);
    out.damkohler.reserve(n);
    out.product2PeDa.reserve(n);
    constexpr double K = 1.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double h = grid.spacing(j);
        const double mid = 0.5 * (grid.node(j - 1) + grid.node(j));
        const auto co = second_order_coefficients(sys, lambda, mid);
        const double u = which == Component::large ? co.gamma1 : co.theta1;
        const double s = which == Component::large ? co.gamma2 : co.theta2;
        const double pe = std::abs(u) * h / (2.0 * K);
        out.peclet.push_back(pe);
        out.damkohler.push_back(u == 0.0 ? ConvectionDiagnostics::infinite : s * h / std::abs(u));
        out.product2PeDa.push_back(s * h * h / K);
    }
    return out;
}

}  // namespace hpcloud
