#pragma once
/// @file thermo.hpp
/// Thermodynamic-limit quantities: total root density, ground-state energy
/// density and the single-rapidity excitation energies.

#include "axxz/common.hpp"

#include <functional>

namespace axxz {

struct ThermoParams {
    double gamma = 0.6;
    double quad_abs_tol = 1e-12;
    double quad_cutoff_T = 0.0;  ///< 0 selects the cutoff from the decay rate

    ThermoParams() = default;
    explicit ThermoParams(double g) : gamma(g) { validate(); }
    /// gamma must lie in [1e-3, pi - 1e-3]; tolerances positive.
    void validate() const;
};

enum class DispersionType { I, II, III };

const char* to_string(DispersionType t);
DispersionType dispersion_type_from_string(const std::string& s);

struct DispersionCurve {
    DispersionType type = DispersionType::I;
    int n = 0;  ///< pair order, type III only
    std::vector<double> alpha_grid;
    std::vector<double> energies;
    double gamma = 0.0;
};

/// Result of a quadrature over (-inf, inf).
struct QuadratureResult {
    double value = 0.0;
    double change = 0.0;  ///< |last - previous| under panel halving
    double cutoff = 0.0;
    int panels = 0;
};

/// Composite 16-point Gauss-Legendre on [-T, T], halving the panel width
/// until successive estimates agree to `abs_tol`. `decay` is the slowest
/// exponential decay rate of the integrand; it sets T when none is given.
/// Throws QuadratureNotConverged.
QuadratureResult integrate_real_line(const std::function<double(double)>& f, double decay, double abs_tol,
                                     double cutoff = 0.0, int initial_panels_per_unit = 1);

/// cosh(a tau) tanh((pi-gamma) tau/2) / sinh(pi tau/2), finite at tau = 0 and
/// free of overflow for large |tau|.
double dressed_kernel(double a, double tau, double gamma);

/// rho(z) + rho^h(z).
double density_total(double z, double gamma);
/// Integral of the total density from -inf to z (closed form).
double density_cdf(double z, double gamma);

double ground_energy_density(const ThermoParams& p, QuadratureResult* info = nullptr);

struct ExcitationConstraint {
    double m = 0.0;              ///< pi/gamma - 1
    double beta_minus_alpha = 0.0;
};
ExcitationConstraint excitation_constraint(double gamma);

/// delta_m = m gamma/(2 pi) - floor(m gamma/(2 pi)).
double delta_fraction(int m, double gamma);

/// Excitation energy of the given type at rapidity alpha. Throws
/// QuadratureNotConverged, DenominatorSingular or InvalidSpec (type III with n < 3).
double excitation_energy(DispersionType type, double alpha, int n, const ThermoParams& p,
                         QuadratureResult* info = nullptr);

DispersionCurve dispersion_curve(DispersionType type, const std::vector<double>& alpha_grid, int n,
                                 const ThermoParams& p);

/// Parses "start:stop:step" or a comma-separated list. Throws InvalidSpec.
std::vector<double> parse_alpha_grid(const std::string& text);

}  // namespace axxz
