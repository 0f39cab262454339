#pragma once
/// @file bae.hpp
/// Direct solution of the Bethe-ansatz equations by damped Newton iteration:
/// the collocation form of the scalar t-W relation and the logarithmic
/// real-root form for the ground branch.

#include "axxz/tw.hpp"

#include <cstdint>

namespace axxz {

struct BaeSolution {
    std::vector<cd> z_roots;
    std::vector<cd> w_roots;
    cd lambda0{};
    int W0 = 1;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string seed_descriptor;
    std::string route;  ///< "collocation", "coefficient+collocation" or "log-form"
};

/// Quantum numbers I_j of the logarithmic equations.
struct QuantumNumberConfig {
    std::vector<double> I;

    static QuantumNumberConfig symmetric(int N);
    /// Throws InvalidSpec unless the values are distinct members of
    /// {-(N-2)/2, ..., (N-2)/2} and there are N-1 of them.
    void validate(int N) const;
};

enum class ExcitationType { Ground, TypeI, TypeII, TypeIII, Asymmetric };

const char* to_string(ExcitationType t);
ExcitationType excitation_type_from_string(const std::string& s);

struct StringSeed {
    ExcitationType type = ExcitationType::Ground;
    double alpha = 0.0;
    int n = 3;          ///< type-III pair order
    int side = -1;      ///< -1 left, +1 right (asymmetric boundary pair)
    double m_guess = 3; ///< asymmetric boundary pair order
    double offset = 0.6;///< asymmetric: distance of beta beyond the outermost root

    void validate() const;
    std::string describe() const;
};

/// Initial guess in factorized form.
struct RootGuess {
    std::vector<cd> z;
    std::vector<cd> w;
    cd lambda0{};  ///< zero means "derive from the normalization condition"
};

struct NewtonOptions {
    double residual_tol = 1e-12;
    double step_tol = 1e-14;
    int max_iterations = 200;
    double damping = 0.5;
    double min_step = 1.0 / (1 << 30);
    int max_restarts = 3;
    double jitter = 1e-4;
    std::uint64_t jitter_seed = 7;
    bool allow_globalization = true;
};

/// Lambda0 from Lambda0^2 prod sinh(z+eta/2) sinh(z-eta/2) = (-1)^{N-1} (principal root).
cd lambda0_from_normalization(const std::vector<cd>& z, const ChainSpec& spec);

/// Collocation points u_k = i*pi*(k+1/2)/(2N+1), k = 0..2N.
std::vector<cd> collocation_points(const ChainSpec& spec);

/// Scaled residual vector of the scalar relation at the collocation points.
CVec collocation_residual(const std::vector<cd>& z, const std::vector<cd>& w, cd lambda0, int W0,
                          const ChainSpec& spec);

/// Newton solve for {z, w, lambda0} at fixed W0. Falls back to a Newton
/// stage on the coefficients of Lambda when the direct iteration stalls.
/// Throws Diverged or SingularJacobian.
BaeSolution solve_collocation(const ChainSpec& spec, const RootGuess& seed, int W0, const NewtonOptions& opts = {});
BaeSolution solve_collocation(const ChainSpec& spec, const StringSeed& seed, int W0, const NewtonOptions& opts = {});

/// Real-root ground branch from the logarithmic equations. Throws Diverged
/// or NonRealDrift.
BaeSolution solve_ground_log_form(const ChainSpec& spec, const QuantumNumberConfig& qn, const NewtonOptions& opts = {});

/// Composes a string-pattern guess on top of the ground-state roots.
RootGuess seed_from_strings(const ChainSpec& spec, const StringSeed& seed);

/// theta_n(x) = 2 atan(tanh x / tan(n gamma/2)): continuous, odd, monotone.
double kernel_theta(int n, double x, double gamma);
/// a_n(x) = theta_n'(x) / (2 pi).
double kernel_a(int n, double x, double gamma);
/// b_n(x) = d/dx ln|sinh(x - n eta/2)| / pi. Throws PoleAt on a zero of the sinh.
double kernel_b(int n, double x, double gamma);

/// Inverse of the cumulative total root density, q in (-1/2, 1/2).
double density_quantile(double q, double gamma);

}  // namespace axxz
