#pragma once
/// @file spectrum.hpp
/// Simultaneous diagonalization of the transfer-matrix family, per-state
/// eigenvalue functions, zero-root extraction, classification and observables.

#include "axxz/operators.hpp"
#include "axxz/trigpoly.hpp"

#include <cstdint>
#include <optional>

namespace axxz {

enum class RootKind { AllRealSymmetric, AllRealAsymmetric, AxisShifted, ConjugatePair, Mixed };

const char* to_string(RootKind kind);
RootKind root_kind_from_string(const std::string& s);

struct RootClassification {
    RootKind kind = RootKind::Mixed;
    std::optional<int> pair_order_n;
    std::optional<double> pair_center_alpha;
    std::optional<double> boundary_beta;
    std::optional<double> boundary_m;
    bool unclassified = false;  ///< pattern matched no rule cleanly
};

struct BaeResiduals {
    std::vector<double> z_equations;  ///< one per z-root
    std::vector<double> w_equations;  ///< one per w-root
    double lambda0_equation = 0.0;
    double sum_rule = 0.0;
    double max() const;  ///< pointwise equations only; the sum rule has its own tolerance
};

struct StateRecord {
    int state_id = 0;
    cd lambda0{};
    std::vector<cd> z_roots;
    int W0 = 1;
    cd W0_raw{};  ///< W0 before rounding
    std::vector<cd> w_roots;
    double energy = 0.0;
    double energy_operator = 0.0;  ///< <psi|H|psi>
    double momentum_k = 0.0;       ///< folded to [0, pi)
    double t0_phase = 0.0;         ///< arg of the t(0) eigenvalue
    cd charge_Mq{};
    RootClassification classification;
    int degenerate_partner = -1;
    double tw_residual = 0.0;
    double divisibility_residual = 0.0;
    BaeResiduals bae;
    std::vector<std::string> flags;  ///< non-fatal error tags
};

/// Eigenvectors common to the whole family plus the draw that produced them.
struct FamilyDiagonalization {
    ChainSpec spec;
    CMat vectors;  ///< columns are unit-norm states
    cd c0, c1, u1, u2;
    double max_validation_residual = 0.0;
    int attempts = 0;
};

/// Eigen-decomposes c0 t(0) + c1 t(u1) and validates every vector against t(u2).
FamilyDiagonalization diagonalize_family(const ChainSpec& spec, std::uint64_t seed = 20240601);

/// Lambda(u) from the largest component of t(u) psi, cross-checked on the
/// second-largest component. Throws InconsistentRatio beyond 1e-6.
cd eigenvalue_at(const CVec& psi, const CMat& t);

/// Lambda(u) for every column of `vectors` (same ratio rule, no throw;
/// inconsistent ratios are reported through `bad`).
std::vector<cd> eigenvalues_at(const CMat& vectors, const CMat& t, std::vector<int>* bad = nullptr);

struct ZeroRoots {
    cd lambda0{};
    std::vector<cd> z;
    TrigPoly poly;          ///< Lambda(u) as recovered from the samples
    bool polish_failed = false;
    int snapped = 0;        ///< roots placed on Im z = -pi/2
    double normalization_residual = 0.0;
};

/// Sample nodes u_k = i*pi*k/N used by extract_z_roots.
std::vector<cd> z_sample_nodes(const ChainSpec& spec);

/// Roots of Lambda from its samples at z_sample_nodes.
ZeroRoots extract_z_roots(const std::vector<cd>& samples, const ChainSpec& spec);

/// Lambda(u) = lambda0 prod_j sinh(u - z_j + eta/2).
cd lambda_factorized(cd u, cd lambda0, const std::vector<cd>& z, const ChainSpec& spec);

RootClassification classify_roots(const std::vector<cd>& z, const std::vector<cd>& w, const ChainSpec& spec);

/// Energy from z-roots; imaginary part returned through `imag`.
double energy_from_roots(const std::vector<cd>& z, const ChainSpec& spec, double* imag = nullptr);

/// Momentum from z-roots (real part, not folded) and the Mq eigenvalue.
double momentum_from_roots(const std::vector<cd>& z, const ChainSpec& spec);
cd charge_from_roots(cd lambda0, const std::vector<cd>& z, const ChainSpec& spec);

/// Operators used to cross-check observables.
struct ObservableOperators {
    RMat H;
    CMat Mq;
};
ObservableOperators observable_operators(const ChainSpec& spec);

/// Fills energy, momentum, charge and the t(0) phase. Throws CrossCheckFailed
/// (after filling) when a value disagrees with its operator counterpart.
void compute_observables(StateRecord& state, const CVec& psi, cd lambda_at_zero, const ChainSpec& spec,
                         const ObservableOperators& ops);

/// Pairs states whose root data coincide and whose lambda0 differ in sign.
void assign_degenerate_partners(std::vector<StateRecord>& states, double tol = 1e-6);

/// k folded into [0, pi).
double fold_momentum(double k);

}  // namespace axxz
