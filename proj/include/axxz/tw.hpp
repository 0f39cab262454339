#pragma once
/// @file tw.hpp
/// The t-W relation: W(u) per eigenstate, w-roots, operator-level check
/// and Bethe-ansatz residuals.

#include "axxz/spectrum.hpp"

#include <functional>

namespace axxz {

/// Real offset of the W interpolation nodes away from the zeros of d(u).
inline constexpr double kWNodeOffset = 0.5;

struct TWRecord {
    int W0 = 1;
    cd W0_raw{};  ///< value before rounding to +-1
    std::vector<cd> w_roots;
    double tw_residual = 0.0;
    double divisibility_residual = 0.0;
    cd w_sum{};  ///< sum of w-roots
    BaeResiduals bae;
};

/// d(u) = sinh^N(u) / sinh^N(eta); a(u) = d(u + eta).
cd d_fn(cd u, const ChainSpec& spec);
cd a_fn(cd u, const ChainSpec& spec);

/// W(u) = W0 sinh^{-N}(eta) prod_l sinh(u - w_l).
cd w_factorized(cd u, double W0, const std::vector<cd>& w, const ChainSpec& spec);

/// |Lambda(u)Lambda(u-eta) + a(u)d(u-eta) - d(u)W(u)| / max(|terms|, 1).
double scalar_tw_residual(cd u, cd lambda_u, cd lambda_u_minus_eta, cd w_u, const ChainSpec& spec);

/// Same residual with Lambda and W in factorized form.
double scalar_tw_check(cd u, cd lambda0, const std::vector<cd>& z, double W0, const std::vector<cd>& w,
                       const ChainSpec& spec);

/// Builds W from the scalar relation, extracts w-roots and W0 and fills the
/// residual fields. Throws NotDivisible when d(u) fails to divide.
TWRecord build_w_function(cd lambda0, const std::vector<cd>& z, const ChainSpec& spec);

/// Same, with Lambda(u) supplied directly (e.g. the interpolated polynomial,
/// which is more accurate than the factorized form when roots are large).
/// An infinite `divisibility_tol` turns the check off, which is useful for
/// seeding from an approximate Lambda.
TWRecord build_w_function(cd lambda0, const std::vector<cd>& z, const ChainSpec& spec,
                          const std::function<cd(cd)>& lambda, double divisibility_tol = 1e-8);

struct OperatorTWResult {
    double interpolation_residual = 0.0;  ///< at the held-out point, relative to the largest term
    double commutator = 0.0;              ///< relative ||[X(u), t(v)]||
};

/// Operator form of the relation; intended for N <= 8.
OperatorTWResult operator_tw_check(const ChainSpec& spec, cd u, cd v);

/// |tr X(u) - sum_states d(u) W_s(u)| / max(|tr X(u)|, 1).
double trace_identity_residual(const ChainSpec& spec, cd u, const std::vector<StateRecord>& states);

/// Residuals of the pointwise equations and the sum rule, each relative to
/// the larger side.
BaeResiduals bae_residuals(cd lambda0, const std::vector<cd>& z, double W0, const std::vector<cd>& w,
                           const ChainSpec& spec);

}  // namespace axxz
