#pragma once
/// @file trigpoly.hpp
/// Trigonometric polynomials f(u) = e^{-D u} sum_{m=0}^{D} c_m e^{2 m u},
/// interpolated on shifted roots of unity in x = e^{2u}.

#include "axxz/common.hpp"

namespace axxz {

/// Imaginary part folded into [-pi/2, pi/2). Values within `snap` of +pi/2
/// land on -pi/2, the representative used for roots on the cut.
cd canonical_branch(cd z, double snap = 1e-7);

/// Product prefactor * prod_j sinh(u - roots_j + shift).
cd sinh_product(cd u, cd prefactor, const std::vector<cd>& roots, cd shift);

struct TrigPoly {
    int degree = 0;
    CVec coeffs;  ///< c_0..c_D

    cd operator()(cd u) const;
};

/// Nodes u_k = offset + i*pi*k/(D+1), k = 0..D.
std::vector<cd> interpolation_nodes(int degree, double offset);

/// Recovers the coefficients from samples at interpolation_nodes(degree, offset).
TrigPoly interpolate_trig(const std::vector<cd>& samples, int degree, double offset);

/// Roots of sum_m c_m x^m via companion-matrix eigenvalues.
std::vector<cd> polynomial_roots(const CVec& coeffs);

/// Newton refinement of a root of sum_m c_m x^m. Returns false when the
/// iteration fails to reduce |p(x)|; x is then left unchanged.
bool polish_polynomial_root(const CVec& coeffs, cd& x, int max_iter = 20);

/// Greedy nearest-neighbour distance between two root multisets, with
/// differences measured modulo i*pi. Infinity if the sizes differ.
double multiset_distance(const std::vector<cd>& a, const std::vector<cd>& b);

/// Difference folded so that its imaginary part lies in [-pi/2, pi/2).
cd mod_i_pi(cd d);

}  // namespace axxz
