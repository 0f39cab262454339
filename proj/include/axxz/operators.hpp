#pragma once
/// @file operators.hpp
/// Dense operator construction for the anti-periodic XXZ chain.
///
/// Basis convention: index bit (N-1-j) encodes site j (site 0 is the most
/// significant bit); bit value 0 is spin up (sigma^z = +1).

#include "axxz/common.hpp"

#include <cstdint>

namespace axxz {

enum class OperatorTag { Hermitian, SignedPermutation, Generic };

struct OperatorMatrix {
    CMat entries;
    OperatorTag tag = OperatorTag::Generic;

    std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
    /// Verifies the structural promise of the tag.
    bool tag_holds(double tol = 1e-12) const;
};

/// Permutation with a unit phase per column: M e_b = phase[b] e_{target[b]}.
/// Phases are powers of i stored as an integer mod 4 so products stay exact.
struct SignedPermutation {
    std::vector<std::uint32_t> target;
    std::vector<std::uint8_t> phase;

    static SignedPermutation identity(std::size_t dim);
    SignedPermutation compose(const SignedPermutation& rhs) const;  ///< this * rhs
    SignedPermutation power(int k) const;
    bool is_identity() const;
    OperatorMatrix to_matrix() const;
};

enum class Axis { X, Y, Z };

/// Six-vertex weights A(u) = [sinh(u+eta)+sinh u]/(2 sinh eta), B(u) = [sinh(u+eta)-sinh u]/(2 sinh eta).
struct VertexWeights {
    cd A, B;
};
VertexWeights vertex_weights(cd u, const ChainSpec& spec);

/// R(u) on C^2 (x) C^2 in the basis |uu>,|ud>,|du>,|dd>.
Eigen::Matrix4cd build_r_matrix(cd u, const ChainSpec& spec);

/// t(u) = tr_0(sigma^x_0 T_0(u)) by site-wise contraction of the auxiliary block.
/// u == 0 takes the exact permutation path.
OperatorMatrix build_transfer(cd u, const ChainSpec& spec);

/// t(0) = sigma^x_1 P_{1N} ... P_{12} as an exact permutation.
SignedPermutation transfer_at_zero(const ChainSpec& spec);

/// Real symmetric H with the twisted boundary bond.
RMat build_hamiltonian_real(const ChainSpec& spec);
OperatorMatrix build_hamiltonian(const ChainSpec& spec);

/// Ascending eigenvalues of H, computed per U_x parity block.
RVec hamiltonian_spectrum(const ChainSpec& spec);

SignedPermutation z2_permutation(Axis axis, const ChainSpec& spec);
OperatorMatrix build_z2(Axis axis, const ChainSpec& spec);

struct ChargeOperators {
    OperatorMatrix M_q, l_plus, l_minus;
};
/// Quantum-group generators with sigma^pm = (sigma^x +- i sigma^y)/2.
ChargeOperators build_charge(const ChainSpec& spec);

/// Rescaled large-u transfer matrix (1/4) e^{-(N-1)eta/2} (2 sinh eta e^{-u})^{N-1} t(u).
OperatorMatrix charge_from_transfer_limit(double u, const ChainSpec& spec);

/// Single-site Pauli operator embedded in the chain (test and check helper).
OperatorMatrix pauli_on_site(Axis axis, int site, const ChainSpec& spec);

/// Max-entry norm of [A, B].
double commutator_norm(const CMat& a, const CMat& b);

}  // namespace axxz
