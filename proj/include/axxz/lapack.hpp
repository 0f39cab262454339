#pragma once
/// @file lapack.hpp
/// Thin wrappers over the LAPACK eigensolvers used by the library.

#include "axxz/common.hpp"

namespace axxz::lapack {

struct EigenDecomposition {
    CVec values;
    CMat vectors;  ///< unit-norm right eigenvectors in columns
};

/// General complex eigenproblem (zgeev).
EigenDecomposition general_eigen(const CMat& a);

/// Eigenvalues of a real symmetric matrix in ascending order (dsyevd).
RVec symmetric_eigenvalues(const RMat& a);

}  // namespace axxz::lapack
