#include "axxz/lapack.hpp"

#include <lapacke.h>

namespace axxz::lapack {

EigenDecomposition general_eigen(const CMat& a) {
    const auto n = static_cast<lapack_int>(a.rows());
    CMat work = a;
    EigenDecomposition out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    const lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', 'V', n, reinterpret_cast<lapack_complex_double*>(work.data()), n,
        reinterpret_cast<lapack_complex_double*>(out.values.data()), nullptr, n,
        reinterpret_cast<lapack_complex_double*>(out.vectors.data()), n);
    if (info != 0) throw Error(ErrorCode::DegenerateCombination, "zgeev failed, info=" + std::to_string(info));
    return out;
}

RVec symmetric_eigenvalues(const RMat& a) {
    const auto n = static_cast<lapack_int>(a.rows());
    RMat work = a;
    RVec w(n);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'U', n, work.data(), n, w.data());
    if (info != 0) throw Error(ErrorCode::CrossCheckFailed, "dsyevd failed, info=" + std::to_string(info));
    return w;
}

}  // namespace axxz::lapack
