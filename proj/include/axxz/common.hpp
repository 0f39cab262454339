#pragma once
/// @file common.hpp
/// Shared scalar types, the chain specification and the error taxonomy.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace axxz {

using cd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cd kI{0.0, 1.0};

/// Error categories raised across the library. Non-fatal categories are
/// also attached to per-state records as flags.
enum class ErrorCode {
    InvalidSpec,
    DimensionOverflow,
    DegenerateCombination,
    InconsistentRatio,
    RootPolishDiverged,
    BranchAmbiguity,
    UnclassifiedPattern,
    CrossCheckFailed,
    NotDivisible,
    Diverged,
    SingularJacobian,
    NonRealDrift,
    PoleAt,
    UnsupportedType,
    QuadratureNotConverged,
    DenominatorSingular,
    SchemaMismatch,
    Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Model instance: N sites, anisotropy gamma with eta = i*gamma.
struct ChainSpec {
    int N = 4;
    double gamma = 0.6;
    int n_max = 12;

    ChainSpec() = default;
    ChainSpec(int n, double g, int nmax = 12) : N(n), gamma(g), n_max(nmax) { validate(); }

    cd eta() const { return {0.0, gamma}; }
    std::size_t dim() const { return std::size_t{1} << N; }
    /// Throws InvalidSpec or DimensionOverflow.
    void validate() const;
};

}  // namespace axxz
