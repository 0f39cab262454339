#include "axxz/common.hpp"

#include <cmath>

namespace axxz {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::DimensionOverflow: return "DimensionOverflow";
        case ErrorCode::DegenerateCombination: return "DegenerateCombination";
        case ErrorCode::InconsistentRatio: return "InconsistentRatio";
        case ErrorCode::RootPolishDiverged: return "RootPolishDiverged";
        case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
        case ErrorCode::UnclassifiedPattern: return "UnclassifiedPattern";
        case ErrorCode::CrossCheckFailed: return "CrossCheckFailed";
        case ErrorCode::NotDivisible: return "NotDivisible";
        case ErrorCode::Diverged: return "Diverged";
        case ErrorCode::SingularJacobian: return "SingularJacobian";
        case ErrorCode::NonRealDrift: return "NonRealDrift";
        case ErrorCode::PoleAt: return "PoleAt";
        case ErrorCode::UnsupportedType: return "UnsupportedType";
        case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
        case ErrorCode::DenominatorSingular: return "DenominatorSingular";
        case ErrorCode::SchemaMismatch: return "SchemaMismatch";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

void ChainSpec::validate() const {
    if (N < 2) throw Error(ErrorCode::InvalidSpec, "N must be at least 2");
    if (N > n_max) throw Error(ErrorCode::DimensionOverflow, "N exceeds configured N_max");
    if (!(gamma > 0.0 && gamma < kPi) || !std::isfinite(gamma))
        throw Error(ErrorCode::InvalidSpec, "gamma must lie in (0, pi)");
    // sinh(i*gamma) = i*sin(gamma) appears in every denominator.
    if (std::abs(std::sin(gamma)) < 1e-12)
        throw Error(ErrorCode::InvalidSpec, "sin(gamma) vanishes");
}

}  // namespace axxz
