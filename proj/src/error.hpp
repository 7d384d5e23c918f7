#pragma once

#include <stdexcept>
#include <string>

namespace ltc {

enum class Err {
    NonEisenstein = 1,
    EvenPrimeUnsupported,
    DegenerateSpec,
    NonUnitInverse,
    PrecisionExhausted,
    ZeroResidue,
    FieldMismatch,
    IllegalCompositionPoint,
    NonUnitLeading,
    ResidueObstruction,
    FrobeniusInvariantViolated,
    NonUnitLinearSolve,
    SingularCompanion,
    NotDescended,
    NonUnitArgument,
    NonUnitGamma,
    PrincipalPartUnknown,
    NotInPhiImage,
    ModelRequiresPeriod,
    PrincipalPartAtZero,
    NotPsiOne,
    DescentFailed,
    SeriesInOperatorDiverged,
    IdentityViolation,
    CompositeClosedFormMismatch,
    PoleAtZero,
    DegenerateFactor,
    NoConvergence,
    NonCommutingAction,
    SignViolation,
    NotChainMap,
    ConfigError,
    ParseError,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

}  // namespace ltc
