#pragma once

#include <stdexcept>
#include <string>

namespace snarklab {

enum class ErrorKind {
    NotCubic,
    MalformedEncoding,
    Acyclic,
    NotTwoConnected,
    NotCubicResult,
    InconsistentFixed,
    LoopEdge,
    ImproperColouring,
    NotSnark,
    Bridged,
    NotInducedSixCycle,
    LoopAtVertex,
    DefectNotThree,
    BadSpec,
    CutNotSmallIndependent,
    NotSixCut,
    PreconditionFailed,
    InvalidPiece,
    ElementReuse,
    CoreTouched,
    PoolExhausted,
    VerificationFailed,
    NotACycle,
    Uncovered,
    NotFourCover,
    RecipeMismatch,
    TooLarge,
    IOError,
    SchemaError,
    Timeout,
};

inline const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::NotCubic: return "NotCubic";
    case ErrorKind::MalformedEncoding: return "MalformedEncoding";
    case ErrorKind::Acyclic: return "Acyclic";
    case ErrorKind::NotTwoConnected: return "NotTwoConnected";
    case ErrorKind::NotCubicResult: return "NotCubicResult";
    case ErrorKind::InconsistentFixed: return "InconsistentFixed";
    case ErrorKind::LoopEdge: return "LoopEdge";
    case ErrorKind::ImproperColouring: return "ImproperColouring";
    case ErrorKind::NotSnark: return "NotSnark";
    case ErrorKind::Bridged: return "Bridged";
    case ErrorKind::NotInducedSixCycle: return "NotInducedSixCycle";
    case ErrorKind::LoopAtVertex: return "LoopAtVertex";
    case ErrorKind::DefectNotThree: return "DefectNotThree";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::CutNotSmallIndependent: return "CutNotSmallIndependent";
    case ErrorKind::NotSixCut: return "NotSixCut";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::InvalidPiece: return "InvalidPiece";
    case ErrorKind::ElementReuse: return "ElementReuse";
    case ErrorKind::CoreTouched: return "CoreTouched";
    case ErrorKind::PoolExhausted: return "PoolExhausted";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::Uncovered: return "Uncovered";
    case ErrorKind::NotFourCover: return "NotFourCover";
    case ErrorKind::RecipeMismatch: return "RecipeMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::IOError: return "IOError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::Timeout: return "Timeout";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace snarklab
