#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linstrand {

enum class ErrorCode {
    FieldMismatch,
    ParseError,
    InvalidConfig,
    IndexError,
    SizeLimit,
    SingularFrame,
    BadUnit,
    DimensionMismatch,
    ZeroQuadric,
    NotSquareFree,
    NotInIdeal,
    PivotInterleaved,
    HypothesisError,
    DimOutOfRange,
    NoCertificate,
    NotDivisible,
    ContradictionReached,
    PropagationStalled,
    RejectionOverflow,
    OutOfRange,
};

std::string_view error_code_name(ErrorCode code);

// Every recoverable failure in the library is raised as this type; the code
// lets callers (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
    if (!condition) fail(code, what);
}

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::IndexError: return "IndexError";
        case ErrorCode::SizeLimit: return "SizeLimit";
        case ErrorCode::SingularFrame: return "SingularFrame";
        case ErrorCode::BadUnit: return "BadUnit";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ZeroQuadric: return "ZeroQuadric";
        case ErrorCode::NotSquareFree: return "NotSquareFree";
        case ErrorCode::NotInIdeal: return "NotInIdeal";
        case ErrorCode::PivotInterleaved: return "PivotInterleaved";
        case ErrorCode::HypothesisError: return "HypothesisError";
        case ErrorCode::DimOutOfRange: return "DimOutOfRange";
        case ErrorCode::NoCertificate: return "NoCertificate";
        case ErrorCode::NotDivisible: return "NotDivisible";
        case ErrorCode::ContradictionReached: return "ContradictionReached";
        case ErrorCode::PropagationStalled: return "PropagationStalled";
        case ErrorCode::RejectionOverflow: return "RejectionOverflow";
        case ErrorCode::OutOfRange: return "OutOfRange";
    }
    return "Unknown";
}

}  // namespace linstrand
