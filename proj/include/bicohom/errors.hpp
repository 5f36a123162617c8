#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bicohom {

enum class ErrorCode {
    AmbientMismatch,
    NotASubspace,
    ShapeMismatch,
    InvalidBicomplex,
    InternalInconsistency,
    JacobiViolation,
    NotAlmostComplex,
    NotIntegrable,
    NotClosed,
    UnknownExample,
    ParseError,
    SchemaError,
    Unsupported,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotASubspace: return "NotASubspace";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidBicomplex: return "InvalidBicomplex";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::JacobiViolation: return "JacobiViolation";
    case ErrorCode::NotAlmostComplex: return "NotAlmostComplex";
    case ErrorCode::NotIntegrable: return "NotIntegrable";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

/// Every failure raised by the engine carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void ensure(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace bicohom
