#pragma once

#include <stdexcept>
#include <string>

namespace unifact {

/// Machine-readable failure codes. The CLI maps these onto exit statuses:
/// malformed input gets 1, a mathematically justified refusal gets 2.
enum class ErrorCode {
    NonPrime,
    ReducibleModulus,
    DivisionByZero,
    FieldMismatch,
    FieldTooSmall,
    DimensionCap,
    NotSquare,
    NotUnipotent,
    NotAssociative,
    NoIdentity,
    NoInverse,
    OrderCapExceeded,
    CocycleIdentityFails,
    NotNormalized,
    ZeroValue,
    NotAUnit,
    NotSemisimple,
    NotSL,
    Singular,
    CentralNonIdentity,
    IndexTooHigh,
    NotInDerived,
    NotInRadical,
    HypothesisViolated,
    EnumerationCap,
    SchemaError,
    CertificateInvalid,
    InternalError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

/// Loud failure for conditions the algorithms guarantee; reaching one is a bug.
[[noreturn]] inline void fail_internal(const std::string& message) {
    throw Error(ErrorCode::InternalError, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) fail(code, message);
}

} // namespace unifact
