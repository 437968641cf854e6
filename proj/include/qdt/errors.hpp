#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdt {

enum class ErrorKind {
    DimensionMismatch,
    NotHermitian,
    NoConvergence,
    InvariantViolation,
    DegenerateSpan,
    DuplicateValues,
    NonOrthonormalBasis,
    NotUnitary,
    ZeroProbabilityOutcome,
    UnknownValue,
    UnknownDataLabel,
    InvalidEffect,
    InsufficientSpan,
    InconsistentSamples,
    NotAPartition,
    DegenerateConditioning,
    SyntaxError,
    ValidationError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::DegenerateSpan: return "DegenerateSpan";
    case ErrorKind::DuplicateValues: return "DuplicateValues";
    case ErrorKind::NonOrthonormalBasis: return "NonOrthonormalBasis";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::ZeroProbabilityOutcome: return "ZeroProbabilityOutcome";
    case ErrorKind::UnknownValue: return "UnknownValue";
    case ErrorKind::UnknownDataLabel: return "UnknownDataLabel";
    case ErrorKind::InvalidEffect: return "InvalidEffect";
    case ErrorKind::InsufficientSpan: return "InsufficientSpan";
    case ErrorKind::InconsistentSamples: return "InconsistentSamples";
    case ErrorKind::NotAPartition: return "NotAPartition";
    case ErrorKind::DegenerateConditioning: return "DegenerateConditioning";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

/// Every failure raised by the library. The kind is stable and meant to be
/// matched on; the message is for humans.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// True for errors caused by bad input documents rather than by the engine.
constexpr bool is_input_error(ErrorKind kind) noexcept {
    return kind == ErrorKind::SyntaxError || kind == ErrorKind::ValidationError;
}

} // namespace qdt
