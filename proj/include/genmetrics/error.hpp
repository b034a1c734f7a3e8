#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace genmetrics {

enum class ErrorCode {
    MalformedImage,
    UnsupportedPixelLayout,
    ZeroDimension,
    WrongStorage,
    InvalidValue,
    UnknownBackbone,
    DuplicateBackbone,
    IoFailure,
    PreconditionViolation,
    BadMagic,
    VersionMismatch,
    TruncatedPayload,
    NonFiniteValue,
    TooFewSamples,
    DimensionMismatch,
    NonConvergentEigensolve,
    EmptyChunk,
    KTooLarge,
    LabelMismatch,
    ClassTooSmall,
    LabelOutOfRange,
    FractionTooSmall,
    DegenerateReference,
    HeterogeneousReports,
    MissingReferenceDeclaration,
    SchemaViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

// All toolkit failures are reported through this type; `code()` identifies
// the contract that was violated.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace genmetrics
