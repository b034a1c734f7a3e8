#include "genmetrics/error.hpp"

namespace genmetrics {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MalformedImage: return "MalformedImage";
        case ErrorCode::UnsupportedPixelLayout: return "UnsupportedPixelLayout";
        case ErrorCode::ZeroDimension: return "ZeroDimension";
        case ErrorCode::WrongStorage: return "WrongStorage";
        case ErrorCode::InvalidValue: return "InvalidValue";
        case ErrorCode::UnknownBackbone: return "UnknownBackbone";
        case ErrorCode::DuplicateBackbone: return "DuplicateBackbone";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::PreconditionViolation: return "PreconditionViolation";
        case ErrorCode::BadMagic: return "BadMagic";
        case ErrorCode::VersionMismatch: return "VersionMismatch";
        case ErrorCode::TruncatedPayload: return "TruncatedPayload";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonConvergentEigensolve: return "NonConvergentEigensolve";
        case ErrorCode::EmptyChunk: return "EmptyChunk";
        case ErrorCode::KTooLarge: return "KTooLarge";
        case ErrorCode::LabelMismatch: return "LabelMismatch";
        case ErrorCode::ClassTooSmall: return "ClassTooSmall";
        case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
        case ErrorCode::FractionTooSmall: return "FractionTooSmall";
        case ErrorCode::DegenerateReference: return "DegenerateReference";
        case ErrorCode::HeterogeneousReports: return "HeterogeneousReports";
        case ErrorCode::MissingReferenceDeclaration: return "MissingReferenceDeclaration";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
    }
    return "Unknown";
}

}  // namespace genmetrics
