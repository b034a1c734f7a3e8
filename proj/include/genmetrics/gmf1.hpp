#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "genmetrics/feature_set.hpp"

namespace genmetrics {

// GMF1 feature interchange file, all fields little-endian:
//
//   offset  size  field
//   0       4     magic "GMF1"
//   4       4     u32 format version (1)
//   8       8     u64 N
//   16      4     u32 D
//   20      4     u32 K (0 = no posteriors)
//   24      4     u32 flags: bit0 labels present, bit1 class count stored
//   28      4     u32 class count (only meaningful with flags bit1)
//   32      32    zero
//   64            N*D f32 features, row-major
//                 N u32 labels            (flags bit0)
//                 N*K f32 posteriors      (K > 0)
namespace gmf1 {
inline constexpr std::size_t kHeaderSize = 64;
inline constexpr std::uint32_t kVersion = 1;
inline constexpr std::uint32_t kFlagLabels = 1u << 0;
inline constexpr std::uint32_t kFlagClassCount = 1u << 1;
}  // namespace gmf1

struct FeatureFile {
    FeatureSet features;
    std::optional<PosteriorSet> posteriors;

    friend bool operator==(const FeatureFile&, const FeatureFile&) = default;
};

// Throws PreconditionViolation when posterior count differs from feature count.
// The class count is stored only when it differs from max(label) + 1.
std::vector<std::uint8_t> encode_gmf1(const FeatureSet& features, const std::optional<PosteriorSet>& posteriors);
// Errors: BadMagic, VersionMismatch, TruncatedPayload, NonFiniteValue.
FeatureFile decode_gmf1(std::span<const std::uint8_t> bytes);

// IoFailure on filesystem errors.
void write_features(const std::filesystem::path& path, const FeatureSet& features,
                    const std::optional<PosteriorSet>& posteriors = std::nullopt);
// source_tag of the result is the file path.
FeatureFile read_features(const std::filesystem::path& path);

}  // namespace genmetrics
