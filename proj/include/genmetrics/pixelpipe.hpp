#pragma once

#include <cstdint>
#include <optional>

#include "genmetrics/backbone.hpp"
#include "genmetrics/pixel_buffer.hpp"
#include "genmetrics/resample.hpp"

namespace genmetrics {

// v -> (v - 127.5) / 127.5. Throws WrongStorage unless src is U8.
PixelBuffer normalize(const PixelBuffer& src);

// x -> floor(clip(127.5 * x + 128, 0, 255)). Throws WrongStorage unless src
// is UnitFloat.
PixelBuffer quantize(const PixelBuffer& src);

std::uint8_t quantize_value(double unit_value) noexcept;
float normalize_value(std::uint8_t v) noexcept;

// Route-4 resize only: U8 in, U8 out at the backbone's input resolution with
// its friendly filter (or `filter_override`), antialias on. Grayscale input
// is replicated to three channels.
PixelBuffer backbone_resize(const PixelBuffer& src, const BackboneSpec& spec,
                            std::optional<FilterKind> filter_override = std::nullopt);

// backbone_resize followed by the backbone's per-channel affine map.
// Float input is refused (WrongStorage): images must be quantized to 8 bits
// before they reach an evaluation backbone.
PixelBuffer backbone_prepare(const PixelBuffer& src, const BackboneSpec& spec,
                             std::optional<FilterKind> filter_override = std::nullopt);

}  // namespace genmetrics

namespace genmetrics {

// Looks the backbone up by name; throws UnknownBackbone.
inline PixelBuffer backbone_prepare(const PixelBuffer& src, const BackboneRegistry& registry,
                                    std::string_view backbone_name) {
    return backbone_prepare(src, registry.find(backbone_name));
}

}  // namespace genmetrics
