#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "genmetrics/pixel_buffer.hpp"

namespace genmetrics {

enum class ImageFormat { PNG, JPEG };

// Identifies PNG/JPEG by signature bytes.
std::optional<ImageFormat> sniff_format(std::span<const std::uint8_t> bytes) noexcept;

// Decodes 8-bit grayscale/RGB/palette PNG or baseline JPEG into a U8 buffer.
// No gamma or ICC handling: stored samples are returned as-is.
// Errors: MalformedImage, UnsupportedPixelLayout (16-bit, alpha, CMYK).
PixelBuffer decode_image(std::span<const std::uint8_t> encoded, ImageFormat format);
PixelBuffer decode_image(std::span<const std::uint8_t> encoded);

// Lossless 8-bit PNG; output bytes depend only on the raster.
std::vector<std::uint8_t> encode_png(const PixelBuffer& image);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

PixelBuffer load_image(const std::filesystem::path& path);
void save_png(const std::filesystem::path& path, const PixelBuffer& image);

}  // namespace genmetrics
