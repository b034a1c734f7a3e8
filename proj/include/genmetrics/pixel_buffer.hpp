#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace genmetrics {

// Value representation of a raster.
//   U8            0..255 integers (decoded or quantized images)
//   UnitFloat     [-1, 1] (generator/discriminator domain)
//   BackboneFloat per-backbone affine-normalized values, unbounded
enum class Storage { U8, UnitFloat, BackboneFloat };

enum class FilterKind { Nearest, Bilinear, Bicubic, Lanczos };

std::string_view to_string(Storage s) noexcept;
std::string_view to_string(FilterKind f) noexcept;
// Case-insensitive; accepts "nearest", "bilinear", "bicubic", "lanczos".
std::optional<FilterKind> parse_filter(std::string_view name);

// Row-major, channel-interleaved H x W x C raster. Immutable after
// construction; the storage tag is validated against the values.
class PixelBuffer {
public:
    static PixelBuffer from_u8(int width, int height, int channels, std::vector<std::uint8_t> values);
    static PixelBuffer from_float(int width, int height, int channels, Storage storage,
                                  std::vector<float> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    Storage storage() const noexcept { return storage_; }
    bool is_u8() const noexcept { return storage_ == Storage::U8; }
    std::size_t size() const noexcept {
        return static_cast<std::size_t>(width_) * height_ * channels_;
    }

    // Throws WrongStorage when the buffer holds the other representation.
    std::span<const std::uint8_t> u8() const;
    std::span<const float> floats() const;

    double value(int x, int y, int c) const noexcept;

    friend bool operator==(const PixelBuffer&, const PixelBuffer&) = default;

private:
    PixelBuffer(int w, int h, int c, Storage s) : width_(w), height_(h), channels_(c), storage_(s) {}

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    Storage storage_ = Storage::U8;
    std::variant<std::vector<std::uint8_t>, std::vector<float>> data_;
};

PixelBuffer flip_horizontal(const PixelBuffer& src);
PixelBuffer flip_vertical(const PixelBuffer& src);

}  // namespace genmetrics
