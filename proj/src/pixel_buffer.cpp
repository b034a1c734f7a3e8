#include "genmetrics/pixel_buffer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "genmetrics/error.hpp"

namespace genmetrics {

std::string_view to_string(Storage s) noexcept {
    switch (s) {
        case Storage::U8: return "U8";
        case Storage::UnitFloat: return "UnitFloat";
        case Storage::BackboneFloat: return "BackboneFloat";
    }
    return "?";
}

std::string_view to_string(FilterKind f) noexcept {
    switch (f) {
        case FilterKind::Nearest: return "Nearest";
        case FilterKind::Bilinear: return "Bilinear";
        case FilterKind::Bicubic: return "Bicubic";
        case FilterKind::Lanczos: return "Lanczos";
    }
    return "?";
}

std::optional<FilterKind> parse_filter(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "nearest") return FilterKind::Nearest;
    if (lower == "bilinear") return FilterKind::Bilinear;
    if (lower == "bicubic") return FilterKind::Bicubic;
    if (lower == "lanczos") return FilterKind::Lanczos;
    return std::nullopt;
}

namespace {

void check_shape(int w, int h, int c, std::size_t n) {
    if (w < 1 || h < 1) throw Error(ErrorCode::ZeroDimension, "raster must be at least 1x1");
    if (c != 1 && c != 3)
        throw Error(ErrorCode::UnsupportedPixelLayout, "channels must be 1 or 3, got " + std::to_string(c));
    if (n != static_cast<std::size_t>(w) * h * c)
        throw Error(ErrorCode::PreconditionViolation, "value count does not match width*height*channels");
}

}  // namespace

PixelBuffer PixelBuffer::from_u8(int width, int height, int channels, std::vector<std::uint8_t> values) {
    check_shape(width, height, channels, values.size());
    PixelBuffer buf(width, height, channels, Storage::U8);
    buf.data_ = std::move(values);
    return buf;
}

PixelBuffer PixelBuffer::from_float(int width, int height, int channels, Storage storage,
                                    std::vector<float> values) {
    if (storage == Storage::U8)
        throw Error(ErrorCode::WrongStorage, "from_float cannot build a U8 buffer");
    check_shape(width, height, channels, values.size());
    for (float v : values) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidValue, "non-finite pixel value");
        if (storage == Storage::UnitFloat && (v < -1.0f || v > 1.0f))
            throw Error(ErrorCode::InvalidValue, "UnitFloat value outside [-1, 1]");
    }
    PixelBuffer buf(width, height, channels, storage);
    buf.data_ = std::move(values);
    return buf;
}

std::span<const std::uint8_t> PixelBuffer::u8() const {
    if (const auto* v = std::get_if<std::vector<std::uint8_t>>(&data_)) return *v;
    throw Error(ErrorCode::WrongStorage, "buffer is not U8");
}

std::span<const float> PixelBuffer::floats() const {
    if (const auto* v = std::get_if<std::vector<float>>(&data_)) return *v;
    throw Error(ErrorCode::WrongStorage, "buffer is U8, not float");
}

double PixelBuffer::value(int x, int y, int c) const noexcept {
    const std::size_t idx = (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    if (const auto* v = std::get_if<std::vector<std::uint8_t>>(&data_)) return (*v)[idx];
    return std::get<std::vector<float>>(data_)[idx];
}

namespace {

template <class T>
std::vector<T> flip_copy(std::span<const T> src, int w, int h, int c, bool horizontal) {
    std::vector<T> out(src.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int sx = horizontal ? w - 1 - x : x;
            const int sy = horizontal ? y : h - 1 - y;
            for (int k = 0; k < c; ++k)
                out[(static_cast<std::size_t>(y) * w + x) * c + k] =
                    src[(static_cast<std::size_t>(sy) * w + sx) * c + k];
        }
    }
    return out;
}

PixelBuffer flip(const PixelBuffer& src, bool horizontal) {
    const int w = src.width(), h = src.height(), c = src.channels();
    if (src.is_u8()) return PixelBuffer::from_u8(w, h, c, flip_copy(src.u8(), w, h, c, horizontal));
    return PixelBuffer::from_float(w, h, c, src.storage(), flip_copy(src.floats(), w, h, c, horizontal));
}

}  // namespace

PixelBuffer flip_horizontal(const PixelBuffer& src) { return flip(src, true); }
PixelBuffer flip_vertical(const PixelBuffer& src) { return flip(src, false); }

}  // namespace genmetrics
