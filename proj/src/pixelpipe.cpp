#include "genmetrics/pixelpipe.hpp"

#include <algorithm>
#include <cmath>

#include "genmetrics/error.hpp"

namespace genmetrics {

float normalize_value(std::uint8_t v) noexcept {
    return static_cast<float>((static_cast<double>(v) - 127.5) / 127.5);
}

std::uint8_t quantize_value(double unit_value) noexcept {
    const double q = std::clamp(127.5 * unit_value + 128.0, 0.0, 255.0);
    return static_cast<std::uint8_t>(std::floor(q));
}

PixelBuffer normalize(const PixelBuffer& src) {
    if (src.storage() != Storage::U8) throw Error(ErrorCode::WrongStorage, "normalize expects U8 input");
    const auto in = src.u8();
    std::vector<float> out(in.size());
    std::transform(in.begin(), in.end(), out.begin(), normalize_value);
    return PixelBuffer::from_float(src.width(), src.height(), src.channels(), Storage::UnitFloat, std::move(out));
}

PixelBuffer quantize(const PixelBuffer& src) {
    if (src.storage() != Storage::UnitFloat) throw Error(ErrorCode::WrongStorage, "quantize expects UnitFloat input");
    const auto in = src.floats();
    std::vector<std::uint8_t> out(in.size());
    std::transform(in.begin(), in.end(), out.begin(), [](float x) { return quantize_value(x); });
    return PixelBuffer::from_u8(src.width(), src.height(), src.channels(), std::move(out));
}

namespace {

PixelBuffer to_rgb(const PixelBuffer& src) {
    if (src.channels() == 3) return src;
    const auto in = src.u8();
    std::vector<std::uint8_t> out(in.size() * 3);
    for (std::size_t i = 0; i < in.size(); ++i) out[3 * i] = out[3 * i + 1] = out[3 * i + 2] = in[i];
    return PixelBuffer::from_u8(src.width(), src.height(), 3, std::move(out));
}

}  // namespace

PixelBuffer backbone_resize(const PixelBuffer& src, const BackboneSpec& spec,
                            std::optional<FilterKind> filter_override) {
    if (src.storage() != Storage::U8)
        throw Error(ErrorCode::WrongStorage,
                    "backbone input must be 8-bit quantized; got " + std::string(to_string(src.storage())));
    if (spec.input_resolution < 1) throw Error(ErrorCode::ZeroDimension, "backbone resolution must be >= 1");
    const FilterKind filter = filter_override.value_or(spec.friendly_filter);
    return resize(to_rgb(src), spec.input_resolution, spec.input_resolution, filter, true);
}

PixelBuffer backbone_prepare(const PixelBuffer& src, const BackboneSpec& spec,
                             std::optional<FilterKind> filter_override) {
    const PixelBuffer resized = backbone_resize(src, spec, filter_override);
    const auto in = resized.u8();
    std::vector<float> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        const std::size_t c = i % 3;
        out[i] = static_cast<float>(in[i] * spec.channel_scale[c] + spec.channel_offset[c]);
    }
    return PixelBuffer::from_float(resized.width(), resized.height(), 3, Storage::BackboneFloat, std::move(out));
}

}  // namespace genmetrics
