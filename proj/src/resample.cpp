#include "genmetrics/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "genmetrics/error.hpp"

namespace genmetrics {

namespace {

double sinc(double x) noexcept {
    if (x == 0.0) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

}  // namespace

double kernel_support(FilterKind filter) noexcept {
    switch (filter) {
        case FilterKind::Nearest: return 0.5;
        case FilterKind::Bilinear: return 1.0;
        case FilterKind::Bicubic: return 2.0;
        case FilterKind::Lanczos: return static_cast<double>(kLanczosLobes);
    }
    return 0.0;
}

double kernel_value(FilterKind filter, double t) noexcept {
    const double x = std::abs(t);
    switch (filter) {
        case FilterKind::Nearest:
            return t > -0.5 && t <= 0.5 ? 1.0 : 0.0;
        case FilterKind::Bilinear:
            return x < 1.0 ? 1.0 - x : 0.0;
        case FilterKind::Bicubic: {
            constexpr double a = kBicubicA;
            if (x < 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
            if (x < 2.0) return (((x - 5.0) * x + 8.0) * x - 4.0) * a;
            return 0.0;
        }
        case FilterKind::Lanczos:
            return x < kLanczosLobes ? sinc(x) * sinc(x / kLanczosLobes) : 0.0;
    }
    return 0.0;
}

AxisWeights compute_axis_weights(int in_size, int out_size, FilterKind filter, bool antialias) {
    if (in_size < 1 || out_size < 1) throw Error(ErrorCode::ZeroDimension, "axis size must be >= 1");
    AxisWeights w;
    w.in_size = in_size;
    w.out_size = out_size;
    w.first.resize(out_size);
    w.count.resize(out_size);

    const double scale = static_cast<double>(in_size) / out_size;

    if (filter == FilterKind::Nearest) {
        w.stride = 1;
        w.weights.assign(out_size, 1.0);
        for (int i = 0; i < out_size; ++i) {
            const int src = static_cast<int>(std::floor((i + 0.5) * scale));
            w.first[i] = std::clamp(src, 0, in_size - 1);
            w.count[i] = 1;
        }
        return w;
    }

    const double filter_scale = antialias ? std::max(scale, 1.0) : 1.0;
    const double support = kernel_support(filter) * filter_scale;
    const double inv_filter_scale = 1.0 / filter_scale;
    w.stride = static_cast<int>(std::ceil(support)) * 2 + 1;
    w.weights.assign(static_cast<std::size_t>(out_size) * w.stride, 0.0);

    for (int i = 0; i < out_size; ++i) {
        const double center = (i + 0.5) * scale;
        const int lo = std::max(static_cast<int>(center - support + 0.5), 0);
        const int hi = std::min(static_cast<int>(center + support + 0.5), in_size);
        const int n = std::min(hi - lo, w.stride);
        double total = 0.0;
        double* taps = &w.weights[static_cast<std::size_t>(i) * w.stride];
        for (int j = 0; j < n; ++j) {
            taps[j] = kernel_value(filter, (j + lo - center + 0.5) * inv_filter_scale);
            total += taps[j];
        }
        if (total != 0.0)
            for (int j = 0; j < n; ++j) taps[j] /= total;
        w.first[i] = lo;
        w.count[i] = std::max(n, 0);
    }
    return w;
}

namespace {

// Resamples along x for every row of a (w, h, c) double plane.
std::vector<double> pass_horizontal(const std::vector<double>& in, int w, int h, int c, const AxisWeights& aw) {
    const int ow = aw.out_size;
    std::vector<double> out(static_cast<std::size_t>(ow) * h * c, 0.0);
    for (int y = 0; y < h; ++y) {
        const double* row = &in[static_cast<std::size_t>(y) * w * c];
        double* orow = &out[static_cast<std::size_t>(y) * ow * c];
        for (int x = 0; x < ow; ++x) {
            for (int k = 0; k < c; ++k) {
                double acc = 0.0;
                for (int j = 0; j < aw.count[x]; ++j)
                    acc += row[static_cast<std::size_t>(aw.first[x] + j) * c + k] * aw.tap(x, j);
                orow[static_cast<std::size_t>(x) * c + k] = acc;
            }
        }
    }
    return out;
}

std::vector<double> pass_vertical(const std::vector<double>& in, int w, int c, const AxisWeights& aw) {
    const int oh = aw.out_size;
    const std::size_t stride = static_cast<std::size_t>(w) * c;
    std::vector<double> out(stride * oh, 0.0);
    for (int y = 0; y < oh; ++y) {
        double* orow = &out[static_cast<std::size_t>(y) * stride];
        for (int j = 0; j < aw.count[y]; ++j) {
            const double t = aw.tap(y, j);
            const double* row = &in[static_cast<std::size_t>(aw.first[y] + j) * stride];
            for (std::size_t i = 0; i < stride; ++i) orow[i] += row[i] * t;
        }
    }
    return out;
}

}  // namespace

PixelBuffer resize(const PixelBuffer& src, int out_w, int out_h, FilterKind filter, bool antialias) {
    if (out_w < 1 || out_h < 1) throw Error(ErrorCode::ZeroDimension, "output size must be >= 1x1");
    if (out_w == src.width() && out_h == src.height()) return src;

    const int w = src.width(), h = src.height(), c = src.channels();
    std::vector<double> plane(src.size());
    if (src.is_u8()) {
        const auto v = src.u8();
        std::copy(v.begin(), v.end(), plane.begin());
    } else {
        const auto v = src.floats();
        std::copy(v.begin(), v.end(), plane.begin());
    }

    // The intermediate image is held at the source's storage precision, as
    // the reference imaging library does: 8-bit rounding for U8, range
    // clamping for UnitFloat. Without it, Bicubic/Lanczos overshoot carries
    // into the second pass and upscaled edges drift by tens of levels.
    int cur_w = w;
    if (out_w != w) {
        plane = pass_horizontal(plane, w, h, c, compute_axis_weights(w, out_w, filter, antialias));
        cur_w = out_w;
        if (out_h != h) {
            if (src.is_u8())
                for (auto& v : plane) v = std::clamp(std::floor(v + 0.5), 0.0, 255.0);
            else if (src.storage() == Storage::UnitFloat)
                for (auto& v : plane) v = std::clamp(v, -1.0, 1.0);
        }
    }
    if (out_h != h) plane = pass_vertical(plane, cur_w, c, compute_axis_weights(h, out_h, filter, antialias));

    if (src.is_u8()) {
        std::vector<std::uint8_t> out(plane.size());
        std::transform(plane.begin(), plane.end(), out.begin(), [](double v) {
            return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
        });
        return PixelBuffer::from_u8(out_w, out_h, c, std::move(out));
    }
    const bool bounded = src.storage() == Storage::UnitFloat;
    std::vector<float> out(plane.size());
    std::transform(plane.begin(), plane.end(), out.begin(), [bounded](double v) {
        return static_cast<float>(bounded ? std::clamp(v, -1.0, 1.0) : v);
    });
    return PixelBuffer::from_float(out_w, out_h, c, src.storage(), std::move(out));
}

}  // namespace genmetrics
