#pragma once

#include <vector>

#include "genmetrics/pixel_buffer.hpp"

namespace genmetrics {

// Keys bicubic parameter, matching PIL.BICUBIC.
inline constexpr double kBicubicA = -0.5;
inline constexpr int kLanczosLobes = 3;

// Half-width of the kernel at unit scale.
double kernel_support(FilterKind filter) noexcept;
double kernel_value(FilterKind filter, double t) noexcept;

// Per-output-pixel taps along one axis. Output pixel i reads source indices
// [first[i], first[i] + count[i]) with weights taps(i, 0..count[i]).
struct AxisWeights {
    int in_size = 0;
    int out_size = 0;
    int stride = 0;  // allocated taps per output pixel
    std::vector<int> first;
    std::vector<int> count;
    std::vector<double> weights;  // out_size * stride

    double tap(int out_index, int j) const { return weights[static_cast<std::size_t>(out_index) * stride + j]; }
};

// Builds normalized taps. When antialias is set and the axis shrinks
// (scale = in/out > 1) the kernel is stretched by the scale factor; taps
// falling outside the source are dropped and the rest renormalized.
AxisWeights compute_axis_weights(int in_size, int out_size, FilterKind filter, bool antialias);

// Separable resample: horizontal pass, then vertical pass, 64-bit
// accumulation, rounding/clamping to the source storage after each pass.
// Axes whose size is unchanged are copied through.
PixelBuffer resize(const PixelBuffer& src, int out_w, int out_h, FilterKind filter, bool antialias = true);

}  // namespace genmetrics
