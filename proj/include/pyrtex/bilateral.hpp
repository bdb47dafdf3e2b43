#pragma once

#include <span>

#include "pyrtex/image.hpp"

namespace pyrtex {

struct BilateralParams {
    double sigma_s;  // spatial stddev, pixels, > 0
    double sigma_r;  // range stddev, intensity, > 0
    int window_d;    // square window side, odd, >= 3
};

// Shared range weight: exp(-||a-b||^2 / (2 sigma_r^2)), one scalar for all
// channels, with the Euclidean distance taken over the full color vector.
double range_weight(std::span<const double> a, std::span<const double> b, double sigma_r);

/// Joint bilateral filter. Each output sample is the normalized weighted
/// average of input samples over the d x d window (replicate padding), with
/// spatial Gaussian weights on pixel distance and the shared range weight on
/// guide-color distance. Input and guide must share dimensions; channel
/// counts may differ (range weights come from the guide).
ImageBuf jbf(const ImageBuf& input, const ImageBuf& guide, const BilateralParams& p);

/// Joint bilateral upsampling across one pyramid step: bilinear-upsample
/// `low` to the guide's resolution, then jbf against the fine guide. `low`
/// must be the ceil-half of `guide_fine` per axis.
ImageBuf jbf_upsample(const ImageBuf& low, const ImageBuf& guide_fine, const BilateralParams& p);

}  // namespace pyrtex
