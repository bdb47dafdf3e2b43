#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pyrtex/image.hpp"

namespace pyrtex {

// 1-D discrete Gaussian exp(-x^2/2), x in {-2..2}, normalized to sum 1.
std::array<double, 5> gaussian_kernel_1d();

// Row-major outer product of gaussian_kernel_1d with itself; sums to 1.
std::array<double, 25> gaussian_kernel_5x5();

// 5x5 Gaussian smoothing with replicate-edge padding. Each pass normalizes by
// the accumulated tap sum, so constants pass through unchanged.
ImageBuf gaussian_smooth_5x5(const ImageBuf& img);

// Smooth with gaussian_smooth_5x5, then bilinear-resample to
// (ceil(h/2), ceil(w/2)). Both dims must be >= 2.
ImageBuf downsample_half(const ImageBuf& img);

// Bilinear resampling with half-pixel-aligned coordinates
// (src = (dst + 0.5) * src_size/dst_size - 0.5, clamped at borders).
// Target dims must be >= source dims; equal dims reproduce the input exactly.
ImageBuf upsample_bilinear(const ImageBuf& img, int target_h, int target_w);

/// Levels G_0..G_N; G_0 is the source image, each subsequent level is its
/// ceil-halved predecessor. Unless the depth was overridden, the long axis of
/// G_N lies in [32, 64).
struct GaussianPyramid {
    std::vector<ImageBuf> levels;
    int depth() const { return static_cast<int>(levels.size()) - 1; }
};

/// Levels L_0..L_N with L_k = G_k - upsample(G_{k+1}) for k < N and L_N = G_N.
/// Difference levels are signed and stored unclamped.
struct LaplacianPyramid {
    std::vector<ImageBuf> levels;
    int depth() const { return static_cast<int>(levels.size()) - 1; }
};

/// Without an override the depth is the number of halvings until the long
/// axis first lands in [32, 64); images with a long axis below 64 then need
/// depth_override (>= 1).
GaussianPyramid build_gaussian_pyramid(const ImageBuf& img,
                                       std::optional<int> depth_override = std::nullopt);

LaplacianPyramid build_laplacian_pyramid(const GaussianPyramid& gp);

// Reconstructs G_0 by recursively adding upsampled partial sums; exact up to
// floating-point error.
ImageBuf collapse(const LaplacianPyramid& lp);

}  // namespace pyrtex
