#pragma once

#include <cstdint>
#include <vector>

#include "pyrtex/common.hpp"

namespace pyrtex {

/// H x W x C raster of real-valued intensities, row-major interleaved.
/// Intensities are nominally normalized to [0,1]; signed intermediates
/// (Laplacian levels, detail layers) and HDR radiance maps may leave that
/// range, so the container itself does not clamp.
struct ImageBuf {
    int height = 0;
    int width = 0;
    int channels = 0;  // 1 (gray) or 3 (RGB)
    std::vector<double> data;

    ImageBuf() = default;
    ImageBuf(int h, int w, int c, double fill = 0.0);

    double& at(int y, int x, int c) {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    double at(int y, int x, int c) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }

    double* row(int y) { return data.data() + static_cast<size_t>(y) * width * channels; }
    const double* row(int y) const {
        return data.data() + static_cast<size_t>(y) * width * channels;
    }

    bool empty() const { return data.empty(); }
    size_t sample_count() const { return data.size(); }
    int long_axis() const { return height > width ? height : width; }
    bool same_shape(const ImageBuf& o) const {
        return height == o.height && width == o.width && channels == o.channels;
    }
};

// Per-sample clamp to [0,1].
ImageBuf clamp01(const ImageBuf& img);

struct Metric {
    enum class Kind { MSE, PSNR, MaxAbsDiff };
    Kind kind;
    double value;  // dB for PSNR; +infinity when the images are identical
};

// All metrics require identical shapes and are symmetric in their arguments.
Metric mse(const ImageBuf& a, const ImageBuf& b);
Metric psnr(const ImageBuf& a, const ImageBuf& b);
Metric max_abs_diff(const ImageBuf& a, const ImageBuf& b);

enum class TexturePattern { Checker, Stripes, NoiseDots };

/// Overlays a zero-mean pattern T in [-1,1] onto a structure-only image:
/// clamp01(structure + amplitude * T). Checker and stripes alternate sign in
/// period-sized blocks; noise-dots assigns each period-sized cell a seeded
/// uniform value. Deterministic in (pattern, amplitude, period, seed).
ImageBuf add_synthetic_texture(const ImageBuf& structure, TexturePattern pattern,
                               double amplitude, int period, uint32_t seed);

/// clamp01(img + n), n ~ N(0, sigma^2) i.i.d., deterministic per seed.
/// sigma must lie in [0, 0.1].
ImageBuf add_gaussian_noise(const ImageBuf& img, double sigma, uint32_t seed);

/// Seeded structure-only test image: a smooth background ramp plus a handful
/// of flat rectangles and discs with sharp edges, intensities in [0.15, 0.85].
/// Used by the benchmark, the embedded self test, and the test corpus.
ImageBuf make_structure_image(int height, int width, int channels, uint32_t seed);

}  // namespace pyrtex
