#pragma once

#include "pyrtex/filter.hpp"
#include "pyrtex/image.hpp"

namespace pyrtex {

enum class Application { DetailEnhance, Abstraction, Tonemap, InverseHalftone, LdrEnhance };

struct AppConfig {
    Application app = Application::DetailEnhance;
    FilterParams filter;
    double boost_alpha = 2.5;             // detail enhancement multiplier, >= 0
    double gamma = 0.7;                   // LDR enhancement exponent, in (0,1)
    double tonemap_target_contrast = 5.0; // log10 dynamic range allowed for the base layer
};

/// Base + boosted detail: clamp01((1-alpha) * smoothed + alpha * img).
/// alpha = 1 reproduces the input exactly (pre-clamp), alpha = 0 the base.
ImageBuf detail_enhance(const ImageBuf& img, const AppConfig& cfg);

/// Pure smoothing; identical to pyramid_texture_filter with cfg.filter.
ImageBuf abstraction(const ImageBuf& img, const AppConfig& cfg);

/// Base/detail tone mapping in log10 luminance: the smoothed base is range-
/// compressed to at most tonemap_target_contrast decades (never expanded) and
/// anchored so the brightest pixel maps to 1; the detail layer is carried over
/// unchanged and colors are reattached by luminance ratio. Input is positive
/// radiance (any channel count 1 or 3, luminance > 0 everywhere).
ImageBuf tonemap(const ImageBuf& hdr, const AppConfig& cfg);

/// Halftone dots are texture; identical to pyramid_texture_filter.
ImageBuf inverse_halftone(const ImageBuf& img, const AppConfig& cfg);

/// Retinex-style low-light enhancement: smooth the max-channel illumination
/// map, floor it to [1e-3, 1], and divide: clamp01(img / L_s^gamma).
ImageBuf ldr_enhance(const ImageBuf& img, const AppConfig& cfg);

}  // namespace pyrtex
