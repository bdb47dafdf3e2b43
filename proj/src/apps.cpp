#include "pyrtex/apps.hpp"

#include <algorithm>
#include <cmath>

namespace pyrtex {

ImageBuf detail_enhance(const ImageBuf& img, const AppConfig& cfg) {
    if (cfg.boost_alpha < 0.0) throw contract_error("detail_enhance: alpha must be >= 0");
    const ImageBuf base = pyramid_texture_filter(img, cfg.filter);
    const double a = cfg.boost_alpha;
    ImageBuf out = img;
    // (1-a)*base + a*img == base + a*(img - base); this form is exact at both
    // a = 0 (the base) and a = 1 (the input).
    for (size_t i = 0; i < out.data.size(); ++i) {
        out.data[i] = clamp01((1.0 - a) * base.data[i] + a * img.data[i]);
    }
    return out;
}

ImageBuf abstraction(const ImageBuf& img, const AppConfig& cfg) {
    return pyramid_texture_filter(img, cfg.filter);
}

ImageBuf tonemap(const ImageBuf& hdr, const AppConfig& cfg) {
    if (!(cfg.tonemap_target_contrast > 0.0)) {
        throw contract_error("tonemap: target contrast must be positive");
    }
    const int h = hdr.height, w = hdr.width;

    ImageBuf lum(h, w, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double v = hdr.channels == 3
                                 ? 0.2126 * hdr.at(y, x, 0) + 0.7152 * hdr.at(y, x, 1) +
                                       0.0722 * hdr.at(y, x, 2)
                                 : hdr.at(y, x, 0);
            if (!(v > 0.0)) throw contract_error("tonemap: radiance must be positive everywhere");
            lum.at(y, x, 0) = v;
        }
    }

    ImageBuf loglum = lum;
    for (double& v : loglum.data) v = std::log10(v);
    const auto [ll_min_it, ll_max_it] = std::minmax_element(loglum.data.begin(), loglum.data.end());
    const double ll_min = *ll_min_it, ll_max = *ll_max_it;
    const double ll_range = ll_max - ll_min;

    // Smooth the base layer in normalized log luminance.
    ImageBuf norm = loglum;
    if (ll_range > 0.0) {
        for (double& v : norm.data) v = (v - ll_min) / ll_range;
    } else {
        for (double& v : norm.data) v = 0.0;
    }
    ImageBuf base = pyramid_texture_filter(norm, cfg.filter);
    for (double& v : base.data) v = v * ll_range + ll_min;

    // Compress the base to at most the target range (never expand) and shift
    // so the brightest pixel maps to luminance 1; detail rides through as is.
    const auto [b_min_it, b_max_it] = std::minmax_element(base.data.begin(), base.data.end());
    const double b_range = *b_max_it - *b_min_it;
    const double scale = b_range > cfg.tonemap_target_contrast
                             ? cfg.tonemap_target_contrast / b_range
                             : 1.0;
    const double b_max = *b_max_it;

    ImageBuf out_ll(h, w, 1);
    double peak = -1e300;
    for (size_t i = 0; i < out_ll.data.size(); ++i) {
        const double detail = loglum.data[i] - base.data[i];
        out_ll.data[i] = (base.data[i] - b_max) * scale + detail;
        peak = std::max(peak, out_ll.data[i]);
    }

    ImageBuf out(h, w, hdr.channels);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double out_lum = std::pow(10.0, out_ll.at(y, x, 0) - peak);
            const double ratio = out_lum / lum.at(y, x, 0);
            for (int c = 0; c < hdr.channels; ++c) {
                out.at(y, x, c) = clamp01(hdr.at(y, x, c) * ratio);
            }
        }
    }
    return out;
}

ImageBuf inverse_halftone(const ImageBuf& img, const AppConfig& cfg) {
    return pyramid_texture_filter(img, cfg.filter);
}

ImageBuf ldr_enhance(const ImageBuf& img, const AppConfig& cfg) {
    if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) {
        throw contract_error("ldr_enhance: gamma must lie in (0,1)");
    }
    const int h = img.height, w = img.width;

    ImageBuf illum(h, w, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double m = img.at(y, x, 0);
            for (int c = 1; c < img.channels; ++c) m = std::max(m, img.at(y, x, c));
            illum.at(y, x, 0) = m;
        }
    }

    ImageBuf smoothed = pyramid_texture_filter(illum, cfg.filter);
    constexpr double kFloor = 1e-3;  // avoids division blow-up on black pixels
    for (double& v : smoothed.data) v = std::clamp(v, kFloor, 1.0);

    ImageBuf out(h, w, img.channels);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double divisor = std::pow(smoothed.at(y, x, 0), cfg.gamma);
            for (int c = 0; c < img.channels; ++c) {
                out.at(y, x, c) = clamp01(img.at(y, x, c) / divisor);
            }
        }
    }
    return out;
}

}  // namespace pyrtex
