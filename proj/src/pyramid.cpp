#include "pyrtex/pyramid.hpp"

#include <cmath>

#include "pyrtex/parallel.hpp"

namespace pyrtex {

std::array<double, 5> gaussian_kernel_1d() {
    std::array<double, 5> w{};
    double sum = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double x = i - 2;
        w[i] = std::exp(-0.5 * x * x);
        sum += w[i];
    }
    for (double& v : w) v /= sum;
    return w;
}

std::array<double, 25> gaussian_kernel_5x5() {
    const auto k = gaussian_kernel_1d();
    std::array<double, 25> grid{};
    for (int y = 0; y < 5; ++y) {
        for (int x = 0; x < 5; ++x) grid[y * 5 + x] = k[y] * k[x];
    }
    return grid;
}

namespace {

inline int clampi(int v, int lo, int hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

// One separable pass along x (horizontal = true) or y. Normalizes by the tap
// sum accumulated in the same order as the samples, which lets constants pass
// through exactly for power-of-two intensities.
ImageBuf smooth_pass(const ImageBuf& img, bool horizontal) {
    const auto k = gaussian_kernel_1d();
    ImageBuf out(img.height, img.width, img.channels);
    const int ch = img.channels;
    double tap_sum = 0.0;
    for (int i = 0; i < 5; ++i) tap_sum += k[i];

    parallel_rows(img.height, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            double* dst = out.row(y);
            for (int x = 0; x < img.width; ++x) {
                for (int c = 0; c < ch; ++c) {
                    double acc = 0.0;
                    for (int i = -2; i <= 2; ++i) {
                        const int yy = horizontal ? y : clampi(y + i, 0, img.height - 1);
                        const int xx = horizontal ? clampi(x + i, 0, img.width - 1) : x;
                        acc += k[i + 2] * img.at(yy, xx, c);
                    }
                    dst[x * ch + c] = acc / tap_sum;
                }
            }
        }
    });
    return out;
}

ImageBuf resize_bilinear(const ImageBuf& src, int th, int tw) {
    ImageBuf out(th, tw, src.channels);
    const int ch = src.channels;
    const double sy_scale = static_cast<double>(src.height) / th;
    const double sx_scale = static_cast<double>(src.width) / tw;

    parallel_rows(th, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            const double sy = (y + 0.5) * sy_scale - 0.5;
            int iy = static_cast<int>(std::floor(sy));
            const double ty = sy - iy;
            const int iy0 = clampi(iy, 0, src.height - 1);
            const int iy1 = clampi(iy + 1, 0, src.height - 1);
            const double* r0 = src.row(iy0);
            const double* r1 = src.row(iy1);
            double* dst = out.row(y);
            for (int x = 0; x < tw; ++x) {
                const double sx = (x + 0.5) * sx_scale - 0.5;
                int ix = static_cast<int>(std::floor(sx));
                const double tx = sx - ix;
                const int ix0 = clampi(ix, 0, src.width - 1);
                const int ix1 = clampi(ix + 1, 0, src.width - 1);
                for (int c = 0; c < ch; ++c) {
                    // lerp form a + t*(b - a) keeps constants exact
                    const double a = r0[ix0 * ch + c];
                    const double b = r0[ix1 * ch + c];
                    const double top = a + tx * (b - a);
                    const double a2 = r1[ix0 * ch + c];
                    const double b2 = r1[ix1 * ch + c];
                    const double bot = a2 + tx * (b2 - a2);
                    dst[x * ch + c] = top + ty * (bot - top);
                }
            }
        }
    });
    return out;
}

ImageBuf subtract(const ImageBuf& a, const ImageBuf& b) {
    ImageBuf out = a;
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
    return out;
}

ImageBuf add(const ImageBuf& a, const ImageBuf& b) {
    ImageBuf out = a;
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
    return out;
}

}  // namespace

ImageBuf gaussian_smooth_5x5(const ImageBuf& img) {
    if (img.empty()) throw contract_error("gaussian_smooth_5x5: empty image");
    return smooth_pass(smooth_pass(img, true), false);
}

ImageBuf downsample_half(const ImageBuf& img) {
    if (img.height < 2 || img.width < 2) {
        throw contract_error("downsample_half: both dimensions must be >= 2");
    }
    const ImageBuf smooth = gaussian_smooth_5x5(img);
    return resize_bilinear(smooth, (img.height + 1) / 2, (img.width + 1) / 2);
}

ImageBuf upsample_bilinear(const ImageBuf& img, int target_h, int target_w) {
    if (img.empty()) throw contract_error("upsample_bilinear: empty image");
    if (target_h < img.height || target_w < img.width) {
        throw contract_error("upsample_bilinear: target must not shrink the image");
    }
    return resize_bilinear(img, target_h, target_w);
}

GaussianPyramid build_gaussian_pyramid(const ImageBuf& img, std::optional<int> depth_override) {
    if (img.empty()) throw contract_error("build_gaussian_pyramid: empty image");
    int depth;
    if (depth_override) {
        if (*depth_override < 1) {
            throw contract_error("build_gaussian_pyramid: depth_override must be >= 1");
        }
        depth = *depth_override;
    } else {
        if (img.long_axis() < 64) {
            throw contract_error(
                "build_gaussian_pyramid: long axis < 64; pass depth_override to force a depth");
        }
        depth = 0;
        int axis = img.long_axis();
        while (axis >= 64) {
            axis = (axis + 1) / 2;
            ++depth;
        }
        // axis now lies in [32, 64)
    }

    GaussianPyramid gp;
    gp.levels.reserve(static_cast<size_t>(depth) + 1);
    gp.levels.push_back(img);
    for (int k = 0; k < depth; ++k) {
        gp.levels.push_back(downsample_half(gp.levels.back()));
    }
    return gp;
}

LaplacianPyramid build_laplacian_pyramid(const GaussianPyramid& gp) {
    if (gp.levels.empty()) throw contract_error("build_laplacian_pyramid: empty pyramid");
    LaplacianPyramid lp;
    lp.levels.reserve(gp.levels.size());
    for (size_t k = 0; k + 1 < gp.levels.size(); ++k) {
        const ImageBuf& fine = gp.levels[k];
        lp.levels.push_back(
            subtract(fine, resize_bilinear(gp.levels[k + 1], fine.height, fine.width)));
    }
    lp.levels.push_back(gp.levels.back());
    return lp;
}

ImageBuf collapse(const LaplacianPyramid& lp) {
    if (lp.levels.empty()) throw contract_error("collapse: empty pyramid");
    ImageBuf acc = lp.levels.back();
    for (int k = static_cast<int>(lp.levels.size()) - 2; k >= 0; --k) {
        const ImageBuf& level = lp.levels[k];
        acc = add(level, resize_bilinear(acc, level.height, level.width));
    }
    return acc;
}

}  // namespace pyrtex
