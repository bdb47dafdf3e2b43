#include "pyrtex/bilateral.hpp"

#include <cmath>
#include <vector>

#include "pyrtex/parallel.hpp"
#include "pyrtex/pyramid.hpp"

namespace pyrtex {

double range_weight(std::span<const double> a, std::span<const double> b, double sigma_r) {
    if (a.size() != b.size()) throw contract_error("range_weight: channel counts differ");
    double d2 = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        d2 += d * d;
    }
    return std::exp(-d2 / (2.0 * sigma_r * sigma_r));
}

namespace {

inline int clampi(int v, int lo, int hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

// Window loop with compile-time channel counts. Taps run row-major across the
// window; the weight sum accumulates in the same order as the samples, so the
// normalized result is a convex combination and constants survive exactly.
template <int CI, int CG>
void jbf_rows(const ImageBuf& input, const ImageBuf& guide, const BilateralParams& p,
              const std::vector<double>& spatial, ImageBuf& out, int y0, int y1) {
    const int h = input.height, w = input.width;
    const int r = p.window_d / 2;
    const int dsz = p.window_d;
    const double inv_two_sr2 = 1.0 / (2.0 * p.sigma_r * p.sigma_r);

    for (int y = y0; y < y1; ++y) {
        double* dst = out.row(y);
        const double* gcrow = guide.row(y);
        for (int x = 0; x < w; ++x) {
            const double* gp = gcrow + x * CG;
            double acc[CI] = {};
            double wsum = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                const int yy = clampi(y + dy, 0, h - 1);
                const double* grow = guide.row(yy);
                const double* irow = input.row(yy);
                const double* srow = spatial.data() + static_cast<size_t>(dy + r) * dsz;
                for (int dx = -r; dx <= r; ++dx) {
                    const int xx = clampi(x + dx, 0, w - 1);
                    const double* gq = grow + xx * CG;
                    double d2 = 0.0;
                    for (int c = 0; c < CG; ++c) {
                        const double d = gp[c] - gq[c];
                        d2 += d * d;
                    }
                    const double wgt = srow[dx + r] * std::exp(-d2 * inv_two_sr2);
                    wsum += wgt;
                    const double* iq = irow + xx * CI;
                    for (int c = 0; c < CI; ++c) acc[c] += wgt * iq[c];
                }
            }
            for (int c = 0; c < CI; ++c) dst[x * CI + c] = acc[c] / wsum;
        }
    }
}

}  // namespace

ImageBuf jbf(const ImageBuf& input, const ImageBuf& guide, const BilateralParams& p) {
    if (input.height != guide.height || input.width != guide.width) {
        throw contract_error("jbf: input and guide dimensions differ");
    }
    if (!(p.sigma_s > 0.0) || !(p.sigma_r > 0.0)) {
        throw contract_error("jbf: sigma_s and sigma_r must be positive");
    }
    if (p.window_d < 3 || p.window_d % 2 == 0) {
        throw contract_error("jbf: window_d must be odd and >= 3");
    }

    const int r = p.window_d / 2;
    std::vector<double> spatial(static_cast<size_t>(p.window_d) * p.window_d);
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
            spatial[static_cast<size_t>(dy + r) * p.window_d + (dx + r)] =
                std::exp(-(dx * dx + dy * dy) / (2.0 * p.sigma_s * p.sigma_s));
        }
    }

    ImageBuf out(input.height, input.width, input.channels);
    auto body = [&](int y0, int y1) {
        if (input.channels == 1 && guide.channels == 1) {
            jbf_rows<1, 1>(input, guide, p, spatial, out, y0, y1);
        } else if (input.channels == 1 && guide.channels == 3) {
            jbf_rows<1, 3>(input, guide, p, spatial, out, y0, y1);
        } else if (input.channels == 3 && guide.channels == 1) {
            jbf_rows<3, 1>(input, guide, p, spatial, out, y0, y1);
        } else {
            jbf_rows<3, 3>(input, guide, p, spatial, out, y0, y1);
        }
    };
    parallel_rows(input.height, body);
    return out;
}

ImageBuf jbf_upsample(const ImageBuf& low, const ImageBuf& guide_fine, const BilateralParams& p) {
    if (low.height != (guide_fine.height + 1) / 2 || low.width != (guide_fine.width + 1) / 2) {
        throw contract_error("jbf_upsample: low-res image must be the ceil-half of the guide");
    }
    return jbf(upsample_bilinear(low, guide_fine.height, guide_fine.width), guide_fine, p);
}

}  // namespace pyrtex
