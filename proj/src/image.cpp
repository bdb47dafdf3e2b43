#include "pyrtex/image.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace pyrtex {

ImageBuf::ImageBuf(int h, int w, int c, double fill)
    : height(h), width(w), channels(c) {
    if (h < 1 || w < 1) throw contract_error("ImageBuf: dimensions must be >= 1");
    if (c != 1 && c != 3) throw contract_error("ImageBuf: channels must be 1 or 3");
    data.assign(static_cast<size_t>(h) * w * c, fill);
}

ImageBuf clamp01(const ImageBuf& img) {
    ImageBuf out = img;
    for (double& v : out.data) v = clamp01(v);
    return out;
}

static void require_same_shape(const ImageBuf& a, const ImageBuf& b, const char* op) {
    if (!a.same_shape(b)) throw contract_error(std::string(op) + ": image shapes differ");
}

Metric mse(const ImageBuf& a, const ImageBuf& b) {
    require_same_shape(a, b, "mse");
    double acc = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        acc += d * d;
    }
    return {Metric::Kind::MSE, acc / static_cast<double>(a.data.size())};
}

Metric psnr(const ImageBuf& a, const ImageBuf& b) {
    const double m = mse(a, b).value;
    if (m <= 0.0) return {Metric::Kind::PSNR, std::numeric_limits<double>::infinity()};
    return {Metric::Kind::PSNR, 10.0 * std::log10(1.0 / m)};
}

Metric max_abs_diff(const ImageBuf& a, const ImageBuf& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    }
    return {Metric::Kind::MaxAbsDiff, m};
}

ImageBuf add_synthetic_texture(const ImageBuf& structure, TexturePattern pattern,
                               double amplitude, int period, uint32_t seed) {
    if (!(amplitude > 0.0 && amplitude <= 0.5)) {
        throw contract_error("add_synthetic_texture: amplitude must be in (0, 0.5]");
    }
    if (period < 2) throw contract_error("add_synthetic_texture: period must be >= 2");

    const int cells_y = (structure.height + period - 1) / period;
    const int cells_x = (structure.width + period - 1) / period;

    // Noise-dots: one uniform value in [-1,1] per period-sized cell, row-major.
    std::vector<double> cell_values;
    if (pattern == TexturePattern::NoiseDots) {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        cell_values.resize(static_cast<size_t>(cells_y) * cells_x);
        for (double& v : cell_values) v = uni(rng);
    }

    ImageBuf out = structure;
    for (int y = 0; y < structure.height; ++y) {
        for (int x = 0; x < structure.width; ++x) {
            double t = 0.0;
            switch (pattern) {
                case TexturePattern::Checker:
                    t = ((y / period + x / period) % 2 == 0) ? 1.0 : -1.0;
                    break;
                case TexturePattern::Stripes:
                    t = ((x / period) % 2 == 0) ? 1.0 : -1.0;
                    break;
                case TexturePattern::NoiseDots:
                    t = cell_values[static_cast<size_t>(y / period) * cells_x + x / period];
                    break;
            }
            for (int c = 0; c < structure.channels; ++c) {
                out.at(y, x, c) = clamp01(structure.at(y, x, c) + amplitude * t);
            }
        }
    }
    return out;
}

ImageBuf add_gaussian_noise(const ImageBuf& img, double sigma, uint32_t seed) {
    if (sigma < 0.0 || sigma > 0.1) {
        throw contract_error("add_gaussian_noise: sigma must be in [0, 0.1]");
    }
    ImageBuf out = img;
    if (sigma == 0.0) {
        for (double& v : out.data) v = clamp01(v);
        return out;
    }
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    for (double& v : out.data) v = clamp01(v + gauss(rng));
    return out;
}

ImageBuf make_structure_image(int height, int width, int channels, uint32_t seed) {
    ImageBuf img(height, width, channels);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    // Smooth background: a tilted ramp between two seeded intensity levels.
    const double lo = 0.15 + 0.2 * uni(rng);
    const double hi = 0.85 - 0.2 * uni(rng);
    const double angle = 2.0 * 3.14159265358979323846 * uni(rng);
    const double dx = std::cos(angle), dy = std::sin(angle);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double u = (dx * x / width + dy * y / height + 1.0) * 0.5;
            const double v = lo + (hi - lo) * u;
            for (int c = 0; c < channels; ++c) img.at(y, x, c) = v;
        }
    }

    // Flat shapes with sharp edges: rectangles and discs at seeded positions.
    const int shapes = 4 + static_cast<int>(uni(rng) * 4.0);
    for (int s = 0; s < shapes; ++s) {
        double color[3];
        color[0] = 0.15 + 0.7 * uni(rng);
        color[1] = channels == 3 ? 0.15 + 0.7 * uni(rng) : color[0];
        color[2] = channels == 3 ? 0.15 + 0.7 * uni(rng) : color[0];
        const double cx = uni(rng) * width;
        const double cy = uni(rng) * height;
        const double rx = (0.08 + 0.17 * uni(rng)) * width;
        const double ry = (0.08 + 0.17 * uni(rng)) * height;
        const bool disc = uni(rng) < 0.5;
        const int y0 = std::max(0, static_cast<int>(cy - ry));
        const int y1 = std::min(height, static_cast<int>(cy + ry) + 1);
        const int x0 = std::max(0, static_cast<int>(cx - rx));
        const int x1 = std::min(width, static_cast<int>(cx + rx) + 1);
        for (int y = y0; y < y1; ++y) {
            for (int x = x0; x < x1; ++x) {
                if (disc) {
                    const double ex = (x - cx) / rx, ey = (y - cy) / ry;
                    if (ex * ex + ey * ey > 1.0) continue;
                }
                for (int c = 0; c < channels; ++c) img.at(y, x, c) = color[c];
            }
        }
    }
    return img;
}

}  // namespace pyrtex
