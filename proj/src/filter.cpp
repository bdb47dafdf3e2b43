#include "pyrtex/filter.hpp"

#include <cmath>

namespace pyrtex {

int nearest_odd(double x) {
    const int m = static_cast<int>(std::floor((x - 1.0) / 2.0 + 0.5));
    return 2 * m + 1;
}

ScaleSchedule make_schedule(const FilterParams& p, int depth) {
    if (depth < 1) throw contract_error("make_schedule: depth must be >= 1");
    if (!(p.sigma_s > 0.0) || !(p.sigma_r > 0.0)) {
        throw contract_error("make_schedule: sigma_s and sigma_r must be positive");
    }
    ScaleSchedule sched;
    sched.sigma_r = p.sigma_r;
    sched.levels.resize(static_cast<size_t>(depth));
    for (int k = 0; k < depth; ++k) {
        LevelParams& lvl = sched.levels[static_cast<size_t>(k)];
        lvl.sigma_s = p.sigma_s / std::ldexp(1.0, k);  // exact halving per level
        lvl.d_up = nearest_odd(std::max(lvl.sigma_s, 3.0));
        lvl.d_refine = nearest_odd(std::max(4.0 * lvl.sigma_s, 3.0));
    }
    return sched;
}

namespace {

ImageBuf add(const ImageBuf& a, const ImageBuf& b) {
    if (!a.same_shape(b)) throw contract_error("psu: image shapes differ");
    ImageBuf out = a;
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
    return out;
}

}  // namespace

ImageBuf psu_step(const ImageBuf& r_coarse, const ImageBuf& g_fine, const ImageBuf& l_fine,
                  const LevelParams& lvl, double sigma_r) {
    if (!g_fine.same_shape(l_fine)) {
        throw contract_error("psu_step: Gaussian and Laplacian levels differ in shape");
    }
    const ImageBuf hat = jbf_upsample(r_coarse, g_fine, {lvl.sigma_s, sigma_r, lvl.d_up});
    // The detail level is signed; the sum is filtered without clamping.
    return jbf(add(hat, l_fine), hat, {lvl.sigma_s, sigma_r, lvl.d_refine});
}

ImageBuf psu_step_laplacian_first(const ImageBuf& r_coarse, const ImageBuf& g_fine,
                                  const ImageBuf& l_fine, const LevelParams& lvl,
                                  double sigma_r) {
    if (!g_fine.same_shape(l_fine)) {
        throw contract_error("psu_step: Gaussian and Laplacian levels differ in shape");
    }
    const ImageBuf hat = jbf_upsample(r_coarse, g_fine, {lvl.sigma_s, sigma_r, lvl.d_up});
    return add(hat, jbf(l_fine, hat, {lvl.sigma_s, sigma_r, lvl.d_refine}));
}

ImageBuf pyramid_texture_filter(const ImageBuf& img, const FilterParams& p,
                                const LevelObserver& observe) {
    if (!(p.sigma_s > 0.0) || !(p.sigma_r > 0.0)) {
        throw contract_error("pyramid_texture_filter: sigma_s and sigma_r must be positive");
    }
    const GaussianPyramid gp = build_gaussian_pyramid(img, p.depth_override);
    const LaplacianPyramid lp = build_laplacian_pyramid(gp);
    const int depth = gp.depth();
    const ScaleSchedule sched = make_schedule(p, depth);

    ImageBuf r = gp.levels[static_cast<size_t>(depth)];
    if (observe) observe(depth, r);
    for (int k = depth - 1; k >= 0; --k) {
        const ImageBuf& g_fine = gp.levels[static_cast<size_t>(k)];
        const ImageBuf& l_fine = lp.levels[static_cast<size_t>(k)];
        const LevelParams& lvl = sched.levels[static_cast<size_t>(k)];
        r = p.variant == FilterVariant::LaplacianFirst
                ? psu_step_laplacian_first(r, g_fine, l_fine, lvl, p.sigma_r)
                : psu_step(r, g_fine, l_fine, lvl, p.sigma_r);
        if (observe) observe(k, r);
    }
    // Intermediates keep signed headroom; only the finest level is clamped.
    return clamp01(r);
}

}  // namespace pyrtex
