#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pyrtex/bilateral.hpp"
#include "pyrtex/image.hpp"
#include "pyrtex/pyramid.hpp"

namespace pyrtex {

enum class FilterVariant {
    Standard,        // detail is folded in before the refine filter
    LaplacianFirst,  // detail is filtered alone, then added back (weaker texture removal)
};

/// User-facing smoothing parameters. The recommended envelope is
/// sigma_s in [3, 15] and sigma_r in [0.02, 0.09]; the library only requires
/// positivity so callers can explore outside it.
struct FilterParams {
    double sigma_s = 5.0;
    double sigma_r = 0.07;
    std::optional<int> depth_override;  // bypass the [32,64) coarsest-level rule, >= 1
    FilterVariant variant = FilterVariant::Standard;
};

struct LevelParams {
    double sigma_s;  // sigma_s / 2^k for output level k
    int d_up;        // window for the guided upsample stage
    int d_refine;    // window for the detail-reinjection stage
};

/// Per-level parameters derived from FilterParams: sigma_s halves per level,
/// windows are the odd values nearest max(sigma_s_k, 3) and
/// max(4 sigma_s_k, 3), and sigma_r is shared by every level.
struct ScaleSchedule {
    std::vector<LevelParams> levels;  // index = output pyramid level k, size = depth
    double sigma_r;
};

// Nearest odd integer; arguments exactly halfway between two odds round up.
int nearest_odd(double x);

ScaleSchedule make_schedule(const FilterParams& p, int depth);

/// One structure-aware upsampling step from a coarse smoothing result to the
/// next finer scale: joint-bilateral-upsample r_coarse under g_fine, add the
/// signed detail level l_fine, and smooth the sum guided by the texture-free
/// upsample. The result is not clamped; pyramid_texture_filter clamps once at
/// the finest level.
ImageBuf psu_step(const ImageBuf& r_coarse, const ImageBuf& g_fine, const ImageBuf& l_fine,
                  const LevelParams& lvl, double sigma_r);

/// Alternative detail handling: filter l_fine alone under the upsampled
/// guidance and add the result back. Preserves structure but leaves more
/// texture residual than psu_step.
ImageBuf psu_step_laplacian_first(const ImageBuf& r_coarse, const ImageBuf& g_fine,
                                  const ImageBuf& l_fine, const LevelParams& lvl,
                                  double sigma_r);

/// Called with each intermediate result, coarsest first (level = N down to 0).
using LevelObserver = std::function<void(int level, const ImageBuf& r)>;

/// Structure-preserving texture smoothing: build Gaussian/Laplacian pyramids,
/// seed with the coarsest Gaussian level, and upsample it step by step under
/// pyramid guidance back to full resolution. Output has the input's shape and
/// values clamped to [0,1].
ImageBuf pyramid_texture_filter(const ImageBuf& img, const FilterParams& p,
                                const LevelObserver& observe = {});

}  // namespace pyrtex
