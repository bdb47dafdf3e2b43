#include <cmath>
#include <vector>

#include "doctest.h"
#include "pyrtex/filter.hpp"
#include "support/corpus.hpp"

using namespace pyrtex;

TEST_SUITE_BEGIN("filter");

TEST_CASE("nearest_odd rounds ties upward") {
    CHECK(nearest_odd(3.0) == 3);
    CHECK(nearest_odd(5.0) == 5);
    CHECK(nearest_odd(4.0) == 5);    // tie between 3 and 5
    CHECK(nearest_odd(10.0) == 11);  // tie between 9 and 11
    CHECK(nearest_odd(20.0) == 21);
    CHECK(nearest_odd(16.0) == 17);
    CHECK(nearest_odd(3.9) == 3);
    CHECK(nearest_odd(4.1) == 5);
    CHECK(nearest_odd(2.5) == 3);
}

TEST_CASE("schedule halves sigma and derives window sizes") {
    FilterParams p;  // sigma_s = 5, sigma_r = 0.07
    const ScaleSchedule s = make_schedule(p, 3);
    REQUIRE(s.levels.size() == 3);
    CHECK(s.sigma_r == 0.07);

    CHECK(s.levels[0].sigma_s == 5.0);
    CHECK(s.levels[0].d_up == 5);
    CHECK(s.levels[0].d_refine == 21);  // 4*5 = 20, tie -> 21

    CHECK(s.levels[1].sigma_s == 2.5);
    CHECK(s.levels[1].d_up == 3);  // max(2.5, 3) = 3
    CHECK(s.levels[1].d_refine == 11);  // 4*2.5 = 10, tie -> 11

    CHECK(s.levels[2].sigma_s == 1.25);
    CHECK(s.levels[2].d_up == 3);
    CHECK(s.levels[2].d_refine == 5);

    FilterParams p3;
    p3.sigma_s = 3.0;
    const ScaleSchedule s3 = make_schedule(p3, 3);
    CHECK(s3.levels[2].sigma_s == 0.75);
    CHECK(s3.levels[2].d_up == 3);      // floors at 3
    CHECK(s3.levels[2].d_refine == 3);  // max(3, 3) = 3

    CHECK_THROWS_AS(make_schedule(p, 0), contract_error);
}

TEST_CASE("psu_step on a constant pyramid returns the constant") {
    const ImageBuf g_fine(16, 16, 3, 0.5);
    const ImageBuf l_fine(16, 16, 3, 0.0);
    const ImageBuf r_coarse(8, 8, 3, 0.5);
    const LevelParams lvl{2.5, 3, 11};
    const ImageBuf out = psu_step(r_coarse, g_fine, l_fine, lvl, 0.07);
    CHECK(out.same_shape(g_fine));
    for (double v : out.data) CHECK(v == 0.5);

    const ImageBuf out_v = psu_step_laplacian_first(r_coarse, g_fine, l_fine, lvl, 0.07);
    for (double v : out_v.data) CHECK(v == 0.5);
}

TEST_CASE("psu_step shape contract") {
    const ImageBuf g_fine(16, 16, 3, 0.5);
    const ImageBuf l_wrong(16, 15, 3, 0.0);
    const ImageBuf r_coarse(8, 8, 3, 0.5);
    const LevelParams lvl{2.5, 3, 11};
    CHECK_THROWS_AS(psu_step(r_coarse, g_fine, l_wrong, lvl, 0.07), contract_error);
    CHECK_THROWS_AS(psu_step(ImageBuf(5, 5, 3, 0.5), g_fine, g_fine, lvl, 0.07), contract_error);
}

TEST_CASE("one guided step beats plain bilinear upsampling of the coarse level") {
    // period 4 so the depth rule (N=2 here) can remove the texture; the period
    // a pyramid can eliminate scales with the depth the rule assigns
    const auto corpus = testing::checker_corpus(1, 160, 192, 0.2, 4, 500);
    const ImageBuf& gt = corpus[0].ground_truth;
    const ImageBuf& input = corpus[0].textured;

    const GaussianPyramid gp = build_gaussian_pyramid(input);
    const LaplacianPyramid lp = build_laplacian_pyramid(gp);
    const GaussianPyramid gt_gp = build_gaussian_pyramid(gt);
    const int n = gp.depth();
    const ScaleSchedule sched = make_schedule(FilterParams{}, n);

    const ImageBuf stepped =
        psu_step(gp.levels[n], gp.levels[n - 1], lp.levels[n - 1], sched.levels[n - 1], 0.07);
    const ImageBuf plain = upsample_bilinear(gp.levels[n], gp.levels[n - 1].height,
                                             gp.levels[n - 1].width);

    const double psnr_stepped = psnr(clamp01(stepped), gt_gp.levels[n - 1]).value;
    const double psnr_plain = psnr(plain, gt_gp.levels[n - 1]).value;
    CHECK(psnr_stepped > psnr_plain);
}

TEST_CASE("end-to-end constancy is exact") {
    for (double c : {0.0, 0.5, 1.0}) {
        const ImageBuf img(96, 128, 3, c);
        const ImageBuf out = pyramid_texture_filter(img, FilterParams{});
        CHECK(out.same_shape(img));
        CHECK(max_abs_diff(out, img).value == 0.0);
    }
}

TEST_CASE("filter output matches input shape at every level") {
    ImageBuf img = make_structure_image(96, 160, 3, 77);
    img = add_synthetic_texture(img, TexturePattern::Checker, 0.2, 4, 78);
    const GaussianPyramid gp = build_gaussian_pyramid(img);
    const LaplacianPyramid lp = build_laplacian_pyramid(gp);

    // headroom can accumulate across steps, so bound by the summed detail magnitude
    double max_l = 0.0;
    for (size_t k = 0; k + 1 < lp.levels.size(); ++k) {
        double level_max = 0.0;
        for (double v : lp.levels[k].data) level_max = std::max(level_max, std::abs(v));
        max_l += level_max;
    }

    std::vector<int> seen;
    const ImageBuf out = pyramid_texture_filter(img, FilterParams{},
                                                [&](int level, const ImageBuf& r) {
        seen.push_back(level);
        REQUIRE(r.same_shape(gp.levels[static_cast<size_t>(level)]));
        // intermediates keep signed headroom bounded by the detail magnitude
        for (double v : r.data) {
            CHECK(v >= -max_l - 1e-9);
            CHECK(v <= 1.0 + max_l + 1e-9);
        }
    });
    CHECK(out.same_shape(img));
    REQUIRE(seen.size() == gp.levels.size());
    for (size_t i = 0; i < seen.size(); ++i) {
        CHECK(seen[i] == gp.depth() - static_cast<int>(i));
    }
    for (double v : out.data) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(!std::isnan(v));
    }
}

TEST_CASE("filtering removes checker texture on a synthetic scene") {
    const auto corpus = testing::checker_corpus(1, 160, 192, 0.2, 4, 900);
    const ImageBuf out = pyramid_texture_filter(corpus[0].textured, FilterParams{});
    const double gain = psnr(out, corpus[0].ground_truth).value -
                        psnr(corpus[0].textured, corpus[0].ground_truth).value;
    CHECK(gain >= 15.0);
}

TEST_CASE("variant produces a different, still texture-reducing result") {
    const auto corpus = testing::checker_corpus(1, 160, 192, 0.2, 4, 901);
    FilterParams std_p;
    FilterParams var_p;
    var_p.variant = FilterVariant::LaplacianFirst;
    const ImageBuf out_std = pyramid_texture_filter(corpus[0].textured, std_p);
    const ImageBuf out_var = pyramid_texture_filter(corpus[0].textured, var_p);
    CHECK(max_abs_diff(out_std, out_var).value > 0.0);

    const double base = psnr(corpus[0].textured, corpus[0].ground_truth).value;
    CHECK(psnr(out_std, corpus[0].ground_truth).value > base);
    CHECK(psnr(out_var, corpus[0].ground_truth).value > base);
}

TEST_CASE("depth override shortens the loop") {
    const ImageBuf img = make_structure_image(96, 128, 3, 55);
    FilterParams p;
    p.depth_override = 1;
    const ImageBuf out = pyramid_texture_filter(img, p);
    CHECK(out.same_shape(img));

    CHECK_THROWS_AS(pyramid_texture_filter(ImageBuf(32, 32, 1, 0.5), FilterParams{}),
                    contract_error);
}

TEST_SUITE_END();
