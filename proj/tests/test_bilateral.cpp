#include <array>
#include <cmath>

#include "doctest.h"
#include "pyrtex/bilateral.hpp"
#include "pyrtex/pyramid.hpp"
#include "support/corpus.hpp"
#include "support/oracle.hpp"

using namespace pyrtex;

TEST_SUITE_BEGIN("bilateral");

TEST_CASE("range weight basics") {
    const std::array<double, 3> a{0.2, 0.4, 0.6};
    CHECK(range_weight(a, a, 0.05) == 1.0);

    // gray scalars one sigma apart
    const std::array<double, 1> g0{0.5}, g1{0.55};
    CHECK(range_weight(g0, g1, 0.05) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

    // 3-4-5 triangle: ||(0.03, 0.04, 0)|| = 0.05
    const std::array<double, 3> black{0.0, 0.0, 0.0}, off{0.03, 0.04, 0.0};
    CHECK(range_weight(black, off, 0.05) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

    const std::array<double, 1> wrong{0.1};
    CHECK_THROWS_AS(range_weight(a, wrong, 0.05), contract_error);
}

TEST_CASE("jbf parameter validation") {
    const ImageBuf img = testing::random_image(8, 8, 1, 1);
    CHECK_THROWS_AS(jbf(img, testing::random_image(8, 9, 1, 2), {1.0, 0.1, 3}), contract_error);
    CHECK_THROWS_AS(jbf(img, img, {0.0, 0.1, 3}), contract_error);
    CHECK_THROWS_AS(jbf(img, img, {1.0, 0.0, 3}), contract_error);
    CHECK_THROWS_AS(jbf(img, img, {1.0, 0.1, 4}), contract_error);
    CHECK_THROWS_AS(jbf(img, img, {1.0, 0.1, 1}), contract_error);
}

TEST_CASE("constant input is a fixed point for any guide") {
    const ImageBuf guide = testing::random_image(12, 13, 3, 5);
    const ImageBuf c(12, 13, 1, 0.5);
    const ImageBuf out = jbf(c, guide, {2.0, 0.05, 5});
    for (double v : out.data) CHECK(v == 0.5);
}

TEST_CASE("constant guide reduces to a truncated spatial Gaussian") {
    const ImageBuf img = testing::random_image(14, 11, 3, 6);
    const ImageBuf guide(14, 11, 1, 0.3);
    const ImageBuf filtered = jbf(img, guide, {1.5, 0.07, 5});
    const ImageBuf blurred = testing::gaussian_window_blur(img, 1.5, 5);
    CHECK(max_abs_diff(filtered, blurred).value <= 1e-10);
}

TEST_CASE("huge sigma_r behaves like the constant-guide case") {
    const ImageBuf img = testing::random_image(10, 10, 1, 7);
    const ImageBuf filtered = jbf(img, img, {2.0, 1e6, 5});
    const ImageBuf blurred = testing::gaussian_window_blur(img, 2.0, 5);
    CHECK(max_abs_diff(filtered, blurred).value <= 1e-6);
}

TEST_CASE("tiny sigma_s collapses to the center tap") {
    const ImageBuf img = testing::random_image(9, 9, 3, 8);
    const ImageBuf out = jbf(img, img, {0.05, 0.07, 3});
    CHECK(max_abs_diff(out, img).value <= 1e-12);
}

TEST_CASE("center value matches the literal definition") {
    ImageBuf img(3, 3, 1);
    for (int i = 0; i < 9; ++i) img.data[static_cast<size_t>(i)] = 0.1 * (i + 1);
    const BilateralParams p{1.0, 0.1, 3};
    const ImageBuf fast = jbf(img, img, p);
    const ImageBuf slow = testing::jbf_oracle(img, img, p);
    CHECK(std::abs(fast.at(1, 1, 0) - slow.at(1, 1, 0)) <= 1e-12);
    CHECK(max_abs_diff(fast, slow).value <= 1e-12);
}

TEST_CASE("oracle equivalence across a parameter grid") {
    double worst = 0.0;
    int pair_index = 0;
    for (double sigma_s : {1.0, 2.0, 5.0}) {
        for (double sigma_r : {0.02, 0.07}) {
            for (int d : {3, 5, 9}) {
                for (int rep = 0; rep < 3; ++rep, ++pair_index) {
                    const uint32_t seed = 100 + static_cast<uint32_t>(pair_index);
                    const int ch = pair_index % 2 == 0 ? 3 : 1;
                    const ImageBuf input = testing::random_image(16, 16, ch, seed);
                    const ImageBuf guide = testing::random_image(16, 16, ch, seed + 5000);
                    const BilateralParams p{sigma_s, sigma_r, d};
                    const double diff =
                        max_abs_diff(jbf(input, guide, p), testing::jbf_oracle(input, guide, p))
                            .value;
                    worst = std::max(worst, diff);
                }
            }
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("input and guide may have different channel counts") {
    const BilateralParams p{2.0, 0.05, 5};
    for (int ci : {1, 3}) {
        for (int cg : {1, 3}) {
            const ImageBuf input = testing::random_image(12, 11, ci, 61);
            const ImageBuf guide = testing::random_image(12, 11, cg, 62);
            const ImageBuf fast = jbf(input, guide, p);
            CHECK(fast.channels == ci);
            CHECK(max_abs_diff(fast, testing::jbf_oracle(input, guide, p)).value <= 1e-10);
        }
    }
}

TEST_CASE("output stays inside the local value range") {
    const ImageBuf img = testing::random_image(16, 16, 3, 9);
    const ImageBuf out = jbf(img, img, {2.0, 0.05, 7});
    double lo = 1e300, hi = -1e300;
    for (double v : img.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (double v : out.data) {
        CHECK(v >= lo - 1e-12);
        CHECK(v <= hi + 1e-12);
    }
}

TEST_CASE("translation equivariance away from borders") {
    const int n = 16, d = 5, r = d / 2;
    const ImageBuf base = testing::random_image(n + 1, n + 1, 1, 13);
    ImageBuf img(n, n, 1), shifted(n, n, 1);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            img.at(y, x, 0) = base.at(y, x, 0);
            shifted.at(y, x, 0) = base.at(y + 1, x + 1, 0);  // shift content by (-1,-1)
        }
    }
    const BilateralParams p{1.5, 0.08, d};
    const ImageBuf out = jbf(img, img, p);
    const ImageBuf out_shifted = jbf(shifted, shifted, p);
    for (int y = r; y < n - 1 - r; ++y) {
        for (int x = r; x < n - 1 - r; ++x) {
            CHECK(out_shifted.at(y, x, 0) == out.at(y + 1, x + 1, 0));
        }
    }
}

TEST_CASE("jbf_upsample contracts and constants") {
    const ImageBuf low(4, 4, 1, 0.5);
    const ImageBuf guide = testing::random_image(8, 8, 1, 15);
    const ImageBuf out = jbf_upsample(low, guide, {1.0, 0.07, 3});
    CHECK(out.height == 8);
    CHECK(out.width == 8);
    for (double v : out.data) CHECK(v == 0.5);

    CHECK_THROWS_AS(jbf_upsample(low, testing::random_image(32, 32, 1, 16), {1.0, 0.07, 3}),
                    contract_error);
}

TEST_CASE("jbf_upsample with uniform guide equals upsample then blur") {
    ImageBuf low(2, 2, 1);
    low.at(0, 0, 0) = 0.0;
    low.at(0, 1, 0) = 1.0;
    low.at(1, 0, 0) = 1.0;
    low.at(1, 1, 0) = 0.0;
    const ImageBuf guide(4, 4, 1, 0.5);
    const BilateralParams p{1.0, 10.0, 3};
    const ImageBuf out = jbf_upsample(low, guide, p);
    // with a uniform guide every range weight is exactly 1
    const ImageBuf expected = testing::gaussian_window_blur(upsample_bilinear(low, 4, 4), 1.0, 3);
    CHECK(max_abs_diff(out, expected).value <= 1e-12);
}

TEST_SUITE_END();
