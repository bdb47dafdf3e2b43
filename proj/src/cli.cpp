#include "pyrtex/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "pyrtex/apps.hpp"
#include "pyrtex/filter.hpp"
#include "pyrtex/image_io.hpp"
#include "pyrtex/parallel.hpp"

namespace pyrtex::cli {
namespace {

struct CommonFlags {
    double sigma_s = 5.0;
    double sigma_r = 0.07;
    int depth = 0;    // 0 = use the coarsest-level rule
    int threads = 0;  // 0 = PYRTEX_THREADS or hardware concurrency
    bool force = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, double def_ss, double def_sr) {
    f.sigma_s = def_ss;
    f.sigma_r = def_sr;
    cmd->add_option("--sigma-s", f.sigma_s, "spatial sigma, pixels")->capture_default_str();
    cmd->add_option("--sigma-r", f.sigma_r, "range sigma, intensity")->capture_default_str();
    cmd->add_option("--depth", f.depth, "pyramid depth override (>= 1)");
    cmd->add_option("--threads", f.threads, "worker threads (default: PYRTEX_THREADS or all cores)");
    cmd->add_flag("--force", f.force, "allow sigma values outside [3,15] x [0.02,0.09]");
}

void apply_threads(int flag) {
    int n = flag;
    if (n <= 0) {
        if (const char* env = std::getenv("PYRTEX_THREADS")) n = std::atoi(env);
    }
    set_num_threads(n > 0 ? n : 0);
}

// The recommended operating envelope; values outside it need --force.
void check_envelope(const CommonFlags& f) {
    if (f.force) return;
    if (f.sigma_s < 3.0 || f.sigma_s > 15.0) {
        throw CLI::ValidationError("--sigma-s must lie in [3, 15] (use --force to override)");
    }
    if (f.sigma_r < 0.02 || f.sigma_r > 0.09) {
        throw CLI::ValidationError("--sigma-r must lie in [0.02, 0.09] (use --force to override)");
    }
}

FilterParams to_filter_params(const CommonFlags& f) {
    FilterParams p;
    p.sigma_s = f.sigma_s;
    p.sigma_r = f.sigma_r;
    if (f.depth > 0) p.depth_override = f.depth;
    return p;
}

void dump_pyramids(const ImageBuf& img, const FilterParams& p, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const GaussianPyramid gp = build_gaussian_pyramid(img, p.depth_override);
    const LaplacianPyramid lp = build_laplacian_pyramid(gp);
    for (size_t k = 0; k < gp.levels.size(); ++k) {
        save_image(gp.levels[k], dir + "/G" + std::to_string(k) + ".png");
        ImageBuf view = lp.levels[k];
        if (k + 1 < lp.levels.size()) {
            // difference levels are signed; bias for viewing
            for (double& v : view.data) v += 0.5;
        }
        save_image(view, dir + "/L" + std::to_string(k) + ".png");
    }
}

bool parse_size(const std::string& s, int& w, int& h) {
    return std::sscanf(s.c_str(), "%dx%d", &w, &h) == 2 && w >= 2 && h >= 2;
}

ImageBuf make_bench_image(int w, int h, uint32_t seed) {
    const ImageBuf structure = make_structure_image(h, w, 3, seed);
    return add_synthetic_texture(structure, TexturePattern::NoiseDots, 0.2, 8, seed + 1);
}

int run_bench(const std::string& size, uint32_t seed, const CommonFlags& flags) {
    int w = 0, h = 0;
    if (!parse_size(size, w, h)) throw CLI::ValidationError("--size must look like 1280x720");
    apply_threads(flags.threads);
    check_envelope(flags);

    const ImageBuf img = make_bench_image(w, h, seed);
    const FilterParams p = to_filter_params(flags);

    const auto t0 = std::chrono::steady_clock::now();
    const ImageBuf out = pyramid_texture_filter(img, p);
    const auto t1 = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    const double mp = static_cast<double>(w) * h / 1e6;
    std::printf("smooth %dx%d (%.2f MP, sigma_s=%g, sigma_r=%g, threads=%d): %.3f s, %.2f MP/s\n",
                w, h, mp, p.sigma_s, p.sigma_r, num_threads(), secs, mp / secs);
    (void)out;
    return 0;
}

// ---------------------------------------------------------------------------
// Embedded invariant checks (`selftest`)
// ---------------------------------------------------------------------------

int run_selftest(uint32_t seed) {
    int failures = 0;
    auto report = [&](const char* name, bool ok, double value, const char* fmt) {
        std::printf("%-44s %s (", name, ok ? "ok  " : "FAIL");
        std::printf(fmt, value);
        std::printf(")\n");
        if (!ok) ++failures;
    };

    {
        double worst = 0.0;
        for (uint32_t i = 0; i < 3; ++i) {
            ImageBuf img = make_structure_image(96 + 17 * static_cast<int>(i), 128, 3, seed + i);
            img = add_synthetic_texture(img, TexturePattern::Checker, 0.2, 6, seed + i);
            const auto gp = build_gaussian_pyramid(img);
            const auto rec = collapse(build_laplacian_pyramid(gp));
            worst = std::max(worst, max_abs_diff(rec, img).value);
        }
        report("pyramid reconstruction identity", worst <= 1e-6, worst, "max err %.3g");
    }
    {
        const ImageBuf c(96, 128, 3, 0.5);
        const ImageBuf out = pyramid_texture_filter(c, FilterParams{});
        const double d = max_abs_diff(out, c).value;
        report("constant image is a fixed point", d == 0.0, d, "max err %.3g");
    }
    {
        ImageBuf img = make_structure_image(80, 96, 3, seed + 11);
        img = add_gaussian_noise(img, 0.05, seed + 12);
        const ImageBuf out = jbf(img, img, {2.0, 0.05, 7});
        double lo = 1e300, hi = -1e300;
        for (double v : img.data) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        bool ok = true;
        for (double v : out.data) ok = ok && v >= lo - 1e-12 && v <= hi + 1e-12;
        report("bilateral output is a convex combination", ok, 0.0, "bounds%.0s");
    }
    {
        const ScaleSchedule s = make_schedule(FilterParams{}, 3);
        const bool ok = s.levels[0].d_up == 5 && s.levels[0].d_refine == 21 &&
                        s.levels[1].d_up == 3 && s.levels[1].d_refine == 11 &&
                        s.levels[2].d_up == 3 && s.levels[2].d_refine == 5;
        report("scale schedule windows", ok, 0.0, "sigma_s=5%.0s");
    }
    {
        namespace fs = std::filesystem;
        const ImageBuf img = make_structure_image(40, 56, 3, seed + 21);
        const fs::path tmp = fs::temp_directory_path() /
                             ("pyrtex_selftest_" + std::to_string(seed) + ".ppm");
        save_image(img, tmp.string());
        const ImageBuf back = load_image(tmp.string());
        fs::remove(tmp);
        const double d = max_abs_diff(back, clamp01(img)).value;
        report("save/load round trip", d <= 1.0 / 255.0 + 1e-12, d, "max err %.3g");
    }
    {
        ImageBuf img = make_structure_image(96, 128, 3, seed + 31);
        img = add_synthetic_texture(img, TexturePattern::Checker, 0.15, 4, seed + 31);
        set_num_threads(1);
        const ImageBuf a = pyramid_texture_filter(img, FilterParams{});
        set_num_threads(4);
        const ImageBuf b = pyramid_texture_filter(img, FilterParams{});
        set_num_threads(1);
        const double d = max_abs_diff(a, b).value;
        report("thread-count independence", d == 0.0, d, "max err %.3g");
    }

    std::printf(failures == 0 ? "selftest: all checks passed\n"
                              : "selftest: %d check(s) FAILED\n",
                failures);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Structure-preserving texture smoothing via pyramid-guided upsampling"};
    app.require_subcommand(1);

    std::string input, output, dump_pyr, dump_int, size = "1280x720";
    uint32_t seed = 1;
    double alpha = 2.5, gamma = 0.7, target_contrast = 5.0;

    CommonFlags smooth_f, enhance_f, abstract_f, tonemap_f, halftone_f, ldr_f, bench_f;

    auto* smooth = app.add_subcommand("smooth", "texture smoothing");
    smooth->add_option("input", input)->required();
    smooth->add_option("output", output)->required();
    add_common_flags(smooth, smooth_f, 5.0, 0.07);
    smooth->add_option("--dump-pyramid", dump_pyr, "write G_k/L_k levels to DIR as PNG");
    smooth->add_option("--dump-intermediate", dump_int, "write each upsampling result to DIR");

    auto* enhance = app.add_subcommand("enhance", "detail enhancement");
    enhance->add_option("input", input)->required();
    enhance->add_option("output", output)->required();
    add_common_flags(enhance, enhance_f, 5.0, 0.07);
    enhance->add_option("--alpha", alpha, "detail multiplier")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    auto* abstract = app.add_subcommand("abstract", "image abstraction");
    abstract->add_option("input", input)->required();
    abstract->add_option("output", output)->required();
    add_common_flags(abstract, abstract_f, 3.0, 0.03);

    auto* tone = app.add_subcommand("tonemap", "HDR tone mapping (.hdr/.pfm input)");
    tone->add_option("input", input)->required();
    tone->add_option("output", output)->required();
    add_common_flags(tone, tonemap_f, 3.0, 0.03);
    tone->add_option("--target-contrast", target_contrast,
                     "log10 dynamic range allowed for the base layer")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* halftone = app.add_subcommand("halftone", "inverse halftoning");
    halftone->add_option("input", input)->required();
    halftone->add_option("output", output)->required();
    add_common_flags(halftone, halftone_f, 4.0, 0.03);

    auto* ldr = app.add_subcommand("ldr", "low-light image enhancement");
    ldr->add_option("input", input)->required();
    ldr->add_option("output", output)->required();
    add_common_flags(ldr, ldr_f, 7.0, 0.07);
    ldr->add_option("--gamma", gamma, "enhancement exponent in (0,1)")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12))
        ->capture_default_str();

    auto* bench = app.add_subcommand("bench", "time smoothing on a generated image");
    bench->add_option("--size", size, "image size WxH")->capture_default_str();
    bench->add_option("--seed", seed, "generator seed")->capture_default_str();
    add_common_flags(bench, bench_f, 5.0, 0.07);

    auto* selftest = app.add_subcommand("selftest", "run embedded invariant checks");
    selftest->add_option("--seed", seed, "generator seed")->capture_default_str();

    try {
        app.parse(argc, argv);

        if (selftest->parsed()) return run_selftest(seed);
        if (bench->parsed()) return run_bench(size, seed, bench_f);

        const CommonFlags& flags = smooth->parsed()     ? smooth_f
                                   : enhance->parsed()  ? enhance_f
                                   : abstract->parsed() ? abstract_f
                                   : tone->parsed()     ? tonemap_f
                                   : halftone->parsed() ? halftone_f
                                                        : ldr_f;
        check_envelope(flags);
        apply_threads(flags.threads);
        const FilterParams params = to_filter_params(flags);

        if (smooth->parsed()) {
            const ImageBuf img = load_image(input);
            if (!dump_pyr.empty()) dump_pyramids(img, params, dump_pyr);
            LevelObserver observer;
            if (!dump_int.empty()) {
                std::filesystem::create_directories(dump_int);
                observer = [&dump_int](int level, const ImageBuf& r) {
                    save_image(r, dump_int + "/R" + std::to_string(level) + ".png");
                };
            }
            save_image(pyramid_texture_filter(img, params, observer), output);
        } else if (enhance->parsed()) {
            AppConfig cfg{Application::DetailEnhance, params, alpha, gamma, target_contrast};
            save_image(detail_enhance(load_image(input), cfg), output);
        } else if (abstract->parsed()) {
            AppConfig cfg{Application::Abstraction, params, alpha, gamma, target_contrast};
            save_image(abstraction(load_image(input), cfg), output);
        } else if (tone->parsed()) {
            AppConfig cfg{Application::Tonemap, params, alpha, gamma, target_contrast};
            save_image(tonemap(load_hdr(input), cfg), output);
        } else if (halftone->parsed()) {
            AppConfig cfg{Application::InverseHalftone, params, alpha, gamma, target_contrast};
            save_image(inverse_halftone(load_image(input), cfg), output);
        } else if (ldr->parsed()) {
            AppConfig cfg{Application::LdrEnhance, params, alpha, gamma, target_contrast};
            save_image(ldr_enhance(load_image(input), cfg), output);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help/--version exit cleanly
    } catch (const contract_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace pyrtex::cli
