#include <catch2/catch_amalgamated.hpp>

#include "dyad/averaging.hpp"
#include "dyad/random.hpp"

using namespace dyad;

namespace {
AveragingConfig small_config() {
    AveragingConfig cfg;
    cfg.translation_range = 64.0;
    cfg.samples_y = 32;
    cfg.samples_lambda = 32;
    cfg.scale_min = -5;
    cfg.scale_max = 8;
    cfg.seed = 11;
    return cfg;
}

std::vector<double> plain_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return g;
}
} // namespace

TEST_CASE("zero input gives zero output") {
    const AveragingConfig cfg = small_config();
    const std::vector<double> grid = plain_grid(-2.0, 3.0, 64);
    const std::vector<double> v =
        averaged_shift_values(StepFunction{}, draw_samples(cfg), cfg, grid);
    for (double x : v) CHECK(x == 0.0);
}

TEST_CASE("sample drawing is deterministic and in range") {
    const AveragingConfig cfg = small_config();
    const auto s1 = draw_samples(cfg);
    const auto s2 = draw_samples(cfg);
    REQUIRE(s1.size() == static_cast<std::size_t>(cfg.samples_y * cfg.samples_lambda));
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1[i].y == s2[i].y);
        CHECK(s1[i].lambda == s2[i].lambda);
        CHECK(s1[i].y >= 0.0);
        CHECK(s1[i].y <= cfg.translation_range);
        CHECK(s1[i].lambda >= 1.0);
        CHECK(s1[i].lambda <= 2.0);
    }
}

TEST_CASE("linearity under a shared sample set") {
    const AveragingConfig cfg = small_config();
    const auto samples = draw_samples(cfg);
    const std::vector<double> grid = plain_grid(-2.0, 3.0, 96);
    const StepFunction f = StepFunction::indicator(0.0, 1.0);
    const StepFunction g({-0.5, 0.25, 1.25}, {1.0, -2.0});
    const StepFunction combo = 2.0 * f + (-3.0) * g;
    const auto vf = averaged_shift_values(f, samples, cfg, grid);
    const auto vg = averaged_shift_values(g, samples, cfg, grid);
    const auto vc = averaged_shift_values(combo, samples, cfg, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(vc[i] == Catch::Approx(2.0 * vf[i] - 3.0 * vg[i]).margin(1e-12));
}

TEST_CASE("translation equivariance with shifted shared samples") {
    // conjugating the whole sample set by Tr_d turns averaged(f) into
    // averaged(Tr_d f) exactly
    const AveragingConfig cfg = small_config();
    auto samples = draw_samples(cfg);
    const double d = 16.0; // multiple of the coarsest dyadic scale in play
    const StepFunction f({0.0, 0.5, 1.0}, {1.0, -1.0});
    const std::vector<double> grid = plain_grid(-2.0, 3.0, 96);
    const auto base = averaged_shift_values(f, samples, cfg, grid);

    std::vector<double> shifted_grid = grid;
    for (double& x : shifted_grid) x += d;
    auto shifted_samples = samples;
    for (ShiftSample& s : shifted_samples) s.y += d;
    const auto moved =
        averaged_shift_values(f.translate(d), shifted_samples, cfg, shifted_grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(moved[i] == Catch::Approx(base[i]).margin(1e-10));
}

TEST_CASE("averaged shift approximates the hilbert transform") {
    AveragingConfig cfg;
    cfg.translation_range = 256.0;
    cfg.samples_y = 96;
    cfg.samples_lambda = 96;
    cfg.scale_min = -6;
    cfg.scale_max = 10;
    cfg.seed = 7;
    const StepFunction f = StepFunction::indicator(0.0, 1.0);
    const std::vector<double> grid = comparison_grid(f, cfg, -3.0, 4.0, 256);
    const auto avg = averaged_shift_values(f, draw_samples(cfg), cfg, grid);
    std::vector<double> exact(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) exact[i] = hilbert_pv(f, grid[i]);
    CHECK(cosine_similarity(avg, exact) >= 0.99);
}

TEST_CASE("averaged_shift returns the grid-sampled step function") {
    const AveragingConfig cfg = small_config();
    const std::vector<double> grid = plain_grid(-2.0, 3.0, 64);
    const StepFunction f = StepFunction::indicator(0.0, 1.0);
    const StepFunction a = averaged_shift(f, cfg, grid);
    const auto values = averaged_shift_values(f, draw_samples(cfg), cfg, grid);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        CHECK(a.eval(grid[i]) == values[i]);
}

TEST_CASE("fit constant") {
    AveragingConfig cfg;
    cfg.translation_range = 128.0;
    cfg.samples_y = 64;
    cfg.samples_lambda = 64;
    cfg.scale_min = -6;
    cfg.scale_max = 9;
    cfg.seed = 21;
    const StepFunction f = StepFunction::indicator(0.0, 1.0);
    SECTION("identical functions give identical estimates") {
        const FitResult r = fit_constant({f, f}, cfg, -3.0, 4.0, 128);
        CHECK(r.c_hat[0] == r.c_hat[1]);
        CHECK(r.dispersion == 0.0);
    }
    SECTION("scaling the test function leaves the ratio unchanged") {
        const FitResult r = fit_constant({f, 2.0 * f}, cfg, -3.0, 4.0, 128);
        CHECK(r.c_hat[0] == Catch::Approx(r.c_hat[1]).margin(1e-12));
    }
    SECTION("needs at least two functions") {
        CHECK_THROWS_AS(fit_constant({f}, cfg, -3.0, 4.0, 128), std::invalid_argument);
    }
}

TEST_CASE("config validation") {
    AveragingConfig cfg = small_config();
    cfg.samples_y = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.translation_range = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.scale_min = 9;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("window too small for the supports is rejected") {
    AveragingConfig cfg = small_config();
    cfg.scale_max = 3; // 2^3 < Y = 64
    const StepFunction f = StepFunction::indicator(0.0, 1.0);
    const std::vector<double> grid = plain_grid(-2.0, 3.0, 16);
    CHECK_THROWS_AS(averaged_shift_values(f, draw_samples(cfg), cfg, grid),
                    std::invalid_argument);
}
