#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dyad/hilbert.hpp"
#include "dyad/random.hpp"
#include "dyad/shift.hpp"
#include "dyad/step_function.hpp"

namespace dyad {

/// Parameters of the translation/dilation averaging of the Haar shift.
struct AveragingConfig {
    double translation_range = 1024.0; // Y
    int samples_y = 256;
    int samples_lambda = 256;
    int scale_min = -8;
    int scale_max = 12;
    std::uint64_t seed = 1;

    void validate() const {
        if (!(translation_range > 0.0))
            throw std::invalid_argument("AveragingConfig: translation range must be positive");
        if (samples_y < 1 || samples_lambda < 1)
            throw std::invalid_argument("AveragingConfig: need at least one sample per axis");
        if (scale_min > scale_max)
            throw std::invalid_argument("AveragingConfig: empty scale window");
    }
};

struct ShiftSample {
    double y = 0.0;      // translation
    double lambda = 1.0; // dilation scale in [1, 2]
};

/// Stratified-uniform y over [0, Y]; lambda by inverse CDF of dlambda/lambda
/// on [1, 2].  The full sample set is the n_y x n_lambda product grid.
inline std::vector<ShiftSample> draw_samples(const AveragingConfig& cfg) {
    cfg.validate();
    RandomStream rng(cfg.seed);
    std::vector<double> ys(static_cast<std::size_t>(cfg.samples_y));
    for (int i = 0; i < cfg.samples_y; ++i)
        ys[static_cast<std::size_t>(i)] =
            (static_cast<double>(i) + rng.uniform()) * cfg.translation_range /
            static_cast<double>(cfg.samples_y);
    std::vector<double> lambdas(static_cast<std::size_t>(cfg.samples_lambda));
    for (int j = 0; j < cfg.samples_lambda; ++j)
        lambdas[static_cast<std::size_t>(j)] = std::exp2(rng.uniform());
    std::vector<ShiftSample> samples;
    samples.reserve(ys.size() * lambdas.size());
    for (double y : ys)
        for (double l : lambdas) samples.push_back({y, l});
    return samples;
}

/// One conjugated-shift sample Tr_y Dil^{(2)}_l H Dil^{(2)}_{1/l} Tr_{-y} f,
/// evaluated exactly at the grid points and accumulated into `acc` (plain
/// running sums in fixed order keep the reduction deterministic).
inline void accumulate_shift_sample(const StepFunction& f, const ShiftSample& s,
                                    const AveragingConfig& cfg, const std::vector<double>& grid,
                                    std::vector<double>& acc) {
    const StepFunction pulled = f.translate(-s.y).dilate(1.0 / s.lambda, 2.0);
    const StepFunction shifted = haar_shift_line(pulled, cfg.scale_min, cfg.scale_max);
    const double amp = std::pow(s.lambda, -0.5);
    for (std::size_t i = 0; i < grid.size(); ++i)
        acc[i] += amp * shifted.eval((grid[i] - s.y) / s.lambda);
}

/// Monte-Carlo average of the conjugated Haar shift over a shared sample
/// set, evaluated exactly at `grid` points.
inline std::vector<double> averaged_shift_values(const StepFunction& f,
                                                 const std::vector<ShiftSample>& samples,
                                                 const AveragingConfig& cfg,
                                                 const std::vector<double>& grid) {
    if (auto sup = f.support()) {
        const double coarse = std::ldexp(1.0, cfg.scale_max);
        if (sup->second - sup->first > coarse || cfg.translation_range > coarse)
            throw std::invalid_argument(
                "averaged_shift: scale window too small for the translated supports");
    }
    std::vector<double> acc(grid.size(), 0.0);
    if (f.is_zero() || samples.empty()) return acc;
    for (const ShiftSample& s : samples) accumulate_shift_sample(f, s, cfg, grid, acc);
    const double inv = 1.0 / static_cast<double>(samples.size());
    for (double& a : acc) a *= inv;
    return acc;
}

/// Grid-sampled averaged shift as a step function: value on [x_i, x_{i+1})
/// is the exact sample average at x_i.
inline StepFunction averaged_shift(const StepFunction& f, const AveragingConfig& cfg,
                                   const std::vector<double>& grid) {
    if (grid.size() < 2) throw std::invalid_argument("averaged_shift: need at least two grid points");
    const std::vector<double> values = averaged_shift_values(f, draw_samples(cfg), cfg, grid);
    std::vector<double> vs(values.begin(), values.end() - 1);
    return StepFunction(grid, std::move(vs));
}

/// Uniform grid over [lo, hi] that avoids a radius-2^{scale_min}
/// neighborhood of every breakpoint of f, where the continuous transform has
/// logarithmic singularities a step output cannot follow.
inline std::vector<double> comparison_grid(const StepFunction& f, const AveragingConfig& cfg,
                                           double lo, double hi, int count) {
    const double radius = std::ldexp(1.0, cfg.scale_min);
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double x = lo + (hi - lo) * (static_cast<double>(i) + 0.5) / count;
        bool near = false;
        for (double b : f.breakpoints())
            if (std::abs(x - b) < radius) { near = true; break; }
        if (!near) grid.push_back(x);
    }
    return grid;
}

inline double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if (aa == 0.0 || bb == 0.0) return 0.0;
    return std::abs(ab) / std::sqrt(aa * bb);
}

struct FitResult {
    std::vector<double> c_hat;              // least-squares ratio per test function
    std::vector<double> cosine;             // |cos| between averaged and exact values
    double dispersion = 0.0;                // (max - min) / |mean| of c_hat
    bool degenerate = false;                // near-zero denominator somewhere
};

/// Fits averaged ~ c * H f per test function over per-function comparison
/// grids; all functions share one sample set drawn from cfg.seed.
inline FitResult fit_constant(const std::vector<StepFunction>& test_functions,
                              const AveragingConfig& cfg, double lo, double hi,
                              int grid_count = 512) {
    if (test_functions.size() < 2)
        throw std::invalid_argument("fit_constant: need at least two test functions");
    const std::vector<ShiftSample> samples = draw_samples(cfg);
    FitResult out;
    for (const StepFunction& f : test_functions) {
        const std::vector<double> grid = comparison_grid(f, cfg, lo, hi, grid_count);
        const std::vector<double> averaged = averaged_shift_values(f, samples, cfg, grid);
        std::vector<double> exact(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) exact[i] = hilbert_pv(f, grid[i]);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            num += averaged[i] * exact[i];
            den += exact[i] * exact[i];
        }
        if (den < 1e-12) {
            out.degenerate = true;
            out.c_hat.push_back(0.0);
            out.cosine.push_back(0.0);
            continue;
        }
        out.c_hat.push_back(num / den);
        out.cosine.push_back(cosine_similarity(averaged, exact));
    }
    double mn = out.c_hat[0], mx = out.c_hat[0], mean = 0.0;
    for (double c : out.c_hat) {
        mn = std::min(mn, c);
        mx = std::max(mx, c);
        mean += c;
    }
    mean /= static_cast<double>(out.c_hat.size());
    out.dispersion = mean != 0.0 ? (mx - mn) / std::abs(mean) : 0.0;
    return out;
}

} // namespace dyad
