#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dyad/expansion.hpp"
#include "dyad/interval.hpp"
#include "dyad/random.hpp"
#include "dyad/shift.hpp"

namespace dyad {

/// Cell-value vector on the uniform dyadic grid over a root interval;
/// carries its cell width so L2 quantities are exact.
struct CellVector {
    std::vector<double> values;
    double width = 1.0;

    double dot(const CellVector& o) const {
        double s = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * o.values[i];
        return s * width;
    }
    double norm() const { return std::sqrt(dot(*this)); }
    void scale(double c) {
        for (double& v : values) v *= c;
    }
};

struct PowerIterationResult {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Largest singular value of a linear map T via power iteration on T*T.
/// The Rayleigh estimates ||T v_k|| / ||v_k|| are nondecreasing, so seeding
/// with a known test vector yields a result at least as large.
inline PowerIterationResult
power_iteration(const std::function<CellVector(const CellVector&)>& apply,
                const std::function<CellVector(const CellVector&)>& apply_adjoint,
                CellVector v, int max_iterations, double tolerance = 1e-8) {
    PowerIterationResult res;
    double vn = v.norm();
    if (vn == 0.0) return res;
    v.scale(1.0 / vn);
    double prev = -1.0;
    for (int it = 0; it < max_iterations; ++it) {
        CellVector u = apply(v);
        const double sigma = u.norm();
        res.value = sigma;
        res.iterations = it + 1;
        if (sigma == 0.0) {
            res.converged = true;
            return res;
        }
        if (prev >= 0.0 && std::abs(sigma - prev) <= tolerance * std::max(1.0, sigma)) {
            res.converged = true;
            return res;
        }
        prev = sigma;
        v = apply_adjoint(u);
        const double n = v.norm();
        if (n == 0.0) {
            res.converged = true;
            return res;
        }
        v.scale(1.0 / n);
    }
    return res;
}

/// The paraproduct f -> P^{0,1,0}(b, f) and its adjoint P^{0,0,1}(b, .) as
/// exact maps on cell vectors over b's window.
class EmbeddingOperator {
  public:
    explicit EmbeddingOperator(const HaarExpansion& b) : b_(b) {}

    const HaarExpansion& symbol() const { return b_; }
    int cell_levels() const { return b_.depth(); }
    double cell_width() const { return std::ldexp(1.0, b_.root().scale - cell_levels()); }

    CellVector apply(const CellVector& v) const {
        HaarExpansion e = analyze_cells(v.values, b_.root());
        const auto avg = node_averages(e);
        HaarExpansion out(b_.root(), b_.min_scale());
        for (int l = 0; l < b_.depth(); ++l) {
            const auto& bl = b_.levels()[static_cast<std::size_t>(l)];
            auto& ol = out.levels()[static_cast<std::size_t>(l)];
            for (std::size_t i = 0; i < bl.size(); ++i)
                ol[i] = bl[i] * avg[static_cast<std::size_t>(l)][i];
        }
        return {synthesize_cells(out, cell_levels()), cell_width()};
    }

    CellVector apply_adjoint(const CellVector& g) const {
        HaarExpansion e = analyze_cells(g.values, b_.root());
        // sum over I of (b_I g_I / |I|) 1_I, accumulated downward
        const int d = b_.depth();
        const int r = b_.root().scale;
        std::vector<double> cur{b_.levels()[0][0] * e.levels()[0][0] * std::ldexp(1.0, -r)};
        for (int l = 1; l < d; ++l) {
            const auto& bl = b_.levels()[static_cast<std::size_t>(l)];
            const auto& gl = e.levels()[static_cast<std::size_t>(l)];
            const double inv_len = std::ldexp(1.0, -(r - l));
            std::vector<double> next(bl.size());
            for (std::size_t i = 0; i < bl.size(); ++i)
                next[i] = cur[i / 2] + bl[i] * gl[i] * inv_len;
            cur = std::move(next);
        }
        // constant on the finest window intervals; the cell grid is one level finer
        std::vector<double> cells(cur.size() * 2);
        for (std::size_t i = 0; i < cur.size(); ++i) cells[2 * i] = cells[2 * i + 1] = cur[i];
        return {std::move(cells), cell_width()};
    }

  private:
    HaarExpansion b_;
};

/// [b, H] on cell vectors: input on the width-2^{min_scale} grid, output one
/// level finer, with the exact adjoint H*(b g) - b H*(g).
class ShiftCommutatorOperator {
  public:
    explicit ShiftCommutatorOperator(const HaarExpansion& b)
        : b_(b), d_(b.depth()) {
        b_coarse_ = synthesize_cells(b_, d_);
        b_fine_.resize(b_coarse_.size() * 2);
        for (std::size_t i = 0; i < b_coarse_.size(); ++i)
            b_fine_[2 * i] = b_fine_[2 * i + 1] = b_coarse_[i];
    }

    int input_levels() const { return d_; }
    double input_width() const { return std::ldexp(1.0, b_.root().scale - d_); }
    double output_width() const { return 0.5 * input_width(); }

    CellVector apply(const CellVector& v) const {
        const HaarExpansion ev = analyze_cells(v.values, b_.root());
        // b * (H v) on the fine grid
        std::vector<double> hv = synthesize_cells(haar_shift_coeffs(ev), d_ + 1);
        for (std::size_t i = 0; i < hv.size(); ++i) hv[i] *= b_fine_[i];
        // H(b v)
        std::vector<double> bv(v.values.size());
        for (std::size_t i = 0; i < bv.size(); ++i) bv[i] = b_coarse_[i] * v.values[i];
        const std::vector<double> hbv =
            synthesize_cells(haar_shift_coeffs(analyze_cells(bv, b_.root())), d_ + 1);
        for (std::size_t i = 0; i < hv.size(); ++i) hv[i] -= hbv[i];
        return {std::move(hv), output_width()};
    }

    CellVector apply_adjoint(const CellVector& g) const {
        // H*(b g) - b H*(g) projected onto the input grid
        std::vector<double> bg(g.values.size());
        for (std::size_t i = 0; i < bg.size(); ++i) bg[i] = b_fine_[i] * g.values[i];
        std::vector<double> first = synthesize_cells(adjoint_shift(analyze_cells(bg, b_.root())), d_);
        const std::vector<double> hsg =
            synthesize_cells(adjoint_shift(analyze_cells(g.values, b_.root())), d_);
        for (std::size_t i = 0; i < first.size(); ++i) first[i] -= b_coarse_[i] * hsg[i];
        return {std::move(first), input_width()};
    }

  private:
    HaarExpansion adjoint_shift(const HaarExpansion& e) const {
        // <H* u, h_I> = kappa (<u, h_{I_left}> - <u, h_{I_right}>) over the window
        HaarExpansion out(b_.root(), b_.min_scale());
        for (int l = 0; l < d_; ++l) {
            const auto& child = e.levels()[static_cast<std::size_t>(l + 1)];
            auto& ol = out.levels()[static_cast<std::size_t>(l)];
            for (std::size_t i = 0; i < ol.size(); ++i)
                ol[i] = kShiftKappa * (child[2 * i] - child[2 * i + 1]);
        }
        return out;
    }

    HaarExpansion b_;
    int d_;
    std::vector<double> b_coarse_;
    std::vector<double> b_fine_;
};

inline CellVector random_cell_vector(std::size_t n, double width, RandomStream& rng) {
    CellVector v;
    v.width = width;
    v.values.resize(n);
    for (double& x : v.values) x = rng.gaussian();
    return v;
}

struct OperatorNormEstimate {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Best of two power-iteration runs: one from a caller-supplied test vector
/// (monotone lower bound), one from a seeded random start.
inline OperatorNormEstimate
estimate_operator_norm(const std::function<CellVector(const CellVector&)>& apply,
                       const std::function<CellVector(const CellVector&)>& apply_adjoint,
                       const CellVector& test_start, std::uint64_t seed, int max_iterations,
                       double tolerance = 1e-8) {
    OperatorNormEstimate est;
    RandomStream rng(seed);
    CellVector r = random_cell_vector(test_start.values.size(), test_start.width, rng);
    const PowerIterationResult a =
        power_iteration(apply, apply_adjoint, test_start, max_iterations, tolerance);
    const PowerIterationResult b =
        power_iteration(apply, apply_adjoint, r, max_iterations, tolerance);
    est.value = std::max(a.value, b.value);
    est.iterations = a.iterations + b.iterations;
    est.converged = a.converged && b.converged;
    return est;
}

} // namespace dyad
