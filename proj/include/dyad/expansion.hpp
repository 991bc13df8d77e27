#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dyad/haar.hpp"
#include "dyad/interval.hpp"
#include "dyad/step_function.hpp"

namespace dyad {

/// Haar coefficients of a function on a dyadic root interval.
///
/// `mean` multiplies the L2-normalized indicator of the root; level l of
/// `coeffs` holds <f, h_I> for the 2^l intervals I at scale root.scale - l,
/// ordered left to right.  The finest stored scale is `min_scale`.
class HaarExpansion {
  public:
    HaarExpansion(DyadicInterval root, int min_scale)
        : root_(root), min_scale_(min_scale) {
        if (min_scale > root.scale)
            throw std::invalid_argument("HaarExpansion: min_scale above root scale");
        levels_.resize(static_cast<std::size_t>(root.scale - min_scale) + 1);
        for (std::size_t l = 0; l < levels_.size(); ++l)
            levels_[l].assign(std::size_t{1} << l, 0.0);
    }

    const DyadicInterval& root() const { return root_; }
    int min_scale() const { return min_scale_; }
    /// Number of coefficient levels (root level included).
    int depth() const { return static_cast<int>(levels_.size()); }

    double mean() const { return mean_; }
    void set_mean(double m) { mean_ = m; }

    const std::vector<std::vector<double>>& levels() const { return levels_; }
    std::vector<std::vector<double>>& levels() { return levels_; }

    DyadicInterval interval_at(int level, std::int64_t index) const {
        return {root_.scale - level, (root_.position << level) + index};
    }

    bool in_window(const DyadicInterval& i) const {
        if (i.scale > root_.scale || i.scale < min_scale_) return false;
        return root_.contains(i);
    }

    double coeff(const DyadicInterval& i) const {
        auto [level, index] = locate(i);
        return levels_[level][index];
    }

    void set_coeff(const DyadicInterval& i, double value) {
        auto [level, index] = locate(i);
        levels_[level][index] = value;
    }

    template <class F>
    void for_each(F&& f) const {
        for (int l = 0; l < depth(); ++l)
            for (std::size_t j = 0; j < levels_[static_cast<std::size_t>(l)].size(); ++j)
                f(interval_at(l, static_cast<std::int64_t>(j)),
                  levels_[static_cast<std::size_t>(l)][j]);
    }

    double parseval_energy() const {
        double s = mean_ * mean_;
        for (const auto& lvl : levels_)
            for (double c : lvl) s += c * c;
        return s;
    }

  private:
    std::pair<std::size_t, std::size_t> locate(const DyadicInterval& i) const {
        if (!in_window(i)) throw std::out_of_range("HaarExpansion: interval outside window");
        const int level = root_.scale - i.scale;
        const std::int64_t index = i.position - (root_.position << level);
        return {static_cast<std::size_t>(level), static_cast<std::size_t>(index)};
    }

    DyadicInterval root_;
    int min_scale_;
    double mean_ = 0.0;
    std::vector<std::vector<double>> levels_;
};

/// Exact Haar transform of cell values.  `cells` holds 2^D values on the
/// uniform width-2^{root.scale-D} grid over `root`; the result carries D
/// coefficient levels (min_scale = root.scale - D + 1).
inline HaarExpansion analyze_cells(const std::vector<double>& cells, const DyadicInterval& root) {
    std::size_t n = cells.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("analyze_cells: cell count must be a power of two");
    int d = 0;
    while ((std::size_t{1} << d) < n) ++d;
    if (d == 0) {
        // a single cell carries only the mean
        HaarExpansion e(root, root.scale);
        e.set_mean(cells[0] * root.length() * inv_sqrt_length(root.scale));
        for (auto& lvl : e.levels())
            for (auto& c : lvl) c = 0.0;
        return e;
    }
    HaarExpansion e(root, root.scale - d + 1);
    const double w = std::ldexp(1.0, root.scale - d);
    std::vector<double> ints(n);
    for (std::size_t i = 0; i < n; ++i) ints[i] = cells[i] * w;
    for (int level = d - 1; level >= 0; --level) {
        auto& lvl = e.levels()[static_cast<std::size_t>(level)];
        const double norm = inv_sqrt_length(root.scale - level);
        for (std::size_t i = 0; i < lvl.size(); ++i) {
            lvl[i] = norm * (ints[2 * i + 1] - ints[2 * i]);
            ints[i] = ints[2 * i] + ints[2 * i + 1];
        }
        ints.resize(lvl.size());
    }
    e.set_mean(ints[0] * inv_sqrt_length(root.scale));
    return e;
}

/// Inverse of analyze_cells onto 2^{cell_levels} cells (cell_levels >= depth).
inline std::vector<double> synthesize_cells(const HaarExpansion& e, int cell_levels) {
    if (cell_levels < e.depth())
        throw std::invalid_argument("synthesize_cells: grid coarser than the expansion");
    std::vector<double> acc{e.mean() * inv_sqrt_length(e.root().scale)};
    for (int level = 0; level < e.depth(); ++level) {
        const auto& lvl = e.levels()[static_cast<std::size_t>(level)];
        const double norm = inv_sqrt_length(e.root().scale - level);
        std::vector<double> next(acc.size() * 2);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[2 * i] = acc[i] - lvl[i] * norm;
            next[2 * i + 1] = acc[i] + lvl[i] * norm;
        }
        acc = std::move(next);
    }
    while (static_cast<int>(acc.size()) < (std::int64_t{1} << cell_levels)) {
        std::vector<double> next(acc.size() * 2);
        for (std::size_t i = 0; i < acc.size(); ++i) next[2 * i] = next[2 * i + 1] = acc[i];
        acc = std::move(next);
    }
    return acc;
}

inline void require_support_inside(const StepFunction& f, const DyadicInterval& root,
                                   const char* who) {
    if (auto s = f.support()) {
        if (s->first < root.left() || s->second > root.right())
            throw std::domain_error(std::string(who) + ": support escapes the root interval");
    }
}

/// Exact Haar analysis of a step function over `root`, keeping every
/// coefficient at scales in [min_scale, root.scale].
inline HaarExpansion analyze(const StepFunction& f, const DyadicInterval& root, int min_scale) {
    if (min_scale > root.scale)
        throw std::invalid_argument("analyze: min_scale above root scale");
    require_support_inside(f, root, "analyze");
    const int d = root.scale - min_scale + 1; // cells at width 2^{min_scale-1}
    const std::size_t n = std::size_t{1} << d;
    const double w = std::ldexp(1.0, min_scale - 1);
    const double x0 = root.left();
    std::vector<double> cells(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = x0 + std::ldexp(static_cast<double>(i), min_scale - 1);
        cells[i] = f.integral_over(a, a + w) / w;
    }
    return analyze_cells(cells, root);
}

/// mean * h^1_root + sum coeffs[I] * h_I as a step function.
inline StepFunction synthesize(const HaarExpansion& e) {
    const int cl = e.depth();
    std::vector<double> cells = synthesize_cells(e, cl);
    const double x0 = e.root().left();
    const int cell_scale = e.root().scale - cl;
    std::vector<double> xs(cells.size() + 1);
    for (std::size_t i = 0; i <= cells.size(); ++i)
        xs[i] = x0 + std::ldexp(static_cast<double>(i), cell_scale);
    return StepFunction(std::move(xs), std::move(cells));
}

/// sup over dyadic J inside the window of
/// [ |J|^{-1} sum_{I subset of J} coeff(I)^2 ]^{1/2}; the mean is excluded.
inline double bmo_norm(const HaarExpansion& e) {
    double best = 0.0;
    std::vector<double> below; // subtree sums of the level under scrutiny
    for (int level = e.depth() - 1; level >= 0; --level) {
        const auto& lvl = e.levels()[static_cast<std::size_t>(level)];
        std::vector<double> sums(lvl.size());
        const double inv_len = std::ldexp(1.0, -(e.root().scale - level));
        for (std::size_t i = 0; i < lvl.size(); ++i) {
            double s = lvl[i] * lvl[i];
            if (!below.empty()) s += below[2 * i] + below[2 * i + 1];
            sums[i] = s;
            best = std::max(best, s * inv_len);
        }
        below = std::move(sums);
    }
    return std::sqrt(best);
}

} // namespace dyad
