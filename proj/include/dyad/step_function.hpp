#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dyad {

/// A compactly supported step function: constant value values_[i] on
/// [breakpoints_[i], breakpoints_[i+1]), identically zero outside
/// [front, back).  Evaluation uses the right-continuous representative.
///
/// All arithmetic (sums, products, integrals, norms) is closed-form over the
/// merged breakpoint set, so identities between step functions hold to
/// floating-point rounding, never to quadrature error.
class StepFunction {
  public:
    StepFunction() = default;

    StepFunction(std::vector<double> breakpoints, std::vector<double> values)
        : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
        if (breakpoints_.empty() && values_.empty()) return;
        if (breakpoints_.size() != values_.size() + 1)
            throw std::invalid_argument("StepFunction: need one more breakpoint than values");
        for (double v : values_)
            if (!std::isfinite(v)) throw std::invalid_argument("StepFunction: non-finite value");
        for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
            if (!(breakpoints_[i] <= breakpoints_[i + 1]))
                throw std::invalid_argument("StepFunction: breakpoints not increasing");
        }
        normalize();
    }

    static StepFunction zero() { return {}; }

    /// c on [a, b), zero elsewhere.
    static StepFunction indicator(double a, double b, double c = 1.0) {
        if (!(a < b)) throw std::invalid_argument("indicator: empty interval");
        return StepFunction({a, b}, {c});
    }

    bool is_zero() const { return values_.empty(); }

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t piece_count() const { return values_.size(); }

    /// Support bounds [front, back); nullopt for the zero function.
    std::optional<std::pair<double, double>> support() const {
        if (values_.empty()) return std::nullopt;
        return std::make_pair(breakpoints_.front(), breakpoints_.back());
    }

    double operator()(double x) const { return eval(x); }

    double eval(double x) const {
        if (values_.empty() || x < breakpoints_.front() || x >= breakpoints_.back()) return 0.0;
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
        return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
    }

    double integral() const {
        double s = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i)
            s += values_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
        return s;
    }

    /// Exact integral of f over [a, b).
    double integral_over(double a, double b) const {
        if (values_.empty() || !(a < b)) return 0.0;
        a = std::max(a, breakpoints_.front());
        b = std::min(b, breakpoints_.back());
        if (!(a < b)) return 0.0;
        auto lo = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), a) - 1;
        double s = 0.0;
        for (auto it = lo; it + 1 != breakpoints_.end() && *it < b; ++it) {
            double cl = std::max(*it, a);
            double cr = std::min(*(it + 1), b);
            if (cl < cr) s += values_[static_cast<std::size_t>(it - breakpoints_.begin())] * (cr - cl);
        }
        return s;
    }

    StepFunction translate(double y) const {
        StepFunction out = *this;
        for (double& x : out.breakpoints_) x += y;
        out.normalize();
        return out;
    }

    /// L^p-normalized dilation: x -> lambda^{-1/p} f(x/lambda).
    StepFunction dilate(double lambda, double p) const {
        if (!(lambda > 0.0)) throw std::invalid_argument("dilate: scale must be positive");
        if (!(p > 0.0)) throw std::invalid_argument("dilate: exponent must be positive");
        StepFunction out = *this;
        const double amp = std::pow(lambda, -1.0 / p);
        for (double& x : out.breakpoints_) x *= lambda;
        for (double& v : out.values_) v *= amp;
        out.normalize();
        return out;
    }

    StepFunction scaled(double c) const {
        StepFunction out = *this;
        for (double& v : out.values_) v *= c;
        out.normalize();
        return out;
    }

    friend StepFunction operator+(const StepFunction& f, const StepFunction& g) {
        return combine(f, g, [](double a, double b) { return a + b; });
    }
    friend StepFunction operator-(const StepFunction& f, const StepFunction& g) {
        return combine(f, g, [](double a, double b) { return a - b; });
    }
    friend StepFunction operator*(const StepFunction& f, const StepFunction& g) {
        return combine(f, g, [](double a, double b) { return a * b; });
    }
    friend StepFunction operator*(double c, const StepFunction& f) { return f.scaled(c); }
    friend StepFunction operator-(const StepFunction& f) { return f.scaled(-1.0); }

    /// Exact \int f g over the merged breakpoint grid.
    friend double inner_product(const StepFunction& f, const StepFunction& g) {
        if (f.values_.empty() || g.values_.empty()) return 0.0;
        double lo = std::max(f.breakpoints_.front(), g.breakpoints_.front());
        double hi = std::min(f.breakpoints_.back(), g.breakpoints_.back());
        if (!(lo < hi)) return 0.0;
        std::vector<double> cuts = merged_cuts(f, g, lo, hi);
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            s += f.eval(cuts[i]) * g.eval(cuts[i]) * (cuts[i + 1] - cuts[i]);
        return s;
    }

    /// (\int |f|^p)^{1/p} for finite p > 0, ess-sup |f| for p = infinity.
    double lp_norm(double p) const {
        if (values_.empty()) return 0.0;
        if (std::isinf(p)) return sup_norm();
        if (!(p > 0.0)) throw std::invalid_argument("lp_norm: exponent must be positive");
        double s = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i)
            s += std::pow(std::abs(values_[i]), p) * (breakpoints_[i + 1] - breakpoints_[i]);
        return std::pow(s, 1.0 / p);
    }

    double sup_norm() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Drops zero tails and merges adjacent pieces with equal values.
    void compress() {
        if (values_.empty()) return;
        std::vector<double> xs, vs;
        xs.reserve(breakpoints_.size());
        vs.reserve(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!vs.empty() && values_[i] == vs.back()) continue; // extend previous cell
            xs.push_back(breakpoints_[i]);
            vs.push_back(values_[i]);
        }
        xs.push_back(breakpoints_.back());
        while (!vs.empty() && vs.front() == 0.0) { xs.erase(xs.begin()); vs.erase(vs.begin()); }
        while (!vs.empty() && vs.back() == 0.0) { xs.pop_back(); vs.pop_back(); }
        if (vs.empty()) { xs.clear(); }
        breakpoints_ = std::move(xs);
        values_ = std::move(vs);
    }

    StepFunction compressed() const {
        StepFunction out = *this;
        out.compress();
        return out;
    }

  private:
    template <class Op>
    static StepFunction combine(const StepFunction& f, const StepFunction& g, Op op) {
        const bool annihilates = op(1.0, 0.0) == 0.0; // multiplication-like
        if (f.values_.empty()) return annihilates ? StepFunction{} : op_with_zero_left(g, op);
        if (g.values_.empty()) return annihilates ? StepFunction{} : f;
        double lo, hi;
        if (annihilates) {
            lo = std::max(f.breakpoints_.front(), g.breakpoints_.front());
            hi = std::min(f.breakpoints_.back(), g.breakpoints_.back());
            if (!(lo < hi)) return {};
        } else {
            lo = std::min(f.breakpoints_.front(), g.breakpoints_.front());
            hi = std::max(f.breakpoints_.back(), g.breakpoints_.back());
        }
        std::vector<double> cuts = merged_cuts(f, g, lo, hi);
        std::vector<double> vals(cuts.size() - 1);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            vals[i] = op(f.eval(cuts[i]), g.eval(cuts[i]));
        StepFunction out;
        out.breakpoints_ = std::move(cuts);
        out.values_ = std::move(vals);
        out.compress();
        return out;
    }

    template <class Op>
    static StepFunction op_with_zero_left(const StepFunction& g, Op op) {
        StepFunction out = g;
        for (double& v : out.values_) v = op(0.0, v);
        out.compress();
        return out;
    }

    static std::vector<double> merged_cuts(const StepFunction& f, const StepFunction& g,
                                           double lo, double hi) {
        std::vector<double> cuts;
        cuts.reserve(f.breakpoints_.size() + g.breakpoints_.size());
        for (double x : f.breakpoints_)
            if (x >= lo && x <= hi) cuts.push_back(x);
        for (double x : g.breakpoints_)
            if (x >= lo && x <= hi) cuts.push_back(x);
        cuts.push_back(lo);
        cuts.push_back(hi);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        return cuts;
    }

    void normalize() {
        // collapse zero-width cells (can appear after aggressive dilations)
        std::size_t w = 0;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (breakpoints_[i] == breakpoints_[i + 1]) continue;
            breakpoints_[w] = breakpoints_[i];
            values_[w] = values_[i];
            ++w;
        }
        if (w == 0) { breakpoints_.clear(); values_.clear(); return; }
        breakpoints_[w] = breakpoints_[values_.size()];
        breakpoints_.resize(w + 1);
        values_.resize(w);
        compress();
    }

    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

inline double l2_distance(const StepFunction& f, const StepFunction& g) {
    return (f - g).lp_norm(2.0);
}

inline double sup_distance(const StepFunction& f, const StepFunction& g) {
    return (f - g).sup_norm();
}

} // namespace dyad
