#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dyad/haar.hpp"
#include "dyad/step_function.hpp"

namespace dyad {

/// Continuous piecewise-linear function with compact support; linear between
/// nodes, zero outside the node range.
class PiecewiseLinear {
  public:
    PiecewiseLinear() = default;

    PiecewiseLinear(std::vector<double> nodes, std::vector<double> values)
        : nodes_(std::move(nodes)), values_(std::move(values)) {
        if (nodes_.size() != values_.size())
            throw std::invalid_argument("PiecewiseLinear: node/value count mismatch");
        for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
            if (!(nodes_[i] < nodes_[i + 1]))
                throw std::invalid_argument("PiecewiseLinear: nodes not increasing");
    }

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& values() const { return values_; }

    double operator()(double x) const { return eval(x); }

    double eval(double x) const {
        if (nodes_.empty() || x < nodes_.front() || x > nodes_.back()) return 0.0;
        auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
        if (nodes_[i] == x) return values_[i];
        const double t = (x - nodes_[i - 1]) / (nodes_[i] - nodes_[i - 1]);
        return values_[i - 1] + t * (values_[i] - values_[i - 1]);
    }

    /// Re-expresses the polyline over a superset of nodes (values at the
    /// inserted nodes are the interpolated ones, so the function is unchanged).
    PiecewiseLinear refined(const std::vector<double>& extra_nodes) const {
        std::vector<double> xs = nodes_;
        for (double x : extra_nodes)
            if (x >= nodes_.front() && x <= nodes_.back()) xs.push_back(x);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        std::vector<double> vs(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) vs[i] = eval(xs[i]);
        return PiecewiseLinear(std::move(xs), std::move(vs));
    }

  private:
    std::vector<double> nodes_;
    std::vector<double> values_;
};

/// Exact correlation C(u) = \int f(a) g(a - u) da of two step functions;
/// piecewise linear with kinks among the breakpoint differences.
inline PiecewiseLinear correlate(const StepFunction& f, const StepFunction& g) {
    if (f.is_zero() || g.is_zero()) return {};
    std::vector<double> kinks;
    for (double xf : f.breakpoints())
        for (double xg : g.breakpoints()) kinks.push_back(xf - xg);
    std::sort(kinks.begin(), kinks.end());
    kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
    std::vector<double> vals(kinks.size());
    const auto& xs = f.breakpoints();
    const auto& vs = f.values();
    for (std::size_t k = 0; k < kinks.size(); ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < vs.size(); ++i)
            s += vs[i] * g.integral_over(xs[i] - kinks[k], xs[i + 1] - kinks[k]);
        vals[k] = s;
    }
    return PiecewiseLinear(std::move(kinks), std::move(vals));
}

/// The scale-zero correlation kernel gamma_0(y) = \int_0^1 h(y+t) h^1(t) dt
/// of the unit-interval Haar pair, exact and re-noded on the quarter-integer
/// lattice of [-1, 1].  Odd, vanishing at 0 and +-1, with |gamma_0(1/2)| = 1/2
/// and |gamma_0(3/4)| = 1/4.
inline PiecewiseLinear gamma0() {
    const DyadicInterval unit = DyadicInterval::unit();
    const PiecewiseLinear raw = correlate(haar_h(unit), haar_indicator(unit));
    std::vector<double> lattice;
    for (int i = -4; i <= 4; ++i) lattice.push_back(0.25 * i);
    return raw.refined(lattice);
}

/// sum_{j=j_min}^{j_max} 2^{-j} gamma_0(x 2^{-j})  (gamma_j = Dil^{(1)}_{2^j} gamma_0).
inline double gamma_sum(double x, int j_min, int j_max) {
    if (j_min > j_max) throw std::invalid_argument("gamma_sum: empty scale window");
    static const PiecewiseLinear g0 = gamma0();
    double s = 0.0;
    for (int j = j_min; j <= j_max; ++j)
        s += std::ldexp(g0.eval(std::ldexp(x, -j)), -j);
    return s;
}

/// Exact principal-value Hilbert transform of a step function at x (kernel
/// 1/y): sum of v_i log |(x - x_{i-1}) / (x - x_i)|.  The closed form is
/// evaluated away from breakpoints; callers should offset x by a fraction of
/// a cell if it lands on one.
inline double hilbert_pv(const StepFunction& f, double x) {
    const auto& xs = f.breakpoints();
    if (std::binary_search(xs.begin(), xs.end(), x))
        throw std::domain_error(
            "hilbert_pv: x sits on a breakpoint; offset it by half a cell");
    const auto& vs = f.values();
    double s = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        s += vs[i] * std::log(std::abs((x - xs[i]) / (x - xs[i + 1])));
    return s;
}

} // namespace dyad
