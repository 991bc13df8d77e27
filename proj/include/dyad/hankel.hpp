#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dyad/random.hpp"
#include "dyad/spectral.hpp"

namespace dyad {

/// Matrix avatar of the Hankel operator phi -> P_+(b conj(phi)):
/// A[n][m] = b^(n+m), constant along anti-diagonals.  Exact (all singular
/// values of the operator present) once size >= analytic degree + 1;
/// otherwise `truncated` is set.
class HankelMatrix {
  public:
    HankelMatrix(const SpectralPolynomial& b, int size) : size_(size) {
        if (size < 1) throw std::invalid_argument("HankelMatrix: size must be positive");
        anti_.resize(2 * static_cast<std::size_t>(size) - 1);
        for (int k = 0; k < static_cast<int>(anti_.size()); ++k)
            anti_[static_cast<std::size_t>(k)] = b.coeff(k);
        truncated_ = b.analytic_degree() + 1 > size;
    }

    int size() const { return size_; }
    bool truncated() const { return truncated_; }

    Complex entry(int n, int m) const {
        if (n < 0 || m < 0 || n >= size_ || m >= size_)
            throw std::out_of_range("HankelMatrix: index outside matrix");
        return anti_[static_cast<std::size_t>(n + m)];
    }

    /// (A v)_n = sum_m A[n][m] v_m.
    std::vector<Complex> apply(const std::vector<Complex>& v) const {
        std::vector<Complex> out(static_cast<std::size_t>(size_));
        for (int n = 0; n < size_; ++n) {
            Complex s{};
            for (int m = 0; m < size_; ++m) s += entry(n, m) * v[static_cast<std::size_t>(m)];
            out[static_cast<std::size_t>(n)] = s;
        }
        return out;
    }

    /// (A^H v)_m = sum_n conj(A[n][m]) v_n.
    std::vector<Complex> apply_adjoint(const std::vector<Complex>& v) const {
        std::vector<Complex> out(static_cast<std::size_t>(size_));
        for (int m = 0; m < size_; ++m) {
            Complex s{};
            for (int n = 0; n < size_; ++n)
                s += std::conj(entry(n, m)) * v[static_cast<std::size_t>(n)];
            out[static_cast<std::size_t>(m)] = s;
        }
        return out;
    }

  private:
    int size_;
    std::vector<Complex> anti_;
    bool truncated_ = false;
};

inline HankelMatrix hankel_matrix(const SpectralPolynomial& b, int size) {
    return HankelMatrix(b, size);
}

struct HankelNormResult {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Largest singular value of the Hankel matrix by power iteration on A^H A,
/// tolerance 1e-10 on the Rayleigh estimates.
inline HankelNormResult hankel_norm(const SpectralPolynomial& b, int size,
                                    int max_iterations = 20000) {
    const HankelMatrix a(b, size);
    HankelNormResult res;
    std::vector<Complex> v(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) // deterministic, non-degenerate start
        v[static_cast<std::size_t>(i)] = Complex{1.0, 0.25 + static_cast<double>(i)};
    auto norm = [](const std::vector<Complex>& x) {
        double s = 0.0;
        for (const Complex& c : x) s += std::norm(c);
        return std::sqrt(s);
    };
    double vn = norm(v);
    for (auto& c : v) c /= vn;
    double prev = -1.0;
    for (int it = 0; it < max_iterations; ++it) {
        const std::vector<Complex> u = a.apply(v);
        const double sigma = norm(u);
        res.value = sigma;
        res.iterations = it + 1;
        if (sigma == 0.0) {
            res.converged = true;
            return res;
        }
        if (prev >= 0.0 && std::abs(sigma - prev) <= 1e-10 * std::max(1.0, sigma)) {
            res.converged = true;
            return res;
        }
        prev = sigma;
        v = a.apply_adjoint(u);
        const double n = norm(v);
        if (n == 0.0) {
            res.converged = true;
            return res;
        }
        for (auto& c : v) c /= n;
    }
    return res;
}

/// Residual of [b, H] f = 2 P_-(b P_+ f) - 2 P_+(b P_- f), all products
/// exact; bands must fit under the guard so nothing is truncated.
inline double commutator_identity_check(const SpectralPolynomial& b, const SpectralPolynomial& f,
                                        int band_guard) {
    if (b.band() + f.band() > band_guard)
        throw std::invalid_argument("commutator_identity_check: band overflow");
    const SpectralPolynomial lhs = b * hilbert_alg(f) - hilbert_alg(b * f);
    const SpectralPolynomial rhs =
        Complex{2.0, 0.0} * (proj_minus(b * proj_plus(f)) - proj_plus(b * proj_minus(f)));
    return (lhs - rhs).l2_norm();
}

/// Best sampled value of |<P_+ b, psi phi>| over unit-norm analytic pairs:
/// a deterministic coordinate-pair sweep seeds the running maximum, then
/// seeded random pairs refine it, alternating independent draws with pairs
/// whose psi is the form-aligned response to a random phi.  Nondecreasing in
/// `samples` by construction, and never above the Hankel norm.
inline double nehari_lower_bound(const SpectralPolynomial& b, int samples, std::uint64_t seed) {
    const SpectralPolynomial bp = proj_plus(b);
    const int deg = std::max(bp.analytic_degree(), 0);
    double best = 0.0;
    auto consider = [&](const SpectralPolynomial& psi, const SpectralPolynomial& phi) {
        best = std::max(best, std::abs(spectral_inner(bp, psi * phi)));
    };
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; i + j <= deg; ++j)
            consider(SpectralPolynomial::mode(i), SpectralPolynomial::mode(j));
    RandomStream rng(seed);
    for (int s = 0; s < samples; ++s) {
        const SpectralPolynomial phi = random_unit_analytic(deg, rng);
        if (s % 2 == 0) {
            consider(random_unit_analytic(deg, rng), phi);
            continue;
        }
        // psi maximizing the form for this phi: psi_n proportional to
        // sum_j b^(n+j) conj(phi^(j))
        SpectralPolynomial psi(deg);
        for (int n = 0; n <= deg; ++n) {
            Complex w{};
            for (int j = 0; j <= deg; ++j) w += bp.coeff(n + j) * std::conj(phi.coeff(j));
            psi.set(n, w);
        }
        const double nw = psi.l2_norm();
        if (nw == 0.0) continue;
        consider(Complex{1.0 / nw, 0.0} * psi, phi);
    }
    return best;
}

namespace detail {

/// Solves the Hermitian positive-definite system A x = rhs by Cholesky.
inline std::vector<Complex> solve_hermitian(std::vector<std::vector<Complex>> a,
                                            std::vector<Complex> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j][j].real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(a[j][k]);
        d = std::max(d, 1e-14);
        const double l = std::sqrt(d);
        a[j][j] = l;
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i][k] * std::conj(a[j][k]);
            a[i][j] = s / l;
        }
    }
    // forward then backward substitution
    for (std::size_t i = 0; i < n; ++i) {
        Complex s = rhs[i];
        for (std::size_t k = 0; k < i; ++k) s -= a[i][k] * rhs[k];
        rhs[i] = s / a[i][i].real();
    }
    for (std::size_t ii = n; ii-- > 0;) {
        Complex s = rhs[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(a[k][ii]) * rhs[k];
        rhs[ii] = s / a[ii][ii].real();
    }
    return rhs;
}

} // namespace detail

struct NehariReport {
    double sigma0 = 0.0;       // Hankel norm of the symbol
    double inf_estimate = 0.0; // best sampled sup norm over anti-analytic corrections
    double gap = 0.0;          // inf_estimate - sigma0
    int iterations_used = 0;
    bool converged = false;
    bool norm_converged = false;
    int degree_budget = 0;
    int sample_points = 0;
    std::uint64_t seed = 0;
};

/// Numerical surrogate for the extremal-symbol direction: minimizes the
/// sampled sup norm of b - a over anti-analytic a of degree <= budget by
/// Lawson-weighted least squares with a kept-best iterate, so the reported
/// objective never increases.  Always >= sigma0 up to sampling tolerance.
inline NehariReport nehari_inf_estimate(const SpectralPolynomial& b, int degree_budget,
                                        int iterations, std::uint64_t seed) {
    if (degree_budget < b.band())
        throw std::invalid_argument("nehari_inf_estimate: degree budget below the symbol band");
    NehariReport rep;
    rep.degree_budget = degree_budget;
    rep.seed = seed;

    const HankelNormResult hn = hankel_norm(b, std::max(b.analytic_degree() + 1, 1));
    rep.sigma0 = hn.value;
    rep.norm_converged = hn.converged;

    const int s = 8 * (b.band() + degree_budget) + 1;
    rep.sample_points = s;
    std::vector<double> thetas(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i)
        thetas[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * i / s;
    std::vector<Complex> target(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) target[static_cast<std::size_t>(i)] = b.eval(thetas[static_cast<std::size_t>(i)]);

    const std::size_t nb = static_cast<std::size_t>(degree_budget); // a_k, k = -1..-budget
    auto design = [&](std::size_t row, std::size_t col) {
        return std::polar(1.0, -static_cast<double>(col + 1) * thetas[row]);
    };
    auto objective = [&](const std::vector<Complex>& a) {
        double m = 0.0;
        for (std::size_t i = 0; i < target.size(); ++i) {
            Complex r = target[i];
            for (std::size_t k = 0; k < nb; ++k) r -= a[k] * design(i, k);
            m = std::max(m, std::abs(r));
        }
        return m;
    };

    // start from the anti-analytic part of b itself
    std::vector<Complex> best(nb, Complex{});
    for (int k = 1; k <= std::min(degree_budget, b.band()); ++k)
        best[static_cast<std::size_t>(k - 1)] = b.coeff(-k);
    double best_obj = objective(best);

    std::vector<double> weights(static_cast<std::size_t>(s), 1.0);
    std::vector<Complex> current = best;
    int stagnant = 0;
    int restarts_left = 1;
    for (int it = 0; it < iterations; ++it) {
        rep.iterations_used = it + 1;
        // weighted least squares via the Toeplitz normal equations
        std::vector<Complex> t(2 * nb, Complex{});
        double w0 = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) w0 += weights[i];
        std::vector<std::vector<Complex>> gram(nb, std::vector<Complex>(nb));
        for (std::size_t d = 1; d < nb; ++d) {
            Complex s1{};
            for (std::size_t i = 0; i < weights.size(); ++i)
                s1 += weights[i] * std::polar(1.0, static_cast<double>(d) * thetas[i]);
            t[d] = s1;
        }
        for (std::size_t r = 0; r < nb; ++r)
            for (std::size_t c = 0; c < nb; ++c) {
                if (r == c)
                    gram[r][c] = w0;
                else if (r > c)
                    gram[r][c] = t[r - c];
                else
                    gram[r][c] = std::conj(t[c - r]);
            }
        std::vector<Complex> rhs(nb, Complex{});
        for (std::size_t k = 0; k < nb; ++k) {
            Complex s1{};
            for (std::size_t i = 0; i < weights.size(); ++i)
                s1 += weights[i] * std::conj(design(i, k)) * target[i];
            rhs[k] = s1;
        }
        current = detail::solve_hermitian(std::move(gram), std::move(rhs));
        const double obj = objective(current);
        if (obj < best_obj - 1e-8) {
            stagnant = 0;
            best_obj = obj;
            best = current;
        } else {
            if (obj < best_obj) {
                best_obj = obj;
                best = current;
            }
            ++stagnant;
        }
        if (stagnant >= 25) { // improvements stalled below 1e-8
            if (restarts_left > 0) { // one fresh-weight restart from the best point
                --restarts_left;
                stagnant = 0;
                current = best;
                std::fill(weights.begin(), weights.end(), 1.0);
                continue;
            }
            rep.converged = true;
            break;
        }
        // Lawson update: re-weight by the residual magnitudes
        double total = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            Complex r = target[i];
            for (std::size_t k = 0; k < nb; ++k) r -= current[k] * design(i, k);
            weights[i] *= std::max(std::abs(r), 1e-14);
            total += weights[i];
        }
        for (double& w : weights) w *= static_cast<double>(s) / total;
    }
    rep.inf_estimate = best_obj;
    rep.gap = rep.inf_estimate - rep.sigma0;
    return rep;
}

} // namespace dyad
