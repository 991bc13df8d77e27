#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dyad/random.hpp"

namespace dyad {

using Complex = std::complex<double>;

/// Trigonometric polynomial sum_{|k| <= N} c_k e^{ik theta} with exact
/// coefficient arithmetic; the finite model for projections, the algebraic
/// Hilbert transform and Hankel symbols.
class SpectralPolynomial {
  public:
    SpectralPolynomial() : band_(0), coeffs_(1) {}

    explicit SpectralPolynomial(int band) : band_(band) {
        if (band < 0) throw std::invalid_argument("SpectralPolynomial: negative band");
        coeffs_.assign(2 * static_cast<std::size_t>(band) + 1, Complex{});
    }

    static SpectralPolynomial constant(Complex c) {
        SpectralPolynomial p(0);
        p.set(0, c);
        return p;
    }

    /// The single frequency e_k.
    static SpectralPolynomial mode(int k, Complex c = 1.0) {
        SpectralPolynomial p(std::abs(k));
        p.set(k, c);
        return p;
    }

    int band() const { return band_; }

    Complex coeff(int k) const {
        if (k < -band_ || k > band_) return {};
        return coeffs_[static_cast<std::size_t>(k + band_)];
    }

    void set(int k, Complex c) {
        if (k < -band_ || k > band_)
            throw std::out_of_range("SpectralPolynomial: frequency outside band");
        coeffs_[static_cast<std::size_t>(k + band_)] = c;
    }

    Complex eval(double theta) const {
        Complex s{};
        for (int k = -band_; k <= band_; ++k)
            s += coeff(k) * std::polar(1.0, k * theta);
        return s;
    }

    double l2_norm() const {
        double s = 0.0;
        for (const Complex& c : coeffs_) s += std::norm(c);
        return std::sqrt(s);
    }

    /// Largest k >= 0 carrying a nonzero coefficient; -1 if P_+ f = 0.
    int analytic_degree() const {
        for (int k = band_; k >= 0; --k)
            if (coeff(k) != Complex{}) return k;
        return -1;
    }

    /// Complex conjugate of the function: conj(f)^(k) = conj(f^(-k)).
    SpectralPolynomial conjugated() const {
        SpectralPolynomial out(band_);
        for (int k = -band_; k <= band_; ++k) out.set(k, std::conj(coeff(-k)));
        return out;
    }

    friend SpectralPolynomial operator+(const SpectralPolynomial& f, const SpectralPolynomial& g) {
        SpectralPolynomial out(std::max(f.band_, g.band_));
        for (int k = -out.band_; k <= out.band_; ++k) out.set(k, f.coeff(k) + g.coeff(k));
        return out;
    }
    friend SpectralPolynomial operator-(const SpectralPolynomial& f, const SpectralPolynomial& g) {
        SpectralPolynomial out(std::max(f.band_, g.band_));
        for (int k = -out.band_; k <= out.band_; ++k) out.set(k, f.coeff(k) - g.coeff(k));
        return out;
    }
    friend SpectralPolynomial operator*(Complex c, const SpectralPolynomial& f) {
        SpectralPolynomial out = f;
        for (Complex& x : out.coeffs_) x *= c;
        return out;
    }

    /// Exact product by coefficient convolution; bands add.
    friend SpectralPolynomial operator*(const SpectralPolynomial& f, const SpectralPolynomial& g) {
        SpectralPolynomial out(f.band_ + g.band_);
        for (int k = -f.band_; k <= f.band_; ++k) {
            const Complex fk = f.coeff(k);
            if (fk == Complex{}) continue;
            for (int l = -g.band_; l <= g.band_; ++l) out.set(k + l, out.coeff(k + l) + fk * g.coeff(l));
        }
        return out;
    }

  private:
    int band_;
    std::vector<Complex> coeffs_;
};

inline SpectralPolynomial multiply(const SpectralPolynomial& f, const SpectralPolynomial& g) {
    return f * g;
}

/// Projection onto frequencies k >= 0 (frequency zero counts as analytic).
inline SpectralPolynomial proj_plus(const SpectralPolynomial& f) {
    SpectralPolynomial out(f.band());
    for (int k = 0; k <= f.band(); ++k) out.set(k, f.coeff(k));
    return out;
}

/// Projection onto frequencies k < 0.
inline SpectralPolynomial proj_minus(const SpectralPolynomial& f) {
    SpectralPolynomial out(f.band());
    for (int k = -f.band(); k < 0; ++k) out.set(k, f.coeff(k));
    return out;
}

/// H = P_+ - P_- = I - 2 P_-; an involution on the model.
inline SpectralPolynomial hilbert_alg(const SpectralPolynomial& f) {
    return proj_plus(f) - proj_minus(f);
}

/// <f, g> = sum f^(k) conj(g^(k)).
inline Complex spectral_inner(const SpectralPolynomial& f, const SpectralPolynomial& g) {
    Complex s{};
    const int band = std::max(f.band(), g.band());
    for (int k = -band; k <= band; ++k) s += f.coeff(k) * std::conj(g.coeff(k));
    return s;
}

inline SpectralPolynomial random_spectral(int band, RandomStream& rng) {
    SpectralPolynomial p(band);
    for (int k = -band; k <= band; ++k) p.set(k, Complex{rng.gaussian(), rng.gaussian()});
    return p;
}

/// Random analytic polynomial of degree <= deg with unit l2 norm.
inline SpectralPolynomial random_unit_analytic(int deg, RandomStream& rng) {
    SpectralPolynomial p(deg);
    for (int k = 0; k <= deg; ++k) p.set(k, Complex{rng.gaussian(), rng.gaussian()});
    const double n = p.l2_norm();
    if (n == 0.0) return SpectralPolynomial::mode(0);
    return Complex{1.0 / n, 0.0} * p;
}

} // namespace dyad
