#pragma once

#include <cmath>
#include <numbers>

#include "dyad/interval.hpp"
#include "dyad/step_function.hpp"

namespace dyad {

/// 2^{-scale/2} with a single rounding (exact for even scales).
inline double inv_sqrt_length(int scale) {
    if ((scale & 1) == 0) return std::ldexp(1.0, -scale / 2);
    return std::ldexp(std::numbers::sqrt2, -(scale + 1) / 2);
}

inline double sqrt_length(int scale) { return inv_sqrt_length(-scale); }

/// The three letters of the Haar alphabet on an interval I:
///   H0: mean-zero Haar function, -1/sqrt|I| on the left half, + on the right;
///   H1: L2-normalized indicator of I;
///   G:  the shifted companion, constant on quarters (-,+,+,-)/sqrt|I|.
enum class HaarKind { H0, H1, G };

/// Pointwise evaluation (right-continuous representative).
inline double haar_eval(const DyadicInterval& i, HaarKind kind, double x) {
    const double l = i.left();
    const double r = i.right();
    if (x < l || x >= r) return 0.0;
    const double a = inv_sqrt_length(i.scale);
    switch (kind) {
        case HaarKind::H1:
            return a;
        case HaarKind::H0:
            return x < i.center() ? -a : a;
        case HaarKind::G: {
            const double q = std::ldexp(1.0, i.scale - 2);
            if (x < l + q) return -a;
            if (x < r - q) return a;
            return -a;
        }
    }
    return 0.0;
}

inline StepFunction haar_h(const DyadicInterval& i) {
    const double a = inv_sqrt_length(i.scale);
    return StepFunction({i.left(), i.center(), i.right()}, {-a, a});
}

inline StepFunction haar_indicator(const DyadicInterval& i) {
    return StepFunction({i.left(), i.right()}, {inv_sqrt_length(i.scale)});
}

inline StepFunction haar_g(const DyadicInterval& i) {
    const double a = inv_sqrt_length(i.scale);
    const double q = std::ldexp(1.0, i.scale - 2);
    return StepFunction({i.left(), i.left() + q, i.right() - q, i.right()}, {-a, a, -a});
}

inline StepFunction haar_step(const DyadicInterval& i, HaarKind kind) {
    switch (kind) {
        case HaarKind::H0: return haar_h(i);
        case HaarKind::H1: return haar_indicator(i);
        case HaarKind::G: return haar_g(i);
    }
    return {};
}

/// The mother Haar function on [-1/2, 1/2); haar_h(I) equals its
/// I-associated dilation Tr_{c(I)} Dil^{(2)}_{|I|}.
inline StepFunction haar_mother() {
    return StepFunction({-0.5, 0.0, 0.5}, {-1.0, 1.0});
}

} // namespace dyad
