#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace dyad {

/// An interval of the dyadic grid, [j*2^k, (j+1)*2^k).
///
/// `scale` is k (the length is 2^k), `position` is j.  All endpoint
/// arithmetic stays exact in double precision as long as |j| fits in the
/// 53-bit mantissa, which every operation in this library respects.
struct DyadicInterval {
    int scale = 0;
    std::int64_t position = 0;

    friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;

    double length() const { return std::ldexp(1.0, scale); }
    double left() const { return std::ldexp(static_cast<double>(position), scale); }
    double right() const { return std::ldexp(static_cast<double>(position + 1), scale); }
    double center() const { return 0.5 * (left() + right()); }

    DyadicInterval parent() const {
        // arithmetic shift = floor division, also for negative positions
        return {scale + 1, position >> 1};
    }
    DyadicInterval left_child() const { return {scale - 1, 2 * position}; }
    DyadicInterval right_child() const { return {scale - 1, 2 * position + 1}; }

    bool is_left_child() const { return (position & 1) == 0; }

    /// +1 if this interval is the left half of its parent, -1 otherwise.
    int sign() const { return is_left_child() ? +1 : -1; }

    /// Inclusive containment on the grid (every interval contains itself).
    bool contains(const DyadicInterval& other) const {
        if (other.scale > scale) return false;
        return (other.position >> (scale - other.scale)) == position;
    }

    bool contains_point(double x) const { return x >= left() && x < right(); }

    /// Serialization key, "scale:position".
    std::string key() const {
        return std::to_string(scale) + ":" + std::to_string(position);
    }

    static DyadicInterval unit() { return {0, 0}; }

    /// The interval at `scale` containing the point x.
    static DyadicInterval containing(double x, int scale) {
        return {scale, static_cast<std::int64_t>(std::floor(std::ldexp(x, -scale)))};
    }
};

struct DyadicIntervalHash {
    std::size_t operator()(const DyadicInterval& i) const {
        std::uint64_t h = static_cast<std::uint64_t>(i.position) * 0x9e3779b97f4a7c15ull;
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(i.scale)) + (h >> 31);
        return static_cast<std::size_t>(h * 0xbf58476d1ce4e5b9ull);
    }
};

} // namespace dyad
