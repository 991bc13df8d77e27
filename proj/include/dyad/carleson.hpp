#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "dyad/expansion.hpp"
#include "dyad/interval.hpp"

namespace dyad {

struct StoppingDecomposition {
    // class index k holds intervals with 2^k <= |<f,h_I>|/sqrt|I| < 2^{k+1}
    std::map<int, std::vector<DyadicInterval>> classes;
    std::map<int, std::vector<DyadicInterval>> maximal;
    double carleson_sum = 0.0;
};

/// Stopping-time classes of an expansion, their inclusion-maximal elements,
/// and sum_k 2^{2k} sum_{I* maximal} |I*|.  Intervals with exactly zero
/// coefficient belong to no class.
inline StoppingDecomposition stopping_decomposition(const HaarExpansion& e) {
    StoppingDecomposition out;
    e.for_each([&](const DyadicInterval& i, double c) {
        if (c == 0.0) return;
        const double t = std::abs(c) * inv_sqrt_length(i.scale);
        int exp = 0;
        std::frexp(t, &exp); // t = m 2^exp, m in [1/2, 1)
        out.classes[exp - 1].push_back(i);
    });
    for (auto& [k, members] : out.classes) {
        std::vector<DyadicInterval>& maximal = out.maximal[k];
        for (const DyadicInterval& i : members) {
            bool dominated = false;
            for (const DyadicInterval& j : members) {
                if (j != i && j.contains(i)) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) maximal.push_back(i);
        }
        double mass = 0.0;
        for (const DyadicInterval& i : maximal) mass += i.length();
        out.carleson_sum += std::ldexp(mass, 2 * k);
    }
    return out;
}

struct EmbeddingTesting {
    double sup = 0.0;
    DyadicInterval argmax;
};

/// || P^{0,1,0}(b, h^1_J) ||_2 for every window interval J, evaluated from
/// the exact two-block formula: the I inside J and I strictly above J parts
/// of the output are orthogonal blocks.
inline EmbeddingTesting embedding_testing(const HaarExpansion& b) {
    const int d = b.depth();
    const int r = b.root().scale;
    // below[J] = sum of squared coefficients inside J (J included)
    std::vector<std::vector<double>> below(static_cast<std::size_t>(d));
    for (int l = d - 1; l >= 0; --l) {
        const auto& bl = b.levels()[static_cast<std::size_t>(l)];
        auto& sums = below[static_cast<std::size_t>(l)];
        sums.resize(bl.size());
        for (std::size_t i = 0; i < bl.size(); ++i) {
            double s = bl[i] * bl[i];
            if (l + 1 < d)
                s += below[static_cast<std::size_t>(l + 1)][2 * i] +
                     below[static_cast<std::size_t>(l + 1)][2 * i + 1];
            sums[i] = s;
        }
    }
    // above[J] = sum over strict ancestors I of c_I^2 / |I|^2
    EmbeddingTesting out;
    out.argmax = b.root();
    double best = 0.0;
    std::vector<double> above{0.0};
    for (int l = 0; l < d; ++l) {
        const auto& bl = b.levels()[static_cast<std::size_t>(l)];
        const double len = std::ldexp(1.0, r - l);
        for (std::size_t i = 0; i < bl.size(); ++i) {
            const double value = below[static_cast<std::size_t>(l)][i] / len + len * above[i];
            if (value > best) {
                best = value;
                out.argmax = b.interval_at(l, static_cast<std::int64_t>(i));
            }
        }
        if (l + 1 < d) {
            std::vector<double> next(bl.size() * 2);
            for (std::size_t i = 0; i < bl.size(); ++i) {
                const double a = above[i] + bl[i] * bl[i] / (len * len);
                next[2 * i] = a;
                next[2 * i + 1] = a;
            }
            above = std::move(next);
        }
    }
    out.sup = std::sqrt(best);
    return out;
}

inline double embedding_testing_sup(const HaarExpansion& b) { return embedding_testing(b).sup; }

} // namespace dyad
