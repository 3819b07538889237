#pragma once

#include <random>

#include "z2s/exactmat.hpp"
#include "z2s/grouprings.hpp"

namespace testutil {

using z2s::Int;
using z2s::IntMatrix;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240613);
    return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline IntMatrix random_matrix(std::size_t r, std::size_t c, long bound) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(-bound, bound);
    return m;
}

// Product of random elementary matrices and signs.
inline IntMatrix random_unimodular(std::size_t n, int steps = 6, long bound = 2) {
    IntMatrix m = IntMatrix::identity(n);
    if (n == 0) return m;
    for (int s = 0; s < steps; ++s) {
        std::size_t i = uniform(0, n - 1), j = uniform(0, n - 1);
        if (i == j) {
            if (uniform(0, 1)) m.negate_col(i);
            continue;
        }
        m.add_col(i, j, Int(uniform(-bound, bound)));
    }
    return m;
}

inline z2s::GrElt random_gr(long bound) { return {uniform(-bound, bound), uniform(-bound, bound)}; }

// Invertible over Z[Z/2]: elementary operations and unit scalings.
inline z2s::GrMatrix random_gr_unimodular(std::size_t n, int steps = 5, long bound = 1) {
    z2s::GrMatrix m = z2s::GrMatrix::identity(n);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = uniform(0, n - 1), j = uniform(0, n - 1);
        z2s::GrMatrix e = z2s::GrMatrix::identity(n);
        if (i == j) {
            static const z2s::GrElt units[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            e.set(i, i, units[uniform(0, 3)]);
        } else {
            e.set(i, j, random_gr(bound));
        }
        m = m * e;
    }
    return m;
}

}  // namespace testutil
