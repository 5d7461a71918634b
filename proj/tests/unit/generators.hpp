#pragma once

// Seeded random inputs for the property tests.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "lorenz/branch.hpp"
#include "lorenz/lorenz_map.hpp"

namespace lorenz::testing {

using Rng = std::mt19937_64;

inline Rational random_fraction(Rng& rng, long lo, long hi, long den) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return canonical(Rational(dist(rng), den));
}

/// Slopes b0, b1 with small denominators, both > 1 and b0 + b1 > b0 b1.
inline BranchPair random_affine_pair(Rng& rng) {
    for (;;) {
        Rational b0 = random_fraction(rng, 21, 59, 20);
        Rational b1 = random_fraction(rng, 21, 59, 20);
        b0.canonicalize();
        b1.canonicalize();
        if (b0 + b1 > b0 * b1) return make_affine_pair(b0, b1);
    }
}

/// p strictly inside [a, b] on a 1/1000 lattice of that interval.
inline Rational random_p(Rng& rng, const BranchPair& bp) {
    const Rational u = random_fraction(rng, 1, 999, 1000);
    Rational p = bp.a() + (bp.b() - bp.a()) * u;
    p.canonicalize();
    return p;
}

/// Strictly increasing pieces with slopes in (1, 2], chosen so that a <= b.
inline std::vector<BranchSpec::Point> random_pwl_points(Rng& rng, bool left) {
    std::uniform_int_distribution<int> pieces(1, 4);
    const int k = pieces(rng);
    std::vector<Rational> dy;
    Rational total = 0;
    for (int i = 0; i < k; ++i) {
        dy.push_back(random_fraction(rng, 1, 10, 1));
        total += dy.back();
    }
    std::vector<Rational> dx;
    Rational width = 0;
    for (int i = 0; i < k; ++i) {
        dy[i] /= total;
        Rational slope = random_fraction(rng, 11, 20, 10);
        dx.push_back(dy[i] / slope);
        width += dx.back();
    }
    std::vector<BranchSpec::Point> points;
    Rational x = left ? Rational(0) : 1 - width;
    Rational y = 0;
    points.emplace_back(x, y);
    for (int i = 0; i < k; ++i) {
        x += dx[i];
        y += dy[i];
        x.canonicalize();
        y.canonicalize();
        points.emplace_back(x, y);
    }
    points.back().second = 1;
    return points;
}

inline BranchPair random_pwl_pair(Rng& rng) {
    for (;;) {
        auto f0 = BranchSpec::piecewise_linear(random_pwl_points(rng, true));
        auto f1 = BranchSpec::piecewise_linear(random_pwl_points(rng, false));
        if (f1.domain_lo() <= f0.domain_hi()) return BranchPair(std::move(f0), std::move(f1));
    }
}

}  // namespace lorenz::testing
