#include <doctest.h>

#include "generators.hpp"
#include "lorenz/lorenz_map.hpp"

using namespace lorenz;
using lorenz::testing::Rng;

namespace {

Rational q(long num, long den = 1) { return canonical(Rational(num, den)); }

}  // namespace

TEST_CASE("upper and lower maps at the discontinuity") {
    const BranchPair uniform = make_uniform_pair(q(3, 2));
    const LorenzMap upper(uniform, q(1, 2), Side::Upper);
    const LorenzMap lower = upper.with_side(Side::Lower);
    CHECK(apply_map(upper, q(1, 2)) == q(1, 4));
    CHECK(apply_map(lower, q(1, 2)) == q(3, 4));
    CHECK(apply_map(upper, q(1, 5)) == q(3, 10));
    CHECK(apply_map(upper, 0.2) == doctest::Approx(0.3));
    CHECK(apply_map(lower, 0.5) == 0.75);
    CHECK_THROWS_AS(apply_map(upper, q(11, 10)), DomainError);
    CHECK_THROWS_AS(apply_map(upper, -0.01), DomainError);
}

TEST_CASE("p must lie in [a, b]") {
    const BranchPair uniform = make_uniform_pair(q(3, 2));
    CHECK_NOTHROW(LorenzMap(uniform, q(1, 3), Side::Upper));
    CHECK_NOTHROW(LorenzMap(uniform, q(2, 3), Side::Lower));
    CHECK_THROWS_AS(LorenzMap(uniform, q(1, 4), Side::Upper), DomainError);
    CHECK_THROWS_AS(LorenzMap(uniform, q(7, 10), Side::Upper), DomainError);
}

TEST_CASE("orbits") {
    const BranchPair uniform = make_uniform_pair(q(3, 2));
    const LorenzMap period_two(uniform, q(3, 5), Side::Upper);
    CHECK(orbit(period_two, q(3, 5), 3) == std::vector<Rational>{q(3, 5), q(2, 5), q(3, 5), q(2, 5)});

    const LorenzMap half(uniform, q(1, 2), Side::Upper);
    CHECK(orbit(half, q(1, 2), 3) == std::vector<Rational>{q(1, 2), q(1, 4), q(3, 8), q(9, 16)});
    CHECK(orbit(half, q(1, 7), 0) == std::vector<Rational>{q(1, 7)});
    CHECK(orbit(half, 0.3, 0) == std::vector<double>{0.3});

    const auto float_orbit = orbit(half, 0.5, 3);
    REQUIRE(float_orbit.size() == 4);
    CHECK(float_orbit[3] == 0.5625);
    CHECK_THROWS_AS(orbit(half, q(2), 1), DomainError);
}

TEST_CASE("property: upper and lower maps differ only at p") {
    Rng rng(0x5eed02);
    for (int trial = 0; trial < 100; ++trial) {
        const BranchPair bp = trial % 2 ? lorenz::testing::random_pwl_pair(rng) : lorenz::testing::random_affine_pair(rng);
        const Rational p = lorenz::testing::random_p(rng, bp);
        const LorenzMap upper(bp, p, Side::Upper);
        const LorenzMap lower(bp, p, Side::Lower);
        for (int s = 0; s < 50; ++s) {
            Rational x = lorenz::testing::random_fraction(rng, 0, 997, 997);
            x.canonicalize();
            if (x == p) continue;
            CHECK(apply_map(upper, x) == apply_map(lower, x));
        }
        CHECK(apply_map(upper, p) == bp.f1().eval(p));
        CHECK(apply_map(lower, p) == bp.f0().eval(p));
    }
}
