#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "lorenz/laps.hpp"
#include "lorenz/spectral.hpp"

using namespace lorenz;
using lorenz::testing::Rng;

namespace {

Rational q(long num, long den = 1) { return canonical(Rational(num, den)); }

LorenzMap uniform_map(const Rational& b, const Rational& p) {
    return LorenzMap(make_uniform_pair(b), p, Side::Upper);
}

}  // namespace

TEST_CASE("lap counts of a uniform map") {
    const LorenzMap m = uniform_map(q(3, 2), q(1, 2));
    const LapCount one = lap_count(m, 1);
    CHECK(one.laps == 2);
    CHECK(one.variation_exact == q(3, 2));
    const LapCount two = lap_count(m, 2);
    CHECK(two.laps == 4);
    CHECK(two.variation_exact == q(9, 4));
    const LapCount three = lap_count(m, 3);
    CHECK(three.laps == 8);
    CHECK(three.variation_exact == q(27, 8));
    CHECK(three.variation == 3.375);

    const LapCount floats = lap_count(m, 3, NumericMode::Float);
    CHECK(floats.laps == 8);
    CHECK(floats.variation == doctest::Approx(3.375).epsilon(1e-12));
    CHECK_FALSE(floats.variation_exact);

    const auto history = lap_history(m, 3);
    REQUIRE(history.size() == 3);
    CHECK(history[1].laps == 4);
    CHECK(history[2].step == 3u);

    CHECK_THROWS_AS(lap_count(m, 0), InvalidArgument);
    CHECK_THROWS_AS(lap_count(m, 30, NumericMode::Exact, 3), ResourceLimit);
}

TEST_CASE("lap classes") {
    const LapState<Rational> state = lap_state<Rational>(uniform_map(q(3, 2), q(1, 2)), 2);
    CHECK(state.step == 2u);
    CHECK(state.total_laps() == 4);
    CHECK(state.total_variation() == q(9, 4));
    for (const auto& c : state.classes) {
        CHECK(c.lo < c.hi);
        CHECK(c.lo >= 0);
        CHECK(c.hi <= 1);
        CHECK(c.multiplicity > 0);
    }
}

TEST_CASE("brute-force oracle") {
    const LorenzMap m = uniform_map(q(3, 2), q(1, 2));
    CHECK(lap_count_bruteforce(m, 1, 100000) == 2u);
    CHECK(lap_count_bruteforce(m, 2, 100000) == 4u);
    CHECK(lap_count_bruteforce(m, 3, 100000) == 8u);

    const LorenzMap fig(make_affine_pair(q(11, 10), q(19, 10)), q(7, 10), Side::Upper);
    CHECK(BigInt(lap_count_bruteforce(fig, 6, 1000000)) == lap_count(fig, 6).laps);

    CHECK_THROWS_AS(lap_count_bruteforce(m, 13, 100000), InvalidArgument);
    CHECK_THROWS_AS(lap_count_bruteforce(m, 2, 999), InvalidArgument);
}

TEST_CASE("entropy from variation growth") {
    const LapsResult uniform = entropy_laps(uniform_map(q(3, 2), q(1, 2)), 50, 10);
    CHECK(std::abs(uniform.estimate.entropy - std::log(1.5)) <= 1e-14);
    CHECK(uniform.estimate.method == Method::Laps);
    CHECK(uniform.estimate.order == 50u);
    CHECK_FALSE(uniform.estimate.certified);
    CHECK(uniform.estimate.error_bound <= 1e-14);
    Rational b_to_50 = 1;
    for (int i = 0; i < 50; ++i) b_to_50 *= q(3, 2);
    CHECK(uniform.at_n.variation_exact == b_to_50);

    const LapsResult steep = entropy_laps(uniform_map(q(9, 5), q(1, 2)), 50, 10);
    CHECK(std::abs(steep.estimate.entropy - std::log(1.8)) <= 1e-12);

    const BranchPair fig = make_affine_pair(q(11, 10), q(19, 10));
    const LapsResult affine = entropy_laps(LorenzMap(fig, q(7, 10), Side::Upper), 50, 10);
    const EntropyEstimate spectral = entropy_spectral(fig, q(7, 10));
    CHECK(std::abs(affine.estimate.entropy - spectral.entropy) <= 0.02);

    const LapsResult floats = entropy_laps(LorenzMap(fig, q(7, 10), Side::Upper), 50, 10, NumericMode::Float);
    CHECK(std::abs(floats.estimate.entropy - affine.estimate.entropy) <= 1e-3);

    CHECK_THROWS_AS(entropy_laps(uniform_map(q(3, 2), q(1, 2)), 10, 10), InvalidArgument);
    CHECK_THROWS_AS(entropy_laps(uniform_map(q(3, 2), q(1, 2)), 10, 0), InvalidArgument);
}

TEST_CASE("property: growth, submultiplicativity and variation bounds") {
    Rng rng(0x5eed09);
    for (int trial = 0; trial < 40; ++trial) {
        const BranchPair bp = trial % 3 ? lorenz::testing::random_affine_pair(rng) : lorenz::testing::random_pwl_pair(rng);
        const Rational p = lorenz::testing::random_p(rng, bp);
        const LorenzMap m(bp, p, trial % 2 ? Side::Upper : Side::Lower);
        const std::size_t n_max = 20;
        const auto history = lap_history(m, n_max);
        REQUIRE(history.size() == n_max);
        auto laps = [&](std::size_t n) { return history[n - 1].laps; };

        Rational lower = 1, upper = 1;
        for (std::size_t n = 1; n <= n_max; ++n) {
            lower *= bp.c_min();
            upper *= bp.c_max();
            const LapCount& c = history[n - 1];
            REQUIRE(c.variation_exact);
            CHECK(*c.variation_exact >= lower);
            CHECK(*c.variation_exact <= upper);
            CHECK(c.classes <= 4 * n + 4);
            if (n > 1) {
                CHECK(laps(n) >= laps(n - 1));
                CHECK(laps(n) <= 2 * laps(n - 1));
            }
        }
        for (std::size_t n = 1; n <= 10; ++n) {
            for (std::size_t k = 1; k <= 10; ++k) CHECK(laps(n + k) <= laps(n) * laps(k));
        }
    }
}

TEST_CASE("property: propagation agrees with the brute-force oracle") {
    Rng rng(0x5eed0a);
    for (int trial = 0; trial < 6; ++trial) {
        const BranchPair bp = lorenz::testing::random_affine_pair(rng);
        const Rational p = lorenz::testing::random_p(rng, bp);
        const LorenzMap m(bp, p, Side::Upper);
        const auto history = lap_history(m, 8);
        for (std::size_t n = 1; n <= 8; ++n) {
            CAPTURE(n);
            CHECK(BigInt(lap_count_bruteforce(m, n, 200000)) == history[n - 1].laps);
        }
    }
}
