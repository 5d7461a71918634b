#pragma once

// Lap counting for T^n. Every lap of T^n maps onto an interval whose endpoints
// lie on the forward orbits of 0, 1 and p, so laps are tracked as image-interval
// classes with big-integer multiplicities instead of being enumerated.

#include <cstddef>
#include <optional>
#include <vector>

#include "lorenz/estimate.hpp"
#include "lorenz/lorenz_map.hpp"

namespace lorenz {

template <class T>
struct LapClass {
    T lo;
    T hi;
    BigInt multiplicity;
};

/// Image-interval classes of the laps of T^step.
template <class T>
struct LapState {
    std::vector<LapClass<T>> classes;  // sorted by (lo, hi)
    std::size_t step = 0;

    BigInt total_laps() const;
    T total_variation() const;
};

struct LapCount {
    std::size_t step = 0;
    BigInt laps;
    double variation = 0;
    double log_variation = 0;
    std::optional<Rational> variation_exact;  // exact mode only
    std::size_t classes = 0;
};

inline constexpr std::size_t kDefaultClassCap = std::size_t{1} << 20;

/// Lap count and total variation after each of steps 1..n (element k-1 is step k).
/// Throws ResourceLimit when the class count exceeds `class_cap`.
std::vector<LapCount> lap_history(const LorenzMap& m, std::size_t n, NumericMode mode = NumericMode::Exact,
                                  std::size_t class_cap = kDefaultClassCap);

/// The class structure itself after n steps (T is Rational or double).
template <class T>
LapState<T> lap_state(const LorenzMap& m, std::size_t n, std::size_t class_cap = kDefaultClassCap);

/// Laps and variation of T^n.
LapCount lap_count(const LorenzMap& m, std::size_t n, NumericMode mode = NumericMode::Exact,
                   std::size_t class_cap = kDefaultClassCap);

/// Test oracle: samples T^n on `grid` equally spaced points of [0,1] and counts
/// the maximal runs on which T^n increases continuously (a run ends at a drop or
/// at a rise steeper than the largest slope of T^n allows). Needs n <= 12 and
/// grid >= 10^4.
std::size_t lap_count_bruteforce(const LorenzMap& m, std::size_t n, std::size_t grid);

struct LapsResult {
    EntropyEstimate estimate;
    LapCount at_n;
};

/// Windowed growth rate (ln Var(T^n) - ln Var(T^{n-window})) / window. The
/// heuristic error bound is the change of that slope over the previous window.
LapsResult entropy_laps(const LorenzMap& m, std::size_t n = 50, std::size_t window = 10,
                        NumericMode mode = NumericMode::Exact, std::size_t class_cap = kDefaultClassCap);

}  // namespace lorenz
