#include "lorenz/laps.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lorenz {

namespace {

constexpr double kFloatMergeTol = 1e-12;
constexpr double kFloatSplitMargin = 1e-12;

template <class T>
using ClassMap = std::map<std::pair<T, T>, BigInt>;

// Exact keys merge on equality; the float specialisation below merges near-equal keys.
void push_class(ClassMap<Rational>& next, Rational lo, Rational hi, const BigInt& mult) {
    next[{std::move(lo), std::move(hi)}] += mult;
}

void push_class(ClassMap<double>& next, double lo, double hi, const BigInt& mult) {
    auto it = next.lower_bound({lo - kFloatMergeTol, -1.0});
    for (; it != next.end() && it->first.first <= lo + kFloatMergeTol; ++it) {
        if (std::abs(it->first.second - hi) <= kFloatMergeTol) {
            it->second += mult;
            return;
        }
    }
    next[{lo, hi}] += mult;
}

bool splits(const Rational& lo, const Rational& hi, const Rational& p) { return lo < p && p < hi; }

bool splits(double lo, double hi, double p) { return lo < p - kFloatSplitMargin && hi > p + kFloatSplitMargin; }

// For a class that does not split: whether it lies on the f0 side of p.
bool left_of(const Rational& /*lo*/, const Rational& hi, const Rational& p) { return hi <= p; }

bool left_of(double lo, double hi, double p) { return lo + hi <= 2.0 * p; }

template <class T>
std::vector<LapCount> propagate(const LorenzMap& m, std::size_t n, std::size_t class_cap,
                                LapState<T>* final_state = nullptr) {
    const BranchSpec& f0 = m.branches().f0();
    const BranchSpec& f1 = m.branches().f1();
    const T p = from_rational<T>(m.p());
    const T f0_p = f0.eval(p);
    const T f1_p = f1.eval(p);

    ClassMap<T> classes;
    classes[{T(0), T(1)}] = 1;

    std::vector<LapCount> history;
    history.reserve(n);
    for (std::size_t step = 1; step <= n; ++step) {
        ClassMap<T> next;
        for (const auto& [key, mult] : classes) {
            const auto& [lo, hi] = key;
            if (splits(lo, hi, p)) {
                push_class(next, f0.eval(lo), f0_p, mult);
                push_class(next, f1_p, f1.eval(hi), mult);
            } else if (left_of(lo, hi, p)) {
                push_class(next, f0.eval(lo), f0.eval(hi), mult);
            } else {
                push_class(next, f1.eval(lo), f1.eval(hi), mult);
            }
        }
        if (next.size() > class_cap) {
            throw ResourceLimit("lap propagation exceeded " + std::to_string(class_cap) + " classes at step " +
                                std::to_string(step));
        }
        classes = std::move(next);

        LapCount count;
        count.step = step;
        count.classes = classes.size();
        T variation = 0;
        for (const auto& [key, mult] : classes) {
            count.laps += mult;
            if constexpr (std::is_same_v<T, Rational>) {
                variation += Rational(mult) * (key.second - key.first);
            } else {
                variation += mult.get_d() * (key.second - key.first);
            }
        }
        if constexpr (std::is_same_v<T, Rational>) {
            count.variation = to_double(variation);
            count.log_variation = log_rational(variation);
            count.variation_exact = std::move(variation);
        } else {
            count.variation = variation;
            count.log_variation = std::log(variation);
        }
        history.push_back(std::move(count));
    }
    if (final_state) {
        final_state->step = n;
        final_state->classes.clear();
        for (auto& [key, mult] : classes) final_state->classes.push_back({key.first, key.second, mult});
    }
    return history;
}

}  // namespace

template <class T>
BigInt LapState<T>::total_laps() const {
    BigInt total = 0;
    for (const auto& c : classes) total += c.multiplicity;
    return total;
}

template <class T>
T LapState<T>::total_variation() const {
    T total = 0;
    for (const auto& c : classes) {
        if constexpr (std::is_same_v<T, Rational>) {
            total += Rational(c.multiplicity) * (c.hi - c.lo);
        } else {
            total += c.multiplicity.get_d() * (c.hi - c.lo);
        }
    }
    return total;
}

template struct LapState<Rational>;
template struct LapState<double>;

std::vector<LapCount> lap_history(const LorenzMap& m, std::size_t n, NumericMode mode, std::size_t class_cap) {
    if (n < 1) throw InvalidArgument("lap counting needs n >= 1");
    return mode == NumericMode::Exact ? propagate<Rational>(m, n, class_cap) : propagate<double>(m, n, class_cap);
}

template <class T>
LapState<T> lap_state(const LorenzMap& m, std::size_t n, std::size_t class_cap) {
    if (n < 1) throw InvalidArgument("lap counting needs n >= 1");
    LapState<T> state;
    propagate<T>(m, n, class_cap, &state);
    return state;
}

template LapState<Rational> lap_state<Rational>(const LorenzMap&, std::size_t, std::size_t);
template LapState<double> lap_state<double>(const LorenzMap&, std::size_t, std::size_t);

LapCount lap_count(const LorenzMap& m, std::size_t n, NumericMode mode, std::size_t class_cap) {
    return lap_history(m, n, mode, class_cap).back();
}

std::size_t lap_count_bruteforce(const LorenzMap& m, std::size_t n, std::size_t grid) {
    if (n < 1 || n > 12) throw InvalidArgument("brute-force lap counting supports 1 <= n <= 12");
    if (grid < 10000) throw InvalidArgument("brute-force lap counting needs grid >= 10^4");

    const double h = 1.0 / static_cast<double>(grid - 1);
    const double max_rise = std::pow(to_double(m.branches().c_max()), static_cast<double>(n)) * h * (1.0 + 1e-6) + 1e-12;
    std::size_t runs = 1;
    double prev = 0;
    for (std::size_t i = 0; i < grid; ++i) {
        double y = static_cast<double>(i) * h;
        for (std::size_t k = 0; k < n; ++k) y = m.step(y);
        if (i > 0 && (y < prev || y - prev > max_rise)) ++runs;
        prev = y;
    }
    return runs;
}

LapsResult entropy_laps(const LorenzMap& m, std::size_t n, std::size_t window, NumericMode mode,
                        std::size_t class_cap) {
    if (window < 1 || n <= window) throw InvalidArgument("entropy_laps needs n > window >= 1");
    const auto history = lap_history(m, n, mode, class_cap);
    // log_var[k] = ln Var(T^k), with Var(T^0) = 1.
    std::vector<double> log_var(n + 1, 0.0);
    for (const auto& c : history) log_var[c.step] = c.log_variation;

    auto slope_at = [&](std::size_t k) {
        const std::size_t from = k >= window ? k - window : 0;
        return (log_var[k] - log_var[from]) / static_cast<double>(k - from);
    };

    LapsResult result;
    result.at_n = history.back();
    EntropyEstimate& est = result.estimate;
    est.method = Method::Laps;
    est.order = n;
    est.entropy = slope_at(n);
    est.gamma = std::exp(est.entropy);
    est.error_bound = std::abs(est.entropy - slope_at(n - window));
    est.certified = false;
    return result;
}

}  // namespace lorenz
