#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "lorenz/branch.hpp"

namespace lorenz {

/// Which branch owns the discontinuity: the upper map sends p through f1,
/// the lower map through f0.
enum class Side { Upper, Lower };

std::string_view to_string(Side side);

/// T_p^+ or T_p^- built from a branch pair. Immutable once constructed.
class LorenzMap {
public:
    /// Throws DomainError unless a <= p <= b.
    LorenzMap(BranchPair branches, Rational p, Side side);

    const BranchPair& branches() const { return branches_; }
    const Rational& p() const { return p_; }
    double p_float() const { return p_float_; }
    Side side() const { return side_; }

    LorenzMap with_side(Side side) const { return LorenzMap(branches_, p_, side); }

    // Symbol of x: 0 when the map applies f0, 1 when it applies f1.
    int symbol(const Rational& x) const {
        return side_ == Side::Upper ? (x < p_ ? 0 : 1) : (x <= p_ ? 0 : 1);
    }
    int symbol(double x) const {
        return side_ == Side::Upper ? (x < p_float_ ? 0 : 1) : (x <= p_float_ ? 0 : 1);
    }

    // Unchecked single step; x must lie in [0,1].
    template <class T>
    T step(const T& x) const {
        return branches_.branch(symbol(x)).eval(x);
    }

private:
    BranchPair branches_;
    Rational p_;
    double p_float_;
    Side side_;
};

/// T(x), throwing DomainError for x outside [0,1].
template <class T>
T apply_map(const LorenzMap& m, const T& x) {
    if (x < 0 || x > 1) throw DomainError("apply_map: x outside [0,1]");
    return m.step(x);
}

/// [x, T(x), ..., T^n(x)].
template <class T>
std::vector<T> orbit(const LorenzMap& m, const T& x, std::size_t n) {
    if (x < 0 || x > 1) throw DomainError("orbit: x outside [0,1]");
    std::vector<T> out;
    out.reserve(n + 1);
    out.push_back(x);
    for (std::size_t k = 0; k < n; ++k) out.push_back(m.step(out.back()));
    return out;
}

}  // namespace lorenz
