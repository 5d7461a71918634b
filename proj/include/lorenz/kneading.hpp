#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lorenz/lorenz_map.hpp"

namespace lorenz {

/// Finite word over {0,1}. The empty word is allowed.
class SymbolWord {
public:
    SymbolWord() = default;
    explicit SymbolWord(std::vector<std::uint8_t> symbols);
    /// Parses an ASCII string of '0'/'1'; throws ParseError otherwise.
    static SymbolWord from_string(std::string_view text);

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    int operator[](std::size_t k) const { return symbols_[k]; }
    const std::vector<std::uint8_t>& symbols() const { return symbols_; }

    void push_back(int symbol) { symbols_.push_back(static_cast<std::uint8_t>(symbol)); }

    /// First k symbols.
    SymbolWord prefix(std::size_t k) const;
    /// Left shift: drops the first symbol.
    SymbolWord shifted() const;
    SymbolWord concat(const SymbolWord& other) const;

    std::string to_string() const;

    friend bool operator==(const SymbolWord&, const SymbolWord&) = default;

private:
    std::vector<std::uint8_t> symbols_;
};

/// Lexicographic order with 0 < 1. Throws LengthMismatch for unequal lengths.
std::strong_ordering compare_lex(const SymbolWord& u, const SymbolWord& v);

/// Prefixes of alpha = lower itinerary of p and beta = upper itinerary of p.
struct KneadingPair {
    SymbolWord alpha;
    SymbolWord beta;
    std::optional<std::size_t> alpha_period;
    std::optional<std::size_t> beta_period;
    bool exact = true;  // computed in exact rational arithmetic
};

/// omega_0 ... omega_{n-1}: which branch the map applies at each iterate of x.
template <class T>
SymbolWord itinerary(const LorenzMap& m, const T& x, std::size_t n) {
    if (x < 0 || x > 1) throw DomainError("itinerary: x outside [0,1]");
    SymbolWord word;
    T y = x;
    for (std::size_t k = 0; k < n; ++k) {
        const int s = m.symbol(y);
        word.push_back(s);
        if (k + 1 < n) y = m.branches().branch(s).eval(y);
    }
    return word;
}

/// In exact mode the periods are filled in whenever (T^±)^k(p) = p for some k < n.
KneadingPair kneading_prefixes(const BranchPair& bp, const Rational& p, std::size_t n,
                               NumericMode mode = NumericMode::Exact);

struct PeriodResult {
    std::optional<std::size_t> period;
    bool certified = true;
};

/// Smallest k <= n_max with (T_p^±)^k(p) = p. Exact mode is certified; float mode
/// returns a heuristic candidate when |T^k(p) - p| < tol and throws ModeError if
/// `require_certified` is set.
PeriodResult detect_period(const BranchPair& bp, const Rational& p, Side side, std::size_t n_max,
                           NumericMode mode = NumericMode::Exact, bool require_certified = true,
                           double tol = 1e-12);

}  // namespace lorenz
