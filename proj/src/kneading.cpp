#include "lorenz/kneading.hpp"

#include <cmath>

namespace lorenz {

SymbolWord::SymbolWord(std::vector<std::uint8_t> symbols) : symbols_(std::move(symbols)) {
    for (auto s : symbols_) {
        if (s > 1) throw ParseError("symbol words use the alphabet {0,1}");
    }
}

SymbolWord SymbolWord::from_string(std::string_view text) {
    std::vector<std::uint8_t> symbols;
    symbols.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw ParseError("symbol word contains '" + std::string(1, c) + "'");
        symbols.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return SymbolWord(std::move(symbols));
}

SymbolWord SymbolWord::prefix(std::size_t k) const {
    if (k > size()) throw LengthMismatch("prefix longer than word");
    return SymbolWord({symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(k)});
}

SymbolWord SymbolWord::shifted() const {
    if (empty()) return {};
    return SymbolWord({symbols_.begin() + 1, symbols_.end()});
}

SymbolWord SymbolWord::concat(const SymbolWord& other) const {
    std::vector<std::uint8_t> out = symbols_;
    out.insert(out.end(), other.symbols_.begin(), other.symbols_.end());
    return SymbolWord(std::move(out));
}

std::string SymbolWord::to_string() const {
    std::string out;
    out.reserve(size());
    for (auto s : symbols_) out.push_back(static_cast<char>('0' + s));
    return out;
}

std::strong_ordering compare_lex(const SymbolWord& u, const SymbolWord& v) {
    if (u.size() != v.size()) throw LengthMismatch("compare_lex needs words of equal length");
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] != v[k]) return u[k] < v[k] ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

namespace {

// Itinerary of p with the first return time to p, tracked on the exact orbit.
std::pair<SymbolWord, std::optional<std::size_t>> exact_itinerary_of_p(const LorenzMap& m, std::size_t n) {
    SymbolWord word;
    std::optional<std::size_t> period;
    Rational y = m.p();
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0 && !period && y == m.p()) period = k;
        const int s = m.symbol(y);
        word.push_back(s);
        y = m.branches().branch(s).eval(y);
    }
    if (!period && n > 0 && y == m.p()) period = n;
    return {std::move(word), period};
}

}  // namespace

KneadingPair kneading_prefixes(const BranchPair& bp, const Rational& p, std::size_t n, NumericMode mode) {
    const LorenzMap upper(bp, p, Side::Upper);
    const LorenzMap lower = upper.with_side(Side::Lower);
    KneadingPair kp;
    kp.exact = mode == NumericMode::Exact;
    if (mode == NumericMode::Exact) {
        auto [alpha, alpha_period] = exact_itinerary_of_p(lower, n);
        auto [beta, beta_period] = exact_itinerary_of_p(upper, n);
        kp.alpha = std::move(alpha);
        kp.beta = std::move(beta);
        kp.alpha_period = alpha_period;
        kp.beta_period = beta_period;
    } else {
        kp.alpha = itinerary(lower, lower.p_float(), n);
        kp.beta = itinerary(upper, upper.p_float(), n);
    }
    return kp;
}

PeriodResult detect_period(const BranchPair& bp, const Rational& p, Side side, std::size_t n_max,
                           NumericMode mode, bool require_certified, double tol) {
    const LorenzMap m(bp, p, side);
    PeriodResult result;
    if (mode == NumericMode::Exact) {
        Rational y = m.p();
        for (std::size_t k = 1; k <= n_max; ++k) {
            y = m.step(y);
            if (y == m.p()) {
                result.period = k;
                break;
            }
        }
        return result;
    }
    if (require_certified) {
        throw ModeError("certified period detection needs exact arithmetic");
    }
    result.certified = false;
    double y = m.p_float();
    for (std::size_t k = 1; k <= n_max; ++k) {
        y = m.step(y);
        if (std::abs(y - m.p_float()) < tol) {
            result.period = k;
            break;
        }
    }
    return result;
}

}  // namespace lorenz
