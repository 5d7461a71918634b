#include "lorenz/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

namespace lorenz {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

int sign_of(double v) { return (v > 0) - (v < 0); }

void require_above_one(double x, const char* what) {
    if (!(x > 1)) throw DomainError(std::string(what) + ": x must exceed 1");
}

// Upper bound on |xi_n'| over [x, inf): sum_k k x^{-k-1} = 1 / (x - 1)^2.
double derivative_bound(double x) { return 1.0 / ((x - 1.0) * (x - 1.0)); }

class RootSearch {
public:
    RootSearch(const XiPolynomial& xi, double tol) : xi_(xi), tol_(tol) {}

    double eval(double x) const { return xi_eval(xi_, x); }

    RootResult bisect(double xl, double xr, double fr) const {
        for (int iter = 0; iter < 200 && xr - xl > tol_; ++iter) {
            const double xm = 0.5 * (xl + xr);
            const double fm = eval(xm);
            if (fm == 0) return exact(xm);
            if (sign_of(fm) == sign_of(fr)) {
                xr = xm;
                fr = fm;
            } else {
                xl = xm;
            }
        }
        RootResult r;
        r.gamma = 0.5 * (xl + xr);
        r.residual = std::abs(eval(r.gamma));
        r.bracket_lo = xl;
        r.bracket_hi = xr;
        r.kind = RootKind::OddCrossing;
        return r;
    }

    RootResult exact(double x) const {
        RootResult r;
        r.gamma = r.bracket_lo = r.bracket_hi = x;
        r.residual = 0;
        return r;
    }

    // Both endpoint values share a sign; looks for a pair of zeros in between,
    // highest first, subdividing until the derivative bound rules them out.
    std::optional<RootResult> hidden(double xl, double xr, double fl, double fr) const {
        if (xr - xl <= tol_) return std::nullopt;
        const double xm = 0.5 * (xl + xr);
        const double fm = eval(xm);
        if (fm == 0) return exact(xm);
        if (sign_of(fm) != sign_of(fr)) return bisect(xm, xr, fr);
        if (may_hide_zero(xm, xr, fm, fr)) {
            if (auto r = hidden(xm, xr, fm, fr)) return r;
        }
        if (may_hide_zero(xl, xm, fl, fm)) return hidden(xl, xm, fl, fm);
        return std::nullopt;
    }

    static bool may_hide_zero(double xl, double xr, double fl, double fr) {
        return std::abs(fl) + std::abs(fr) <= derivative_bound(xl) * (xr - xl);
    }

private:
    const XiPolynomial& xi_;
    double tol_;
};

}  // namespace

XiPolynomial::XiPolynomial(std::vector<int> coeffs, std::optional<PeriodicForm> periodic)
    : coeffs_(std::move(coeffs)), periodic_(std::move(periodic)) {
    coeffs_f_.reserve(coeffs_.size());
    for (int d : coeffs_) {
        if (d < -1 || d > 1) throw InvalidArgument("kneading series coefficients lie in {-1, 0, 1}");
        coeffs_f_.push_back(static_cast<double>(d));
    }
    if (periodic_) {
        if (periodic_->period == 0 || periodic_->beta_head.size() != periodic_->period) {
            throw InvalidArgument("periodic form needs beta_head of length equal to the period");
        }
    }
}

XiPolynomial xi_coeffs(const KneadingPair& kp) {
    if (kp.alpha.size() != kp.beta.size()) throw LengthMismatch("kneading prefixes differ in length");
    if (kp.alpha.empty()) throw LengthMismatch("kneading prefixes are empty");
    const std::size_t n = kp.alpha.size();
    std::vector<int> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = kp.beta[k] - kp.alpha[k];

    std::optional<PeriodicForm> periodic;
    if (kp.beta_period && *kp.beta_period <= n) {
        PeriodicForm form;
        form.period = *kp.beta_period;
        for (std::size_t k = 0; k < form.period; ++k) form.beta_head.push_back(kp.beta[k]);
        for (std::size_t k = 0; k < n; ++k) form.alpha.push_back(kp.alpha[k]);
        periodic = std::move(form);
    }
    return XiPolynomial(std::move(d), std::move(periodic));
}

double xi_eval(const XiPolynomial& xi, double x) {
    require_above_one(x, "xi_eval");
    const auto d = xi.coeffs_float();
    const double y = 1.0 / x;
    double acc = 0;
    for (std::size_t k = d.size(); k-- > 0;) acc = acc * y + d[k];
    return acc;
}

void xi_eval_many(const XiPolynomial& xi, std::span<const double> xs, std::span<double> out) {
    if (xs.size() != out.size()) throw LengthMismatch("xi_eval_many: output size differs from input");
    const auto d = xi.coeffs_float();
    constexpr std::size_t kLanes = 8;
    std::size_t i = 0;
    for (; i + kLanes <= xs.size(); i += kLanes) {
        std::array<double, kLanes> y{};
        std::array<double, kLanes> acc{};
        for (std::size_t j = 0; j < kLanes; ++j) {
            require_above_one(xs[i + j], "xi_eval_many");
            y[j] = 1.0 / xs[i + j];
        }
        for (std::size_t k = d.size(); k-- > 0;) {
            const double c = d[k];
            for (std::size_t j = 0; j < kLanes; ++j) acc[j] = acc[j] * y[j] + c;
        }
        for (std::size_t j = 0; j < kLanes; ++j) out[i + j] = acc[j];
    }
    for (; i < xs.size(); ++i) out[i] = xi_eval(xi, xs[i]);
}

double xi_eval_periodic(const XiPolynomial& xi, double x) {
    require_above_one(x, "xi_eval_periodic");
    const auto& form = xi.periodic_form();
    if (!form) throw MissingPeriodicForm("kneading series has no periodic form attached");
    const double y = 1.0 / x;
    double head = 0;
    for (std::size_t k = form->beta_head.size(); k-- > 0;) head = head * y + form->beta_head[k];
    const double beta_part = head / (1.0 - std::pow(y, static_cast<double>(form->period)));
    double alpha_part = 0;
    for (std::size_t k = form->alpha.size(); k-- > 0;) alpha_part = alpha_part * y + form->alpha[k];
    return beta_part - alpha_part;
}

double tail_bound(double x, std::size_t n) {
    require_above_one(x, "tail_bound");
    return std::pow(x, -static_cast<double>(n)) / (1.0 - 1.0 / x);
}

double xi_rounding_bound(const XiPolynomial& xi, double x) {
    require_above_one(x, "xi_rounding_bound");
    const double y = 1.0 / x;
    const double abs_sum = 1.0 / (1.0 - y);
    const double weighted = y / ((1.0 - y) * (1.0 - y));
    return (2.0 * static_cast<double>(xi.order()) + 2.0) * kEps * abs_sum + kEps * weighted;
}

RootResult max_root(const XiPolynomial& xi, double lo, double hi, double tol) {
    if (!(lo > 1 && lo < hi && hi <= 2)) throw DomainError("max_root needs 1 < lo < hi <= 2");
    if (!(tol > 0)) throw InvalidArgument("max_root needs tol > 0");

    const RootSearch search(xi, tol);
    const std::size_t cells = 64 * std::max<std::size_t>(xi.order(), 1);
    const double step = (hi - lo) / static_cast<double>(cells);

    double prev_x = hi;
    double prev_f = search.eval(hi);
    if (prev_f == 0) return search.exact(hi);
    // Grid values in scan order (index j sits at hi - j * step), kept for the tangency check.
    std::vector<double> grid_f{prev_f};
    grid_f.reserve(cells + 1);

    constexpr std::size_t kChunk = 256;
    std::vector<double> xs;
    std::vector<double> fs;
    for (std::size_t start = 1; start <= cells; start += kChunk) {
        const std::size_t stop = std::min(cells + 1, start + kChunk);
        xs.resize(stop - start);
        fs.resize(stop - start);
        for (std::size_t j = start; j < stop; ++j) {
            xs[j - start] = j == cells ? lo : hi - static_cast<double>(j) * step;
        }
        xi_eval_many(xi, xs, fs);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double x = xs[i];
            const double f = fs[i];
            if (f == 0) return search.exact(x);
            if (sign_of(f) != sign_of(prev_f)) return search.bisect(x, prev_x, prev_f);
            if (RootSearch::may_hide_zero(x, prev_x, f, prev_f)) {
                if (auto r = search.hidden(x, prev_x, f, prev_f)) return *r;
            }
            grid_f.push_back(f);
            prev_x = x;
            prev_f = f;
        }
    }

    // No sign change. A tangential zero is an interior strict local minimum
    // of the grid whose refined value lies within the truncation tail.
    std::optional<std::size_t> min_j;
    for (std::size_t j = 1; j + 1 < grid_f.size(); ++j) {
        if (grid_f[j] < grid_f[j - 1] && grid_f[j] < grid_f[j + 1] && (!min_j || grid_f[j] < grid_f[*min_j])) {
            min_j = j;
        }
    }
    if (!min_j) throw NoRootFound("kneading series has no zero and no interior minimum in the search bracket");

    const double left = std::max(lo, hi - static_cast<double>(*min_j + 1) * step);
    const double right = hi - static_cast<double>(*min_j - 1) * step;
    double min_x = hi - static_cast<double>(*min_j) * step;
    double min_f = grid_f[*min_j];
    const auto [x_star, f_star] = boost::math::tools::brent_find_minima(
        [&](double x) { return search.eval(x); }, left, right, std::numeric_limits<double>::digits / 2);
    if (f_star < min_f) {
        min_f = f_star;
        min_x = x_star;
    }
    const std::size_t n = xi.order();
    if (min_f <= tail_bound(min_x, n) + xi_rounding_bound(xi, min_x)) {
        RootResult r;
        r.gamma = min_x;
        r.residual = std::abs(min_f);
        r.bracket_lo = std::max(lo, min_x - 0.5 * tol);
        r.bracket_hi = std::min(hi, min_x + 0.5 * tol);
        r.kind = RootKind::Tangential;
        return r;
    }
    throw NoRootFound("kneading series has no zero in the search bracket (minimum " + std::to_string(min_f) +
                      " at x = " + std::to_string(min_x) + ")");
}

namespace {

// Outermost point (towards `limit`) where |xi_n| stays within twice the tail
// bound plus rounding, starting from `from`. Sets `hit_limit` when it never leaves.
double tolerance_edge(const XiPolynomial& xi, double from, double limit, double tol, bool& hit_limit) {
    const std::size_t n = xi.order();
    auto within = [&](double x) {
        return std::abs(xi_eval(xi, x)) <= 2.0 * tail_bound(x, n) + xi_rounding_bound(xi, x);
    };
    const double dir = limit > from ? 1.0 : -1.0;
    const double span = std::abs(limit - from);
    double inside = 0;
    double step = tol;
    hit_limit = false;
    while (true) {
        if (inside + step >= span) {
            if (within(limit)) {
                hit_limit = true;
                return limit;
            }
            step = span - inside;
            break;
        }
        if (!within(from + dir * (inside + step))) break;
        inside += step;
        step *= 2;
    }
    double outside = inside + step;
    for (int iter = 0; iter < 60 && outside - inside > 0.25 * tol; ++iter) {
        const double mid = 0.5 * (inside + outside);
        if (within(from + dir * mid)) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    return from + dir * outside;
}

}  // namespace

EntropyEstimate entropy_spectral(const BranchPair& bp, const Rational& p, std::size_t n, double tol,
                                 NumericMode mode) {
    if (n < 2) throw InvalidArgument("entropy_spectral needs n >= 2");
    if (!(tol > 0)) throw InvalidArgument("entropy_spectral needs tol > 0");

    const KneadingPair kp = kneading_prefixes(bp, p, n, mode);
    const XiPolynomial xi = xi_coeffs(kp);
    const double lo = std::max(0.5 * (1.0 + to_double(bp.c_min())), 1.0 + tol);
    const double hi = 2.0;
    const RootResult root = max_root(xi, lo, hi, tol);

    bool left_open = false;
    bool right_open = false;
    const double x_lo = tolerance_edge(xi, root.bracket_lo, lo, tol, left_open);
    const double x_hi = tolerance_edge(xi, root.bracket_hi, hi, tol, right_open);

    EntropyEstimate est;
    est.method = Method::Spectral;
    est.order = n;
    est.gamma = root.gamma;
    est.entropy = std::log(root.gamma);
    est.error_bound = std::max(std::log(x_hi) - est.entropy, est.entropy - std::log(x_lo));
    est.certified = kp.exact && !left_open && !right_open;
    return est;
}

}  // namespace lorenz
