#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lorenz/errors.hpp"
#include "lorenz/rational.hpp"

namespace lorenz {

/// One affine piece y = slope * x + intercept on [x_lo, x_hi].
struct LinearPiece {
    Rational x_lo, x_hi, y_lo, y_hi;
    Rational slope, intercept;
    double x_lo_f = 0, x_hi_f = 0, y_lo_f = 0, y_hi_f = 0;
    double slope_f = 0, intercept_f = 0;
};

/// A continuous, strictly increasing, piecewise-linear surjection onto [0,1]
/// whose pieces all have slope greater than one.
class BranchSpec {
public:
    enum class Kind { Affine, PiecewiseLinear };
    using Point = std::pair<Rational, Rational>;

    /// f(x) = slope * x on [0, 1/slope].
    static BranchSpec affine_left(const Rational& slope);
    /// f(x) = 1 - slope + slope * x on [(slope-1)/slope, 1].
    static BranchSpec affine_right(const Rational& slope);
    /// Breakpoints (x_i, y_i), strictly increasing in both coordinates,
    /// with y_0 = 0 and y_last = 1.
    static BranchSpec piecewise_linear(std::vector<Point> points);

    Kind kind() const { return kind_; }
    const std::vector<Point>& points() const { return points_; }
    const std::vector<LinearPiece>& pieces() const { return pieces_; }
    const Rational& domain_lo() const { return points_.front().first; }
    const Rational& domain_hi() const { return points_.back().first; }
    const Rational& min_slope() const { return min_slope_; }
    const Rational& max_slope() const { return max_slope_; }

    bool in_domain(const Rational& x) const { return x >= domain_lo() && x <= domain_hi(); }
    bool in_domain(double x) const {
        return x >= pieces_.front().x_lo_f && x <= pieces_.back().x_hi_f;
    }

    // Unchecked evaluation; callers guarantee x lies in the domain.
    Rational eval(const Rational& x) const {
        const LinearPiece& piece = piece_for_x(x);
        return piece.slope * x + piece.intercept;
    }
    double eval(double x) const {
        const LinearPiece& piece = piece_for_x(x);
        return std::clamp(piece.slope_f * x + piece.intercept_f, 0.0, 1.0);
    }
    Rational inverse(const Rational& y) const {
        const LinearPiece& piece = piece_for_y(y);
        return (y - piece.intercept) / piece.slope;
    }
    double inverse(double y) const {
        const LinearPiece& piece = piece_for_y(y);
        return std::clamp((y - piece.intercept_f) / piece.slope_f, piece.x_lo_f, piece.x_hi_f);
    }

private:
    BranchSpec() = default;
    void build();

    const LinearPiece& piece_for_x(const Rational& x) const {
        auto it = std::lower_bound(pieces_.begin(), pieces_.end() - 1, x,
                                   [](const LinearPiece& p, const Rational& v) { return p.x_hi < v; });
        return *it;
    }
    const LinearPiece& piece_for_x(double x) const {
        auto it = std::lower_bound(pieces_.begin(), pieces_.end() - 1, x,
                                   [](const LinearPiece& p, double v) { return p.x_hi_f < v; });
        return *it;
    }
    const LinearPiece& piece_for_y(const Rational& y) const {
        auto it = std::lower_bound(pieces_.begin(), pieces_.end() - 1, y,
                                   [](const LinearPiece& p, const Rational& v) { return p.y_hi < v; });
        return *it;
    }
    const LinearPiece& piece_for_y(double y) const {
        auto it = std::lower_bound(pieces_.begin(), pieces_.end() - 1, y,
                                   [](const LinearPiece& p, double v) { return p.y_hi_f < v; });
        return *it;
    }

    Kind kind_ = Kind::PiecewiseLinear;
    std::vector<Point> points_;
    std::vector<LinearPiece> pieces_;
    Rational min_slope_, max_slope_;
};

/// The branch functions f0 on [0, b] and f1 on [a, 1] of a Lorenz map family.
class BranchPair {
public:
    /// Validates 0 < a <= b < 1 and the endpoint conditions. Throws InvalidBranch.
    BranchPair(BranchSpec f0, BranchSpec f1);

    const BranchSpec& f0() const { return f0_; }
    const BranchSpec& f1() const { return f1_; }
    const BranchSpec& branch(int i) const { return i == 0 ? f0_ : f1_; }

    const Rational& a() const { return f1_.domain_lo(); }
    const Rational& b() const { return f0_.domain_hi(); }
    const Rational& c_min() const { return c_min_; }
    const Rational& c_max() const { return c_max_; }

    bool is_affine() const {
        return f0_.kind() == BranchSpec::Kind::Affine && f1_.kind() == BranchSpec::Kind::Affine;
    }

private:
    BranchSpec f0_;
    BranchSpec f1_;
    Rational c_min_, c_max_;
};

/// f0(x) = b0 x and f1(x) = 1 - b1 + b1 x. Throws InvalidSlopes unless
/// b0, b1 > 1 and b0 + b1 > b0 b1.
BranchPair make_affine_pair(const Rational& b0, const Rational& b1);

/// Both branches with common slope b.
inline BranchPair make_uniform_pair(const Rational& b) { return make_affine_pair(b, b); }

/// Evaluates f_i at x, throwing DomainError outside the branch domain.
template <class T>
T eval_branch(const BranchPair& bp, int i, const T& x) {
    const BranchSpec& f = bp.branch(i);
    if (!f.in_domain(x)) throw DomainError("x outside the domain of branch f" + std::to_string(i));
    return f.eval(x);
}

/// Unique x with f_i(x) = y for y in [0,1]; throws DomainError otherwise.
template <class T>
T inverse_branch(const BranchPair& bp, int i, const T& y) {
    if (y < 0 || y > 1) throw DomainError("inverse branch argument outside [0,1]");
    return bp.branch(i).inverse(y);
}

// JSON form: {"f0":{"type":"affine","slope":"11/10"},"f1":{"type":"pwl","points":[["1/2","0"],...]}}
BranchPair branch_pair_from_json(std::string_view json_text);
std::string branch_pair_to_json(const BranchPair& bp);

}  // namespace lorenz
