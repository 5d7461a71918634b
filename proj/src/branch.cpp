#include "lorenz/branch.hpp"

#include <json.hpp>

namespace lorenz {

using nlohmann::json;

BranchSpec BranchSpec::affine_left(const Rational& raw_slope) {
    const Rational slope = canonical(raw_slope);
    if (slope <= 1) throw InvalidSlopes("affine slope must exceed 1, got " + to_string(slope));
    BranchSpec spec;
    spec.kind_ = Kind::Affine;
    spec.points_ = {{Rational(0), Rational(0)}, {Rational(1 / slope), Rational(1)}};
    spec.build();
    return spec;
}

BranchSpec BranchSpec::affine_right(const Rational& raw_slope) {
    const Rational slope = canonical(raw_slope);
    if (slope <= 1) throw InvalidSlopes("affine slope must exceed 1, got " + to_string(slope));
    BranchSpec spec;
    spec.kind_ = Kind::Affine;
    spec.points_ = {{Rational((slope - 1) / slope), Rational(0)}, {Rational(1), Rational(1)}};
    spec.build();
    return spec;
}

BranchSpec BranchSpec::piecewise_linear(std::vector<Point> points) {
    if (points.size() < 2) throw InvalidBranch("piecewise-linear branch needs at least two points");
    for (auto& [x, y] : points) {
        x.canonicalize();
        y.canonicalize();
    }
    if (points.front().second != 0 || points.back().second != 1) {
        throw InvalidBranch("piecewise-linear branch must map onto [0,1] (first y = 0, last y = 1)");
    }
    BranchSpec spec;
    spec.kind_ = Kind::PiecewiseLinear;
    spec.points_ = std::move(points);
    spec.build();
    return spec;
}

void BranchSpec::build() {
    pieces_.clear();
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
        const auto& [x0, y0] = points_[i];
        const auto& [x1, y1] = points_[i + 1];
        if (x1 <= x0 || y1 <= y0) throw InvalidBranch("branch breakpoints must be strictly increasing");
        LinearPiece piece;
        piece.x_lo = x0;
        piece.x_hi = x1;
        piece.y_lo = y0;
        piece.y_hi = y1;
        piece.slope = (y1 - y0) / (x1 - x0);
        if (piece.slope <= 1) {
            throw InvalidSlopes("every linear piece needs slope > 1, got " + to_string(piece.slope));
        }
        piece.intercept = y0 - piece.slope * x0;
        piece.x_lo_f = to_double(x0);
        piece.x_hi_f = to_double(x1);
        piece.y_lo_f = to_double(y0);
        piece.y_hi_f = to_double(y1);
        piece.slope_f = to_double(piece.slope);
        piece.intercept_f = to_double(piece.intercept);
        if (pieces_.empty()) {
            min_slope_ = max_slope_ = piece.slope;
        } else {
            if (piece.slope < min_slope_) min_slope_ = piece.slope;
            if (piece.slope > max_slope_) max_slope_ = piece.slope;
        }
        pieces_.push_back(std::move(piece));
    }
}

BranchPair::BranchPair(BranchSpec f0, BranchSpec f1) : f0_(std::move(f0)), f1_(std::move(f1)) {
    if (f0_.domain_lo() != 0) throw InvalidBranch("f0 must be defined on [0, b]");
    if (f1_.domain_hi() != 1) throw InvalidBranch("f1 must be defined on [a, 1]");
    if (!(a() > 0 && a() <= b() && b() < 1)) {
        throw InvalidBranch("branch domains need 0 < a <= b < 1, got a = " + to_string(a()) +
                            ", b = " + to_string(b()));
    }
    c_min_ = std::min(f0_.min_slope(), f1_.min_slope());
    c_max_ = std::max(f0_.max_slope(), f1_.max_slope());
}

BranchPair make_affine_pair(const Rational& raw_b0, const Rational& raw_b1) {
    const Rational b0 = canonical(raw_b0);
    const Rational b1 = canonical(raw_b1);
    if (b0 <= 1 || b1 <= 1) throw InvalidSlopes("affine slopes must both exceed 1");
    if (b0 + b1 <= b0 * b1) {
        throw InvalidSlopes("affine slopes need b0 + b1 > b0*b1 (otherwise a > b), got b0 = " +
                            to_string(b0) + ", b1 = " + to_string(b1));
    }
    return BranchPair(BranchSpec::affine_left(b0), BranchSpec::affine_right(b1));
}

namespace {

Rational json_number(const json& value) {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number()) return parse_rational(value.dump());
    throw ParseError("expected a number or numeric string in branch spec, got " + value.dump());
}

BranchSpec branch_from_json(const json& node, int index) {
    if (!node.is_object()) throw ParseError("branch spec must be an object");
    const std::string type = node.value("type", std::string{});
    if (type == "affine") {
        if (!node.contains("slope")) throw ParseError("affine branch needs a 'slope'");
        const Rational slope = json_number(node.at("slope"));
        return index == 0 ? BranchSpec::affine_left(slope) : BranchSpec::affine_right(slope);
    }
    if (type == "pwl") {
        if (!node.contains("points") || !node.at("points").is_array()) {
            throw ParseError("pwl branch needs a 'points' array");
        }
        std::vector<BranchSpec::Point> points;
        for (const json& pt : node.at("points")) {
            if (!pt.is_array() || pt.size() != 2) throw ParseError("pwl point must be [x, y]");
            points.emplace_back(json_number(pt[0]), json_number(pt[1]));
        }
        return BranchSpec::piecewise_linear(std::move(points));
    }
    throw ParseError("unknown branch type '" + type + "' (expected affine or pwl)");
}

json branch_to_json(const BranchSpec& spec) {
    if (spec.kind() == BranchSpec::Kind::Affine) {
        return {{"type", "affine"}, {"slope", to_string(spec.min_slope())}};
    }
    json points = json::array();
    for (const auto& [x, y] : spec.points()) points.push_back({to_string(x), to_string(y)});
    return {{"type", "pwl"}, {"points", points}};
}

}  // namespace

BranchPair branch_pair_from_json(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("branch spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("f0") || !doc.contains("f1")) {
        throw ParseError("branch spec must be an object with 'f0' and 'f1'");
    }
    BranchSpec f0 = branch_from_json(doc.at("f0"), 0);
    BranchSpec f1 = branch_from_json(doc.at("f1"), 1);
    if (f0.kind() == BranchSpec::Kind::Affine && f1.kind() == BranchSpec::Kind::Affine) {
        return make_affine_pair(f0.min_slope(), f1.min_slope());
    }
    return BranchPair(std::move(f0), std::move(f1));
}

std::string branch_pair_to_json(const BranchPair& bp) {
    json doc = {{"f0", branch_to_json(bp.f0())}, {"f1", branch_to_json(bp.f1())}};
    return doc.dump();
}

}  // namespace lorenz
