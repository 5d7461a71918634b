#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lorenz/sweep.hpp"

using namespace lorenz;

namespace {

Rational q(long num, long den = 1) { return canonical(Rational(num, den)); }

std::vector<SweepRecord> synthetic(const std::vector<double>& h) {
    std::vector<SweepRecord> out;
    for (std::size_t i = 0; i < h.size(); ++i) {
        SweepRecord r;
        r.p_exact = Rational(static_cast<long>(i + 1), 100);
        r.p = to_double(r.p_exact);
        r.estimate.entropy = h[i];
        r.estimate.gamma = std::exp(h[i]);
        out.push_back(r);
    }
    return out;
}

std::string csv_of(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    write_csv(out, records);
    return out.str();
}

}  // namespace

TEST_CASE("uniform sweep is flat") {
    SweepParams params;
    params.tol = 1e-9;
    params.margin = Rational(0);
    const auto records = sweep(make_uniform_pair(q(3, 2)), q(35, 100), q(65, 100), 61, params);
    REQUIRE(records.size() == 61u);
    CHECK(records.front().p_exact == q(35, 100));
    CHECK(records.back().p_exact == q(65, 100));
    for (const auto& r : records) {
        CHECK(r.ok());
        CHECK(std::abs(r.estimate.entropy - std::log(1.5)) <= 1e-6);
    }
    CHECK(continuity_modulus(records).max_jump <= 2e-6);
}

TEST_CASE("grid construction") {
    const BranchPair uniform = make_uniform_pair(q(3, 2));
    const auto two = sweep_grid(uniform, q(45, 100), q(55, 100), 2);
    CHECK(two == std::vector<Rational>{q(45, 100), q(55, 100)});

    // Default margin is the grid spacing, applied at a and b only.
    const auto clamped = sweep_grid(uniform, q(1, 3), q(2, 3), 4);
    CHECK(clamped.front() == q(1, 3) + q(1, 9));
    CHECK(clamped.back() == q(2, 3) - q(1, 9));
    CHECK(clamped.size() == 4u);

    const auto unclamped = sweep_grid(uniform, q(1, 3), q(2, 3), 4, Rational(0));
    CHECK(unclamped == std::vector<Rational>{q(1, 3), q(4, 9), q(5, 9), q(2, 3)});

    CHECK_THROWS_AS(sweep_grid(uniform, q(1, 4), q(1, 2), 10), RangeError);
    CHECK_THROWS_AS(sweep_grid(uniform, q(1, 2), q(7, 10), 10), RangeError);
    CHECK_THROWS_AS(sweep_grid(uniform, q(1, 2), q(1, 2), 10), RangeError);
    CHECK_THROWS_AS(sweep_grid(uniform, q(2, 5), q(1, 2), 1), InvalidArgument);
}

TEST_CASE("failed points are recorded, not thrown") {
    SweepParams params;
    params.spectral_order = 2;
    const auto records = sweep(make_uniform_pair(q(3, 2)), q(2, 5), q(3, 5), 5, params);
    REQUIRE(records.size() == 5u);
    for (const auto& r : records) {
        CHECK(r.status == RecordStatus::NoRoot);
        CHECK(std::isnan(r.estimate.entropy));
    }
    const std::string csv = csv_of(records);
    CHECK(csv.find(",nan,nan,spectral,2,nan,no-root\n") != std::string::npos);
    CHECK_THROWS_AS(continuity_modulus(records), InsufficientData);

    SweepParams tight;
    tight.method = Method::Laps;
    tight.class_cap = 3;
    const auto capped = sweep(make_uniform_pair(q(3, 2)), q(2, 5), q(3, 5), 3, tight);
    for (const auto& r : capped) CHECK(r.status == RecordStatus::ResourceLimit);
}

TEST_CASE("feature detection on synthetic curves") {
    CHECK(detect_nonmonotonic(synthetic({0.1, 0.2, 0.3, 0.4}), 1e-5).empty());
    CHECK(detect_nonmonotonic(synthetic({0.1, 0.2, 0.2, 0.4}), 1e-5).empty());

    const auto dip = detect_nonmonotonic(synthetic({0.5, 0.4, 0.5}), 0.05);
    REQUIRE(dip.size() == 1u);
    CHECK(dip[0].direction == FeatureDirection::Dip);
    CHECK(dip[0].prominence == doctest::Approx(0.1));
    CHECK(dip[0].p_low == 0.01);
    CHECK(dip[0].p_extremum == 0.02);
    CHECK(dip[0].p_high == 0.03);
    CHECK(dip[0].p_low < dip[0].p_high);

    const auto bump = detect_nonmonotonic(synthetic({0.1, 0.3, 0.3, 0.2, 0.25}), 0.01);
    REQUIRE(bump.size() == 2u);
    CHECK(bump[0].direction == FeatureDirection::Bump);
    CHECK(bump[0].prominence == doctest::Approx(0.1));
    CHECK(bump[1].direction == FeatureDirection::Dip);
    CHECK(bump[1].prominence == doctest::Approx(0.05));

    CHECK(detect_nonmonotonic(synthetic({0.5, 0.4, 0.5}), 0.2).empty());
    CHECK_THROWS_AS(detect_nonmonotonic(synthetic({0.5, 0.4}), 0.0), InvalidArgument);
    auto unsorted = synthetic({0.5, 0.4, 0.5});
    std::swap(unsorted[0], unsorted[2]);
    CHECK_THROWS_AS(detect_nonmonotonic(unsorted, 0.01), InvalidArgument);
}

TEST_CASE("continuity modulus") {
    const auto m = continuity_modulus(synthetic({0.4, 0.7}));
    CHECK(m.max_jump == doctest::Approx(0.3));
    CHECK(m.argmax_p == 0.01);
    CHECK_THROWS_AS(continuity_modulus(synthetic({0.4})), InsufficientData);
}

TEST_CASE("method comparison") {
    const auto a = synthetic({0.3, 0.31, 0.32});
    const MethodComparison same = compare_methods(a, a);
    CHECK(same.max_abs_diff == 0);
    CHECK(same.mean_abs_diff == 0);
    CHECK(same.worst_p == 0.01);
    CHECK(same.compared == 3u);

    CHECK_THROWS_AS(compare_methods(a, synthetic({0.3, 0.31})), GridMismatch);
    auto shifted = a;
    shifted[1].p += 1e-3;
    CHECK_THROWS_AS(compare_methods(a, shifted), GridMismatch);
    CHECK_NOTHROW(compare_methods(a, shifted, 1e-2));

    const BranchPair uniform = make_uniform_pair(q(3, 2));
    const auto grid = sweep_grid(uniform, q(2, 5), q(3, 5), 9);
    SweepParams spectral;
    SweepParams laps;
    laps.method = Method::Laps;
    const MethodComparison cmp = compare_methods(sweep_at(uniform, grid, spectral), sweep_at(uniform, grid, laps));
    CHECK(cmp.max_abs_diff <= 1e-3);
    CHECK(cmp.compared == 9u);
}

TEST_CASE("CSV and JSON output") {
    const auto records = synthetic({0.25, 0.5});
    const std::string csv = csv_of(records);
    CHECK(csv.rfind("p,entropy,gamma,method,order,error_bound,status\n", 0) == 0);
    // 17 significant digits round-trip every double.
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    for (const auto& r : records) {
        std::getline(lines, line);
        const auto comma = line.find(',');
        const auto second = line.find(',', comma + 1);
        CHECK(std::stod(line.substr(0, comma)) == r.p);
        CHECK(std::stod(line.substr(comma + 1, second - comma - 1)) == r.estimate.entropy);
        CHECK(std::stod(line.substr(second + 1)) == r.estimate.gamma);
    }
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.find(",spectral,0,0,ok\n") != std::string::npos);

    const auto doc = nlohmann::json::parse(records_to_json(records));
    REQUIRE(doc.size() == 2u);
    CHECK(doc[1]["entropy"] == 0.5);
    CHECK(doc[1]["status"] == "ok");

    auto features = detect_nonmonotonic(synthetic({0.5, 0.4, 0.5}), 0.05);
    const auto fdoc = nlohmann::json::parse(features_to_json(features));
    CHECK(fdoc[0]["direction"] == "dip");
    CHECK(fdoc[0]["confirmed"] == false);
    CHECK(fdoc[0]["cross_prominence"].is_null());
}

TEST_CASE("property: output is independent of the worker count") {
    const BranchPair fig = make_affine_pair(q(11, 10), q(19, 10));
    SweepParams params;
    params.spectral_order = 200;
    std::string reference;
    for (std::size_t workers : {1u, 2u, 3u, 7u}) {
        params.workers = workers;
        const auto records = sweep(fig, q(9, 19), q(10, 11), 40, params);
        std::set<double> ps;
        for (std::size_t i = 0; i < records.size(); ++i) {
            ps.insert(records[i].p);
            if (i > 0) CHECK(records[i - 1].p < records[i].p);
            CHECK(records[i].p_exact >= fig.a());
            CHECK(records[i].p_exact <= fig.b());
        }
        CHECK(ps.size() == records.size());
        const std::string csv = csv_of(records);
        if (reference.empty()) reference = csv;
        CHECK(csv == reference);
    }
}

TEST_CASE("cross-method confirmation") {
    // A dip in a uniform sweep can only be a solver artifact; the laps method
    // sees a flat curve, so a fabricated dip must not be confirmed.
    const BranchPair uniform = make_uniform_pair(q(3, 2));
    SweepParams params;
    auto records = sweep(uniform, q(2, 5), q(3, 5), 5, params);
    records[2].estimate.entropy -= 0.01;
    auto features = detect_nonmonotonic(records, 1e-3);
    REQUIRE(features.size() >= 1u);
    confirm_features(uniform, records, features, params);
    for (const auto& f : features) {
        CHECK_FALSE(f.confirmed);
        REQUIRE(f.cross_prominence);
        CHECK(std::abs(*f.cross_prominence) <= 1e-6);
    }

    const BranchPair fig = make_affine_pair(q(11, 10), q(19, 10));
    auto real = sweep(fig, q(9, 19), q(10, 11), 400, params);
    auto found = detect_nonmonotonic(real, 1e-5);
    REQUIRE_FALSE(found.empty());
    found.resize(std::min<std::size_t>(found.size(), 5));
    confirm_features(fig, real, found, params);
    CHECK(found[0].confirmed);
}
