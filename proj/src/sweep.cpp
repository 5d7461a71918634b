#include "lorenz/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace lorenz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SweepRecord evaluate_record(const BranchPair& bp, const Rational& p, const SweepParams& params) {
    SweepRecord rec;
    rec.p_exact = p;
    rec.p = to_double(p);
    try {
        rec.estimate = evaluate_entropy(bp, p, params);
    } catch (const NoRootFound&) {
        rec.status = RecordStatus::NoRoot;
    } catch (const ResourceLimit&) {
        rec.status = RecordStatus::ResourceLimit;
    }
    if (!rec.ok()) {
        rec.estimate.method = params.method;
        rec.estimate.order = params.method == Method::Spectral ? params.spectral_order : params.laps_order;
        rec.estimate.entropy = rec.estimate.gamma = rec.estimate.error_bound = kNaN;
    }
    return rec;
}

struct OkSeries {
    std::vector<std::size_t> index;  // into the record list
    std::vector<double> h;
};

OkSeries ok_series(const std::vector<SweepRecord>& records) {
    OkSeries s;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].ok()) {
            s.index.push_back(i);
            s.h.push_back(records[i].estimate.entropy);
        }
    }
    return s;
}

// Dips of `h` (bumps are found by negating). Plateaus count as one point.
void find_dips(const std::vector<double>& h, const std::vector<std::size_t>& index,
               const std::vector<SweepRecord>& records, double tol, FeatureDirection direction,
               std::vector<NonMonotoneFeature>& out) {
    const std::size_t n = h.size();
    std::size_t i = 1;
    while (i + 1 < n) {
        // Extent of the plateau starting at i.
        std::size_t j = i;
        while (j + 1 < n && h[j + 1] == h[i]) ++j;
        if (j + 1 >= n) break;
        const bool is_min = h[i - 1] > h[i] && h[j + 1] > h[i];
        if (is_min) {
            const double floor = h[i];
            std::size_t left_arg = i - 1;
            for (std::size_t k = i; k-- > 0;) {
                if (h[k] < floor) break;
                if (h[k] > h[left_arg]) left_arg = k;
            }
            std::size_t right_arg = j + 1;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (h[k] < floor) break;
                if (h[k] > h[right_arg]) right_arg = k;
            }
            const double prominence = std::min(h[left_arg], h[right_arg]) - floor;
            if (prominence >= tol) {
                NonMonotoneFeature f;
                f.direction = direction;
                f.prominence = prominence;
                f.low_index = index[left_arg];
                f.high_index = index[right_arg];
                f.extremum_index = index[(i + j) / 2];
                f.p_low = records[f.low_index].p;
                f.p_high = records[f.high_index].p;
                f.p_extremum = records[f.extremum_index].p;
                out.push_back(f);
            }
        }
        i = j + 1;
    }
}

double signed_prominence(FeatureDirection dir, double low, double mid, double high) {
    return dir == FeatureDirection::Dip ? std::min(low, high) - mid : mid - std::max(low, high);
}

}  // namespace

std::string_view to_string(RecordStatus status) {
    switch (status) {
        case RecordStatus::Ok: return "ok";
        case RecordStatus::NoRoot: return "no-root";
        case RecordStatus::ResourceLimit: return "resource-limit";
    }
    return "ok";
}

std::size_t default_workers() {
    if (const char* env = std::getenv("LORENZ_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

EntropyEstimate evaluate_entropy(const BranchPair& bp, const Rational& p, const SweepParams& params) {
    if (params.method == Method::Spectral) {
        return entropy_spectral(bp, p, params.spectral_order, params.tol, params.mode);
    }
    const LorenzMap m(bp, p, Side::Upper);
    return entropy_laps(m, params.laps_order, params.window, params.mode, params.class_cap).estimate;
}

std::vector<Rational> sweep_grid(const BranchPair& bp, const Rational& raw_min, const Rational& raw_max,
                                 std::size_t points, const std::optional<Rational>& margin) {
    const Rational p_min = canonical(raw_min);
    const Rational p_max = canonical(raw_max);
    if (points < 2) throw InvalidArgument("a sweep needs at least 2 points");
    if (!(p_min < p_max)) throw RangeError("a sweep needs p_min < p_max");
    if (p_min < bp.a() || p_max > bp.b()) {
        throw RangeError("sweep range [" + to_string(p_min) + ", " + to_string(p_max) + "] is not inside [a, b] = [" +
                         to_string(bp.a()) + ", " + to_string(bp.b()) + "]");
    }
    const Rational keep = margin ? canonical(*margin) : Rational((p_max - p_min) / static_cast<long>(points - 1));
    if (keep < 0) throw InvalidArgument("sweep margin must be non-negative");
    const Rational lo = std::max(p_min, Rational(bp.a() + keep));
    const Rational hi = std::min(p_max, Rational(bp.b() - keep));
    if (!(lo < hi)) throw RangeError("sweep range is empty after keeping the margin from a and b");

    std::vector<Rational> grid;
    grid.reserve(points);
    const Rational spacing = (hi - lo) / static_cast<long>(points - 1);
    for (std::size_t i = 0; i + 1 < points; ++i) grid.emplace_back(lo + spacing * static_cast<long>(i));
    grid.push_back(hi);
    return grid;
}

std::vector<SweepRecord> sweep_at(const BranchPair& bp, const std::vector<Rational>& grid, const SweepParams& params) {
    std::vector<SweepRecord> records(grid.size());
    const std::size_t workers = std::min(std::max<std::size_t>(1, params.workers ? params.workers : default_workers()),
                                         std::max<std::size_t>(1, grid.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) records[i] = evaluate_record(bp, grid[i], params);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return records;
}

std::vector<SweepRecord> sweep(const BranchPair& bp, const Rational& p_min, const Rational& p_max,
                               std::size_t points, const SweepParams& params) {
    return sweep_at(bp, sweep_grid(bp, p_min, p_max, points, params.margin), params);
}

std::vector<NonMonotoneFeature> detect_nonmonotonic(const std::vector<SweepRecord>& records, double prominence_tol) {
    if (!(prominence_tol > 0)) throw InvalidArgument("prominence tolerance must be positive");
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (!(records[i - 1].p < records[i].p)) throw InvalidArgument("records must be strictly increasing in p");
    }
    OkSeries s = ok_series(records);
    std::vector<NonMonotoneFeature> features;
    find_dips(s.h, s.index, records, prominence_tol, FeatureDirection::Dip, features);
    std::vector<double> negated(s.h.size());
    std::transform(s.h.begin(), s.h.end(), negated.begin(), [](double v) { return -v; });
    find_dips(negated, s.index, records, prominence_tol, FeatureDirection::Bump, features);
    std::stable_sort(features.begin(), features.end(),
                     [](const auto& x, const auto& y) { return x.prominence > y.prominence; });
    return features;
}

void confirm_features(const BranchPair& bp, const std::vector<SweepRecord>& records,
                      std::vector<NonMonotoneFeature>& features, const SweepParams& params) {
    SweepParams other = params;
    other.method = params.method == Method::Spectral ? Method::Laps : Method::Spectral;

    std::vector<std::size_t> needed;
    for (const auto& f : features) needed.insert(needed.end(), {f.low_index, f.extremum_index, f.high_index});
    std::sort(needed.begin(), needed.end());
    needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
    std::vector<Rational> grid;
    grid.reserve(needed.size());
    for (std::size_t i : needed) grid.push_back(records.at(i).p_exact);
    const auto cross = sweep_at(bp, grid, other);
    auto cross_at = [&](std::size_t record_index) -> const SweepRecord& {
        const auto pos = std::lower_bound(needed.begin(), needed.end(), record_index) - needed.begin();
        return cross[static_cast<std::size_t>(pos)];
    };

    for (auto& f : features) {
        const SweepRecord& lo = cross_at(f.low_index);
        const SweepRecord& mid = cross_at(f.extremum_index);
        const SweepRecord& hi = cross_at(f.high_index);
        if (!lo.ok() || !mid.ok() || !hi.ok()) {
            f.confirmed = false;
            continue;
        }
        const double cross_prom =
            signed_prominence(f.direction, lo.estimate.entropy, mid.estimate.entropy, hi.estimate.entropy);
        const double combined = records[f.low_index].estimate.error_bound +
                                records[f.extremum_index].estimate.error_bound +
                                records[f.high_index].estimate.error_bound + lo.estimate.error_bound +
                                mid.estimate.error_bound + hi.estimate.error_bound;
        f.cross_prominence = cross_prom;
        f.combined_error = combined;
        f.confirmed = std::abs(cross_prom - f.prominence) <= combined;
    }
}

ContinuityModulus continuity_modulus(const std::vector<SweepRecord>& records) {
    const OkSeries s = ok_series(records);
    if (s.h.size() < 2) throw InsufficientData("continuity modulus needs at least 2 ok records");
    ContinuityModulus result;
    result.argmax_p = records[s.index[0]].p;
    for (std::size_t i = 0; i + 1 < s.h.size(); ++i) {
        const double jump = std::abs(s.h[i + 1] - s.h[i]);
        if (jump > result.max_jump) {
            result.max_jump = jump;
            result.argmax_p = records[s.index[i]].p;
        }
    }
    return result;
}

MethodComparison compare_methods(const std::vector<SweepRecord>& s1, const std::vector<SweepRecord>& s2,
                                 double p_tol) {
    if (s1.size() != s2.size()) throw GridMismatch("compared sweeps have different lengths");
    MethodComparison result;
    double total = 0;
    for (std::size_t i = 0; i < s1.size(); ++i) {
        if (std::abs(s1[i].p - s2[i].p) > p_tol) {
            throw GridMismatch("compared sweeps differ at index " + std::to_string(i));
        }
        if (!s1[i].ok() || !s2[i].ok()) continue;
        const double diff = std::abs(s1[i].estimate.entropy - s2[i].estimate.entropy);
        if (result.compared == 0 || diff > result.max_abs_diff) {
            result.max_abs_diff = diff;
            result.worst_p = s1[i].p;
        }
        total += diff;
        ++result.compared;
    }
    if (result.compared == 0) throw InsufficientData("no grid point is ok in both sweeps");
    result.mean_abs_diff = total / static_cast<double>(result.compared);
    return result;
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    out << "p,entropy,gamma,method,order,error_bound,status\n";
    for (const auto& r : records) {
        out << format_double(r.p) << ',' << format_double(r.estimate.entropy) << ','
            << format_double(r.estimate.gamma) << ',' << to_string(r.estimate.method) << ',' << r.estimate.order
            << ',' << format_double(r.estimate.error_bound) << ',' << to_string(r.status) << '\n';
    }
}

std::string records_to_json(const std::vector<SweepRecord>& records) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : records) {
        out.push_back({{"p", r.p},
                       {"entropy", r.estimate.entropy},
                       {"gamma", r.estimate.gamma},
                       {"method", to_string(r.estimate.method)},
                       {"order", r.estimate.order},
                       {"error_bound", r.estimate.error_bound},
                       {"certified", r.estimate.certified},
                       {"status", to_string(r.status)}});
    }
    return out.dump();
}

std::string features_to_json(const std::vector<NonMonotoneFeature>& features) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : features) {
        nlohmann::json item = {{"p_low", f.p_low},
                               {"p_high", f.p_high},
                               {"p_extremum", f.p_extremum},
                               {"prominence", f.prominence},
                               {"direction", f.direction == FeatureDirection::Dip ? "dip" : "bump"},
                               {"confirmed", f.confirmed}};
        item["cross_prominence"] = f.cross_prominence ? nlohmann::json(*f.cross_prominence) : nlohmann::json();
        item["combined_error"] = f.combined_error ? nlohmann::json(*f.combined_error) : nlohmann::json();
        out.push_back(std::move(item));
    }
    return out.dump();
}

}  // namespace lorenz
