#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lorenz/estimate.hpp"
#include "lorenz/laps.hpp"
#include "lorenz/spectral.hpp"

namespace lorenz {

struct SweepParams {
    Method method = Method::Spectral;
    std::size_t spectral_order = 500;
    double tol = 1e-7;
    std::size_t laps_order = 50;
    std::size_t window = 10;
    NumericMode mode = NumericMode::Exact;
    std::size_t workers = 0;  // 0: LORENZ_WORKERS or hardware concurrency
    // Distance kept from a and b; defaults to the grid spacing. Zero disables clamping.
    std::optional<Rational> margin;
    std::size_t class_cap = kDefaultClassCap;
};

enum class RecordStatus { Ok, NoRoot, ResourceLimit };

std::string_view to_string(RecordStatus status);

struct SweepRecord {
    double p = 0;
    Rational p_exact;
    EntropyEstimate estimate;
    RecordStatus status = RecordStatus::Ok;

    bool ok() const { return status == RecordStatus::Ok; }
};

/// Entropy at one parameter value with the given method settings.
EntropyEstimate evaluate_entropy(const BranchPair& bp, const Rational& p, const SweepParams& params);

/// Equally spaced exact grid over [p_min, p_max], pulled in to keep the margin from a and b.
/// Throws RangeError if [p_min, p_max] is not inside [a, b].
std::vector<Rational> sweep_grid(const BranchPair& bp, const Rational& p_min, const Rational& p_max,
                                 std::size_t points, const std::optional<Rational>& margin = std::nullopt);

/// Evaluates every grid point in parallel; output is ordered by p and independent
/// of the worker count. Per-point failures are recorded, never thrown.
std::vector<SweepRecord> sweep_at(const BranchPair& bp, const std::vector<Rational>& grid, const SweepParams& params);

std::vector<SweepRecord> sweep(const BranchPair& bp, const Rational& p_min, const Rational& p_max,
                               std::size_t points, const SweepParams& params);

enum class FeatureDirection { Dip, Bump };

struct NonMonotoneFeature {
    double p_low = 0;
    double p_high = 0;
    double p_extremum = 0;
    double prominence = 0;
    FeatureDirection direction = FeatureDirection::Dip;
    // Filled by confirm_features.
    bool confirmed = false;
    std::optional<double> cross_prominence;
    std::optional<double> combined_error;
    // Indices into the record list (shoulders and extremum).
    std::size_t low_index = 0, extremum_index = 0, high_index = 0;
};

/// Interior local minima (dips) and maxima (bumps) whose prominence, measured
/// against the nearest higher (lower) shoulders on both sides, reaches
/// prominence_tol. Sorted by prominence, largest first.
std::vector<NonMonotoneFeature> detect_nonmonotonic(const std::vector<SweepRecord>& records, double prominence_tol);

/// Re-measures each feature's shoulders and extremum with the other method and
/// marks it confirmed when both prominences agree within the summed error bounds.
void confirm_features(const BranchPair& bp, const std::vector<SweepRecord>& records,
                      std::vector<NonMonotoneFeature>& features, const SweepParams& params);

struct ContinuityModulus {
    double max_jump = 0;
    double argmax_p = 0;
};

/// Largest |h_{i+1} - h_i| over adjacent ok records. Throws InsufficientData.
ContinuityModulus continuity_modulus(const std::vector<SweepRecord>& records);

struct MethodComparison {
    double max_abs_diff = 0;
    double mean_abs_diff = 0;
    double worst_p = 0;
    std::size_t compared = 0;
};

/// Elementwise comparison over records that are ok in both sweeps. The grids
/// must agree point by point within p_tol (GridMismatch otherwise).
MethodComparison compare_methods(const std::vector<SweepRecord>& s1, const std::vector<SweepRecord>& s2,
                                 double p_tol = 0);

/// Header `p,entropy,gamma,method,order,error_bound,status`, 17 significant digits, LF endings.
void write_csv(std::ostream& out, const std::vector<SweepRecord>& records);
std::string records_to_json(const std::vector<SweepRecord>& records);
std::string features_to_json(const std::vector<NonMonotoneFeature>& features);

/// Worker count from LORENZ_WORKERS, else hardware concurrency (at least 1).
std::size_t default_workers();

}  // namespace lorenz
