#pragma once

// Entropy as the log of the largest zero in (1,2] of the kneading series
//   xi_p(x) = sum_k (beta_k - alpha_k) x^{-k},
// truncated after n terms. Truncation is controlled by the geometric tail
// bound x^{-n} / (1 - x^{-1}).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lorenz/estimate.hpp"
#include "lorenz/kneading.hpp"

namespace lorenz {

/// Closed-form data for a periodic upper kneading sequence beta = (beta_head)^inf.
struct PeriodicForm {
    std::size_t period = 0;
    std::vector<int> beta_head;  // first `period` symbols of beta
    std::vector<int> alpha;      // alpha prefix, summed directly
};

class XiPolynomial {
public:
    /// Coefficients d_0..d_{n-1}, each in {-1, 0, 1}; throws InvalidArgument otherwise.
    explicit XiPolynomial(std::vector<int> coeffs, std::optional<PeriodicForm> periodic = std::nullopt);

    const std::vector<int>& coeffs() const { return coeffs_; }
    std::size_t order() const { return coeffs_.size(); }
    const std::optional<PeriodicForm>& periodic_form() const { return periodic_; }

    // Coefficients as doubles, for the evaluation kernels.
    std::span<const double> coeffs_float() const { return coeffs_f_; }

private:
    std::vector<int> coeffs_;
    std::vector<double> coeffs_f_;
    std::optional<PeriodicForm> periodic_;
};

/// d_k = beta_k - alpha_k. The periodic form is attached iff beta has a detected period.
XiPolynomial xi_coeffs(const KneadingPair& kp);

/// sum_{k<n} d_k x^{-k} by nested multiplication in 1/x. Throws DomainError for x <= 1.
double xi_eval(const XiPolynomial& xi, double x);

/// Evaluates at many points at once; out.size() must equal xs.size().
void xi_eval_many(const XiPolynomial& xi, std::span<const double> xs, std::span<double> out);

/// Beta part summed in closed geometric form, alpha part truncated.
/// Throws MissingPeriodicForm when no period is attached.
double xi_eval_periodic(const XiPolynomial& xi, double x);

/// x^{-n} / (1 - x^{-1}): bounds |sum_{k>=n} d_k x^{-k}| for |d_k| <= 1.
double tail_bound(double x, std::size_t n);

/// Bound on the floating-point error of xi_eval at x.
double xi_rounding_bound(const XiPolynomial& xi, double x);

enum class RootKind { OddCrossing, Tangential };

struct RootResult {
    double gamma = 0;
    double residual = 0;  // |xi_n(gamma)|
    double bracket_lo = 0;
    double bracket_hi = 0;
    RootKind kind = RootKind::OddCrossing;
};

/// Largest zero of xi_n in (lo, hi]. A descending grid scan looks for the first
/// sign change (with subdivision wherever a hidden pair of zeros cannot be ruled
/// out), then bisects to width tol. Without any sign change, the minimum of xi_n
/// is accepted as a tangential zero when it lies within the truncation tail bound.
/// Throws NoRootFound otherwise.
RootResult max_root(const XiPolynomial& xi, double lo, double hi, double tol);

/// Kneading prefixes of length n, xi_n, and its largest zero on ((1 + c_min)/2, 2].
EntropyEstimate entropy_spectral(const BranchPair& bp, const Rational& p, std::size_t n = 500,
                                 double tol = 1e-7, NumericMode mode = NumericMode::Exact);

}  // namespace lorenz
