#pragma once

// Explicit coefficient bounds, tail majorants, the chi10 lower bound and the
// precision plan for Igusa evaluation.

#include <cstdint>
#include <string>
#include <vector>

#include "siegel/bigfloat.hpp"
#include "siegel/forms.hpp"
#include "siegel/fourier.hpp"
#include "siegel/tables.hpp"

namespace siegel {

/// Precision used for analytic constants.
inline constexpr long kBoundDigits = 50;

struct BoundParams {
  double epsilon = 0.1;
  double eta = 1.45;
  /// Throws std::invalid_argument unless both are positive.
  void validate() const;
};

/// The (epsilon, eta) grid searched by the chi10 lower bound.
std::vector<BoundParams> bound_grid();

/// Smallest eigenvalue of Im(tau), rounded down. Throws if Im(tau) is not
/// positive definite.
BigReal delta_of(const SiegelPoint& tau);

/// c_w with |a(T)| <= c_w (4ac - b^2)^(w - 3/2) for Eisenstein coefficients.
BigReal eisenstein_bound_const(unsigned w);
/// Bound c_w Tr(T)^(2w-3) for any T != 0 (uses 4ac - b^2 <= Tr(T)^2).
BigReal eisenstein_trace_bound(unsigned w, std::int64_t trace);

/// B(eps, n) = (2 pi)^(-1/2) max{zeta(1+eps)^2, zeta(1+eps)^2 Gamma(n+1/2+eps)/Gamma(n-1/2-eps)}.
BigReal pl_constant(double epsilon, int n);
/// B2(eta) = exp(2^(1/eta) / (eta log 2)).
BigReal b2_constant(double eta);

/// Leading constant C B2(eta) sqrt(B(eps, n)) of the cusp bound
/// (C = 320, n = 9 for chi10; C = 3843, n = 11 for chi12).
BigReal cusp_bound_const(FormKind form, const BoundParams& params);
/// Exponent 4.5 + eps/2 + eta (chi10) or 5.5 + eps/2 + eta (chi12).
double cusp_bound_exponent(FormKind form, const BoundParams& params);
/// Upper bound for |a(T)| with 4 det T = N >= 1. Throws for non-cusp forms.
BigReal cusp_bound(FormKind form, std::int64_t N, const BoundParams& params);

/// Upper bound for |a(T)| over all T of trace t, for any of the six forms.
BigReal coefficient_bound_at_trace(FormKind form, std::int64_t trace);

/// Upper bound on |f(tau)| valid whenever delta(tau) >= delta, from the
/// coefficient bounds and exact counts of T per trace.
BigReal magnitude_bound(FormKind form, double delta);

/// Majorant for C int_{B-1}^inf t^p exp(-2 pi delta t) dt with p rounded up.
/// Throws std::invalid_argument if B < 1 or C, delta <= 0 or p < 0.
BigReal tail_integral(const BigReal& C, double p, const BigReal& delta, std::int64_t B);
BigReal tail_integral(double C, double p, double delta, std::int64_t B);

/// The constant multiplying t^15 in the trace-tail integral.
inline constexpr double kTraceTailConstant = 524093.0;

/// Least B >= 3 with tail_integral(524093, 15, delta, B) <= 10^-l.
std::int64_t solve_trace_bound(const BigReal& delta, long l);

struct Chi10LowerBound {
  long n = 0;
  bool certified = false;
  /// Partial sum c over traces <= t0, and the majorant of the rest.
  BigComplex partial_sum;
  BigReal majorant;
  std::int64_t t0 = 0;
  BoundParams params;
};

/// |chi10(tau)| >= 10^-n from the partial sums over trace <= t0 for
/// t0 = 2, 3, ... up to max_t0. Throws std::runtime_error if chi10 vanishes
/// numerically at the largest t0.
Chi10LowerBound chi10_lower_bound(const SiegelPoint& tau, TableCache& cache, std::int64_t max_t0 = 12);

struct PrecisionPlan {
  BigReal delta;
  long k = 0;
  long n = 0;
  bool certified = false;
  long l = 0;
  std::int64_t B = 0;
  long coeff_bound_digits = 0;
  /// Decimal digits used for the point and the power ladders.
  long working_digits = 0;
  Chi10LowerBound chi10;
};

/// l = k + max{22, 6n}; B from solve_trace_bound; working digits
/// l + coeff_bound_digits + 15.
PrecisionPlan make_plan(const SiegelPoint& tau, long k, TableCache& cache);

struct WaldspurgerEntry {
  std::int64_t D = 0;
  bool skipped = false;
  BigReal ratio;
  BigReal truncation_bound;
};

struct WaldspurgerReport {
  FormKind form = FormKind::Chi10;
  std::vector<WaldspurgerEntry> entries;
  BigReal max_ratio;
  BigReal min_ratio;
  /// (max - min) / max over non-skipped entries.
  BigReal spread;
  /// 75634 for chi10, 1197339 for chi12.
  double limit = 0;
  bool passed = false;
};

/// Estimates <g,g>/<f,f> through Waldspurger's formula for each discriminant,
/// with g = Delta E6 (chi10) or Delta E10 (chi12).
WaldspurgerReport waldspurger_ratio_check(FormKind form, const std::vector<std::int64_t>& discriminants);

}  // namespace siegel
