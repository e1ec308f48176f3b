#pragma once

// Points of the Siegel upper half-plane and truncated Fourier sums
//   f(tau) = sum_T a(T) q1^a q2^c q3^b,  T = (a, b/2; b/2, c),
// with q1 = e(tau1), q2 = e(tau2), q3 = e(z), accumulated by trace a + c.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "siegel/bigfloat.hpp"
#include "siegel/tables.hpp"

namespace siegel {

/// tau = (tau1, z; z, tau2).
struct SiegelPoint {
  BigComplex tau1;
  BigComplex z;
  BigComplex tau2;
  /// Working precision in decimal digits.
  long digits = 30;
  /// Absolute decimal accuracy of the entries as supplied, nullopt when exact.
  std::optional<long> input_digits;
  /// Decimal literals the point was parsed from (re/im of tau1, z, tau2), if any.
  std::optional<std::array<std::string, 6>> source;

  /// Parses six decimal strings. Integer literals are exact; a literal with a
  /// fractional part or exponent is taken to be accurate to its last digit
  /// unless `exact` is set. Throws std::invalid_argument on bad input or if
  /// Im(tau) is not positive definite.
  static SiegelPoint parse(const std::array<std::string, 6>& parts, long digits, bool exact = false);

  mpfr_prec_t bits() const { return digits_to_bits(digits); }
  /// Same point at a new working precision; re-parsed from source when available.
  SiegelPoint with_digits(long new_digits) const;

  BigReal im_det() const;
  bool im_positive_definite() const;
  /// Throws std::invalid_argument unless Im(tau) is positive definite.
  void validate() const;
};

/// Power ladders q1^0..q1^B, q2^0..q2^B, q3^0..q3^B and q3^0..q3^-B.
class PointPowers {
 public:
  PointPowers(const SiegelPoint& tau, std::int64_t max_trace);

  std::int64_t max_trace() const { return max_trace_; }
  const BigComplex& q1(std::int64_t a) const { return q1_.at(static_cast<std::size_t>(a)); }
  const BigComplex& q2(std::int64_t c) const { return q2_.at(static_cast<std::size_t>(c)); }
  /// q3^b for |b| <= B.
  const BigComplex& q3(std::int64_t b) const;

 private:
  std::int64_t max_trace_;
  std::vector<BigComplex> q1_, q2_, q3_pos_, q3_neg_;
};

/// S[t] = sum over T >= 0 of trace t of a(T) q^T, for t = 0..max_trace.
/// The table must cover N <= max_trace^2 and traces <= max_trace.
std::vector<BigComplex> trace_sums(const CoeffTable& table, const PointPowers& powers, std::int64_t max_trace);

/// sum_{t <= B} S[t], accumulated in increasing t.
BigComplex evaluate_form(const CoeffTable& table, const PointPowers& powers, std::int64_t max_trace);

/// Number of T >= 0 of trace t.
std::int64_t count_of_trace(std::int64_t t);

}  // namespace siegel
