#pragma once

// Half-integral weight generating series: Cohen's H_w (w = 4, 6, 10, 12) and
// the index-one Jacobi cusp form series K10, K12, built from theta and
// theta_tilde. An independent L-value route (generalized Bernoulli numbers)
// reproduces the H_w coefficients and is kept as a cross-check.

#include <cstdint>
#include <string>

#include "siegel/series.hpp"

namespace siegel {

enum class HalfIntKind { H4, H6, H10, H12, K10, K12 };

std::string to_string(HalfIntKind kind);
unsigned weight_of(HalfIntKind kind);

struct HalfIntTable {
  HalfIntKind kind = HalfIntKind::H4;
  /// Raw series: alpha_w(-n) for H_w, c_{phi_w,1}(n) for K_w.
  QSeries coeffs;
  /// Multiplier turning the raw series into Siegel coefficients:
  /// -2w/B_w for H_w, -1/4 for K10, 1/12 for K12.
  Rational normalization;

  std::size_t order() const { return coeffs.order(); }
  const Rational& operator[](std::size_t n) const { return coeffs[n]; }
  QSeries normalized() const { return coeffs.scaled(normalization); }
};

/// H_w to order N. Throws std::invalid_argument unless w is 4, 6, 10 or 12.
HalfIntTable cohen_series(unsigned w, std::size_t order);
/// K_w to order N. Throws std::invalid_argument unless w is 10 or 12.
HalfIntTable cusp_series(unsigned w, std::size_t order);

/// Ordinary Bernoulli number B_k (B_1 = -1/2).
Rational bernoulli(unsigned k);
/// -2w / B_w: 240, -504, -264, 65520/691 for w = 4, 6, 10, 12.
Rational eisenstein_normalization(unsigned w);

/// B_k(chi) for chi = (D0 / .), D0 = 1 or a negative fundamental
/// discriminant, from the generating function
///   sum_{r=1}^{|D0|} chi(r) t e^{rt} / (e^{|D0| t} - 1).
/// Throws std::invalid_argument for other D0.
Rational gen_bernoulli(std::int64_t D0, unsigned k);

/// L(2 - w, (D0/.)) = -B_{w-1}(chi) / (w - 1).
Rational lvalue(std::int64_t D0, unsigned w);

/// alpha_w(D) from the L-value and divisor-sum formula. Returns 1 for D = 0
/// and 0 when D < 0 is not a discriminant. Throws for D > 0.
Rational alpha_direct(unsigned w, std::int64_t D);

}  // namespace siegel
