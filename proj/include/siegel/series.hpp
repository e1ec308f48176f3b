#pragma once

// Truncated one-variable q-expansions with exact rational coefficients.
//
// A QSeries of truncation order N holds the coefficients of q^0 .. q^N, so its
// length is N + 1. Products truncate to the shorter operand.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <vector>

namespace siegel {

using Rational = mpq_class;

class QSeries {
 public:
  QSeries() = default;
  /// Zero series with `length` coefficients.
  explicit QSeries(std::size_t length) : coeffs_(length) {}
  explicit QSeries(std::vector<Rational> coeffs);

  /// The constant 1 truncated at order N.
  static QSeries one(std::size_t order);

  std::size_t length() const { return coeffs_.size(); }
  /// Largest stored exponent; requires length() > 0.
  std::size_t order() const { return coeffs_.size() - 1; }
  bool empty() const { return coeffs_.empty(); }

  const Rational& operator[](std::size_t k) const { return coeffs_[k]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// First `order + 1` coefficients (or all of them if shorter).
  QSeries truncated(std::size_t order) const;
  /// Coefficients multiplied by `factor`.
  QSeries scaled(const Rational& factor) const;

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend bool operator==(const QSeries& a, const QSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
};

/// theta = 1 + 2 sum_{n>=1} q^(n^2), to order N.
QSeries theta(std::size_t order);
/// 1 + 2 sum_{n>=1} (-1)^n q^(n^2), to order N.
QSeries alternating_theta(std::size_t order);
/// Fourth power of the alternating theta series, to order N.
QSeries theta_tilde(std::size_t order);

/// Exact truncated Cauchy product. Large operands go through Kronecker
/// substitution into a single GMP integer product.
QSeries mul(const QSeries& a, const QSeries& b);
/// Quadratic reference product; same result as mul.
QSeries mul_schoolbook(const QSeries& a, const QSeries& b);
/// a^e by repeated squaring; pow(a, 0) is one() at a's truncation.
QSeries pow(const QSeries& a, unsigned e);

/// One monomial coeff * theta^theta_exp * theta_tilde^tilde_exp.
struct IsobaricTerm {
  Rational coeff;
  unsigned theta_exp = 0;
  unsigned tilde_exp = 0;
};

/// sum_i c_i theta^e_i theta_tilde^f_i to order N. Each distinct power of
/// theta and theta_tilde is computed once and shared between terms.
QSeries isobaric_combine(std::span<const IsobaricTerm> terms, std::size_t order);

namespace detail {
/// Integer polynomial product truncated to `length` terms (Kronecker substitution).
std::vector<mpz_class> kronecker_product(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                         std::size_t length);
}  // namespace detail

}  // namespace siegel
