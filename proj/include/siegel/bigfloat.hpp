#pragma once

// Arbitrary-precision real and complex scalars on top of MPFR.
//
// Every value carries its own precision in bits. Binary operations produce a
// result at the larger of the two operand precisions, so a computation run
// entirely on values created at P bits stays at P bits.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <string_view>

namespace siegel {

/// Bits needed to hold `digits` decimal digits (plus a few guard bits).
mpfr_prec_t digits_to_bits(long digits);
/// Decimal digits representable at `bits`.
long bits_to_digits(mpfr_prec_t bits);

class BigReal {
 public:
  static constexpr mpfr_prec_t kDefaultBits = 128;

  BigReal() : BigReal(kDefaultBits) {}
  explicit BigReal(mpfr_prec_t bits);
  BigReal(long value, mpfr_prec_t bits);
  BigReal(double value, mpfr_prec_t bits);
  BigReal(const mpz_class& value, mpfr_prec_t bits);
  BigReal(const mpq_class& value, mpfr_prec_t bits);

  /// Parses a decimal literal such as "-13.25e3". Throws std::invalid_argument.
  static BigReal parse(std::string_view text, mpfr_prec_t bits);
  static BigReal pi(mpfr_prec_t bits);
  /// 10^e at the given precision.
  static BigReal pow10(long e, mpfr_prec_t bits);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  mpfr_prec_t bits() const { return mpfr_get_prec(value_); }
  /// Same value rounded to a new precision.
  BigReal with_bits(mpfr_prec_t bits) const;

  mpfr_srcptr raw() const { return value_; }
  mpfr_ptr raw() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  /// Exponent e with 2^(e-1) <= |x| < 2^e; undefined for zero.
  long exponent2() const { return mpfr_get_exp(value_); }

  /// Fixed-point rendering with `decimals` digits after the point.
  std::string to_fixed(int decimals) const;
  /// Scientific rendering with `digits` significant digits.
  std::string to_sci(int digits) const;

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  friend BigReal operator-(const BigReal& x);
  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator/(const BigReal& a, long b);
  friend BigReal operator+(const BigReal& a, long b);
  friend BigReal operator-(const BigReal& a, long b);

  friend int compare(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.value_, b.value_); }
  friend bool operator<(const BigReal& a, const BigReal& b) { return compare(a, b) < 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return compare(a, b) > 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return compare(a, b) >= 0; }
  friend bool operator==(const BigReal& a, const BigReal& b) { return compare(a, b) == 0; }
  friend bool operator<(const BigReal& a, double b) { return mpfr_cmp_d(a.value_, b) < 0; }
  friend bool operator>(const BigReal& a, double b) { return mpfr_cmp_d(a.value_, b) > 0; }
  friend bool operator<=(const BigReal& a, double b) { return mpfr_cmp_d(a.value_, b) <= 0; }
  friend bool operator>=(const BigReal& a, double b) { return mpfr_cmp_d(a.value_, b) >= 0; }

 private:
  mpfr_t value_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log10(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal pow(const BigReal& x, long e);
BigReal pow(const BigReal& x, const BigReal& e);
BigReal floor(const BigReal& x);
BigReal ceil(const BigReal& x);
BigReal round(const BigReal& x);
BigReal gamma(const BigReal& x);
BigReal zeta(const BigReal& x);
BigReal max(const BigReal& a, const BigReal& b);
BigReal min(const BigReal& a, const BigReal& b);
/// Nearest integer, throws std::overflow_error outside the long range.
long to_long(const BigReal& x);

/// Nudges a bound outward: up by a few ulps for upper bounds, down for lower.
BigReal round_up(const BigReal& x);
BigReal round_down(const BigReal& x);

class BigComplex {
 public:
  BigComplex() = default;
  explicit BigComplex(mpfr_prec_t bits) : re_(bits), im_(bits) {}
  BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}
  static BigComplex one(mpfr_prec_t bits) { return {BigReal(1L, bits), BigReal(0L, bits)}; }

  const BigReal& re() const { return re_; }
  const BigReal& im() const { return im_; }
  BigReal& re() { return re_; }
  BigReal& im() { return im_; }
  mpfr_prec_t bits() const { return re_.bits() > im_.bits() ? re_.bits() : im_.bits(); }
  BigComplex with_bits(mpfr_prec_t bits) const { return {re_.with_bits(bits), im_.with_bits(bits)}; }

  BigReal norm() const { return re_ * re_ + im_ * im_; }  // |z|^2
  BigReal abs() const { return sqrt(norm()); }
  BigComplex conj() const { return {re_, -im_}; }
  BigComplex inverse() const;

  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);
  BigComplex& operator*=(const BigComplex& rhs);
  BigComplex& operator*=(const BigReal& rhs);

  friend BigComplex operator-(const BigComplex& z) { return {-z.re_, -z.im_}; }
  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
  friend BigComplex operator*(const BigReal& a, BigComplex b) { return b *= a; }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) { return a * b.inverse(); }

 private:
  BigReal re_;
  BigReal im_;
};

BigComplex pow(const BigComplex& z, long e);
/// exp(2 pi i z).
BigComplex exp_2pi_i(const BigComplex& z);

}  // namespace siegel
