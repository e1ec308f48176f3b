#include "siegel/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace siegel {
namespace {

constexpr double kLog2Of10 = 3.32192809488736234787;

mpfr_prec_t max_bits(const BigReal& a, const BigReal& b) { return std::max(a.bits(), b.bits()); }

std::string take_mpfr_string(char* s) {
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

template <typename F>
BigReal unary(const BigReal& x, F f) {
  BigReal r(x.bits());
  f(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

}  // namespace

mpfr_prec_t digits_to_bits(long digits) {
  return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(std::max(digits, 1L)) * kLog2Of10)) + 16;
}

long bits_to_digits(mpfr_prec_t bits) { return static_cast<long>(std::floor(static_cast<double>(bits) / kLog2Of10)); }

BigReal::BigReal(mpfr_prec_t bits) {
  mpfr_init2(value_, std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN));
  mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long value, mpfr_prec_t bits) : BigReal(bits) { mpfr_set_si(value_, value, MPFR_RNDN); }
BigReal::BigReal(double value, mpfr_prec_t bits) : BigReal(bits) { mpfr_set_d(value_, value, MPFR_RNDN); }
BigReal::BigReal(const mpz_class& value, mpfr_prec_t bits) : BigReal(bits) {
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}
BigReal::BigReal(const mpq_class& value, mpfr_prec_t bits) : BigReal(bits) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigReal BigReal::parse(std::string_view text, mpfr_prec_t bits) {
  std::string s(text);
  BigReal r(bits);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == nullptr || end == s.c_str() || *end != '\0' || !r.is_finite()) {
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
  return r;
}

BigReal BigReal::pi(mpfr_prec_t bits) {
  BigReal r(bits);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

BigReal BigReal::pow10(long e, mpfr_prec_t bits) {
  BigReal r(bits);
  mpfr_ui_pow_ui(r.value_, 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.value_, 1, r.value_, MPFR_RNDN);
  return r;
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(value_, other.bits());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.bits());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

BigReal BigReal::with_bits(mpfr_prec_t bits) const {
  BigReal r(bits);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

std::string BigReal::to_fixed(int decimals) const {
  char* s = nullptr;
  if (mpfr_asprintf(&s, "%.*Rf", decimals, value_) < 0) throw std::runtime_error("mpfr_asprintf failed");
  return take_mpfr_string(s);
}

std::string BigReal::to_sci(int digits) const {
  char* s = nullptr;
  if (mpfr_asprintf(&s, "%.*Re", std::max(digits - 1, 0), value_) < 0) {
    throw std::runtime_error("mpfr_asprintf failed");
  }
  return take_mpfr_string(s);
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator-=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator*=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator/=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal operator-(const BigReal& x) { return unary(x, mpfr_neg); }

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(max_bits(a, b));
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(max_bits(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r(max_bits(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r(max_bits(a, b));
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigReal operator*(const BigReal& a, long b) {
  BigReal r(a.bits());
  mpfr_mul_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}
BigReal operator/(const BigReal& a, long b) {
  BigReal r(a.bits());
  mpfr_div_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}
BigReal operator+(const BigReal& a, long b) {
  BigReal r(a.bits());
  mpfr_add_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}
BigReal operator-(const BigReal& a, long b) {
  BigReal r(a.bits());
  mpfr_sub_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

BigReal abs(const BigReal& x) { return unary(x, mpfr_abs); }
BigReal sqrt(const BigReal& x) { return unary(x, mpfr_sqrt); }
BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }
BigReal log(const BigReal& x) { return unary(x, mpfr_log); }
BigReal log10(const BigReal& x) { return unary(x, mpfr_log10); }
BigReal sin(const BigReal& x) { return unary(x, mpfr_sin); }
BigReal cos(const BigReal& x) { return unary(x, mpfr_cos); }
BigReal gamma(const BigReal& x) { return unary(x, mpfr_gamma); }
BigReal zeta(const BigReal& x) { return unary(x, mpfr_zeta); }

BigReal pow(const BigReal& x, long e) {
  BigReal r(x.bits());
  mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, const BigReal& e) {
  BigReal r(std::max(x.bits(), e.bits()));
  mpfr_pow(r.raw(), x.raw(), e.raw(), MPFR_RNDN);
  return r;
}

BigReal floor(const BigReal& x) {
  BigReal r(x.bits());
  mpfr_floor(r.raw(), x.raw());
  return r;
}
BigReal ceil(const BigReal& x) {
  BigReal r(x.bits());
  mpfr_ceil(r.raw(), x.raw());
  return r;
}
BigReal round(const BigReal& x) {
  BigReal r(x.bits());
  mpfr_round(r.raw(), x.raw());
  return r;
}

BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }
BigReal min(const BigReal& a, const BigReal& b) { return a < b ? a : b; }

long to_long(const BigReal& x) {
  if (!mpfr_fits_slong_p(x.raw(), MPFR_RNDN)) throw std::overflow_error("value does not fit in a long");
  return mpfr_get_si(x.raw(), MPFR_RNDN);
}

BigReal round_up(const BigReal& x) {
  BigReal r = x;
  for (int i = 0; i < 4; ++i) mpfr_nextabove(r.raw());
  return r;
}

BigReal round_down(const BigReal& x) {
  BigReal r = x;
  for (int i = 0; i < 4; ++i) mpfr_nextbelow(r.raw());
  return r;
}

BigComplex BigComplex::inverse() const {
  BigReal n = norm();
  return {re_ / n, -(im_ / n)};
}

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}
BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}
BigComplex& BigComplex::operator*=(const BigComplex& rhs) {
  *this = *this * rhs;
  return *this;
}
BigComplex& BigComplex::operator*=(const BigReal& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

BigComplex pow(const BigComplex& z, long e) {
  if (e < 0) return pow(z.inverse(), -e);
  BigComplex result = BigComplex::one(z.bits());
  BigComplex base = z;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

BigComplex exp_2pi_i(const BigComplex& z) {
  const mpfr_prec_t bits = z.bits();
  BigReal two_pi = BigReal::pi(bits) * 2L;
  BigReal modulus = exp(-(two_pi * z.im()));
  BigReal angle = two_pi * z.re();
  BigReal s(bits);
  BigReal c(bits);
  mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
  return {modulus * c, modulus * s};
}

}  // namespace siegel
