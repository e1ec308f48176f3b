#include "siegel/fourier.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "siegel/number_theory.hpp"

namespace siegel {
namespace {

// Accuracy implied by a decimal literal: nullopt for integers, else the
// number of digits after the point corrected by any exponent.
std::optional<long> literal_accuracy(const std::string& s) {
  const auto dot = s.find('.');
  const auto exp_pos = s.find_first_of("eE");
  if (dot == std::string::npos && exp_pos == std::string::npos) return std::nullopt;
  long frac = 0;
  if (dot != std::string::npos) {
    const auto end = exp_pos == std::string::npos ? s.size() : exp_pos;
    frac = static_cast<long>(end - dot - 1);
  }
  long exponent = 0;
  if (exp_pos != std::string::npos) exponent = std::stol(s.substr(exp_pos + 1));
  return frac - exponent;
}

long literal_digits(const std::string& s) {
  return static_cast<long>(std::count_if(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }));
}

BigComplex parse_complex(const std::string& re, const std::string& im, mpfr_prec_t bits) {
  return {BigReal::parse(re, bits), BigReal::parse(im, bits)};
}

}  // namespace

SiegelPoint SiegelPoint::parse(const std::array<std::string, 6>& parts, long digits, bool exact) {
  if (digits < 1) throw std::invalid_argument("digits must be positive");
  long longest = 0;
  std::optional<long> accuracy;
  for (const auto& p : parts) {
    longest = std::max(longest, literal_digits(p));
    if (exact) continue;
    if (auto a = literal_accuracy(p)) accuracy = accuracy ? std::min(*accuracy, *a) : *a;
  }
  // Hold the literals at least as precisely as written.
  const long held = std::max(digits, longest + 10);
  const mpfr_prec_t bits = digits_to_bits(held);
  SiegelPoint pt;
  pt.tau1 = parse_complex(parts[0], parts[1], bits);
  pt.z = parse_complex(parts[2], parts[3], bits);
  pt.tau2 = parse_complex(parts[4], parts[5], bits);
  pt.digits = held;
  pt.input_digits = accuracy;
  pt.source = parts;
  pt.validate();
  return pt;
}

SiegelPoint SiegelPoint::with_digits(long new_digits) const {
  if (source) {
    SiegelPoint pt = parse(*source, new_digits, !input_digits.has_value());
    pt.input_digits = input_digits;
    pt.digits = new_digits;
    const mpfr_prec_t bits = digits_to_bits(new_digits);
    pt.tau1 = pt.tau1.with_bits(bits);
    pt.z = pt.z.with_bits(bits);
    pt.tau2 = pt.tau2.with_bits(bits);
    return pt;
  }
  SiegelPoint pt = *this;
  const mpfr_prec_t bits = digits_to_bits(new_digits);
  pt.tau1 = tau1.with_bits(bits);
  pt.z = z.with_bits(bits);
  pt.tau2 = tau2.with_bits(bits);
  pt.digits = new_digits;
  return pt;
}

BigReal SiegelPoint::im_det() const { return tau1.im() * tau2.im() - z.im() * z.im(); }

bool SiegelPoint::im_positive_definite() const { return tau1.im().sign() > 0 && im_det().sign() > 0; }

void SiegelPoint::validate() const {
  if (!tau1.re().is_finite() || !tau1.im().is_finite() || !z.re().is_finite() || !z.im().is_finite() ||
      !tau2.re().is_finite() || !tau2.im().is_finite()) {
    throw std::invalid_argument("point has non-finite entries");
  }
  if (!im_positive_definite()) throw std::invalid_argument("Im(tau) is not positive definite");
}

PointPowers::PointPowers(const SiegelPoint& tau, std::int64_t max_trace) : max_trace_(max_trace) {
  if (max_trace < 0) throw std::invalid_argument("max_trace must be non-negative");
  const mpfr_prec_t bits = tau.bits();
  auto ladder = [&](const BigComplex& base) {
    std::vector<BigComplex> out;
    out.reserve(static_cast<std::size_t>(max_trace + 1));
    out.push_back(BigComplex::one(bits));
    for (std::int64_t k = 1; k <= max_trace; ++k) out.push_back(out.back() * base);
    return out;
  };
  q1_ = ladder(exp_2pi_i(tau.tau1.with_bits(bits)));
  q2_ = ladder(exp_2pi_i(tau.tau2.with_bits(bits)));
  q3_pos_ = ladder(exp_2pi_i(tau.z.with_bits(bits)));
  q3_neg_ = ladder(exp_2pi_i(-tau.z.with_bits(bits)));
}

const BigComplex& PointPowers::q3(std::int64_t b) const {
  if (b >= 0) return q3_pos_.at(static_cast<std::size_t>(b));
  return q3_neg_.at(static_cast<std::size_t>(-b));
}

std::int64_t count_of_trace(std::int64_t t) {
  std::int64_t n = 0;
  for (std::int64_t a = 0; a <= t; ++a) n += 2 * isqrt(4 * a * (t - a)) + 1;
  return n;
}

std::vector<BigComplex> trace_sums(const CoeffTable& table, const PointPowers& powers, std::int64_t max_trace) {
  if (max_trace > powers.max_trace()) throw std::invalid_argument("power ladders are too short");
  if (!table.covers(max_trace * max_trace, max_trace)) {
    throw std::out_of_range(name(table.form) + " table does not cover trace " + std::to_string(max_trace));
  }
  const mpfr_prec_t bits = powers.q1(0).bits();
  std::vector<BigComplex> sums;
  sums.reserve(static_cast<std::size_t>(max_trace + 1));
  sums.emplace_back(BigReal(table.constant, bits), BigReal(0L, bits));

  BigReal coeff(bits);
  for (std::int64_t t = 1; t <= max_trace; ++t) {
    BigComplex total(bits);
    for (std::int64_t a = 0; a <= t; ++a) {
      const std::int64_t c = t - a;
      const std::int64_t bmax = isqrt(4 * a * c);
      // a(T) depends on |b| only, so pair q3^b with q3^-b.
      BigComplex inner(bits);
      for (std::int64_t b = 0; b <= bmax; ++b) {
        const Rational& r = table.for_matrix(a, b, c);
        if (sgn(r) == 0) continue;
        mpfr_set_q(coeff.raw(), r.get_mpq_t(), MPFR_RNDN);
        if (b == 0) {
          inner += BigComplex(coeff, BigReal(0L, bits));
        } else {
          inner += (powers.q3(b) + powers.q3(-b)) * coeff;
        }
      }
      if (inner.re().is_zero() && inner.im().is_zero()) continue;
      total += inner * (powers.q1(a) * powers.q2(c));
    }
    sums.push_back(std::move(total));
  }
  return sums;
}

BigComplex evaluate_form(const CoeffTable& table, const PointPowers& powers, std::int64_t max_trace) {
  const auto sums = trace_sums(table, powers, max_trace);
  BigComplex total = sums.front();
  for (std::size_t t = 1; t < sums.size(); ++t) total += sums[t];
  return total;
}

}  // namespace siegel
