#include "siegel/halfint.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "siegel/number_theory.hpp"

namespace siegel {
namespace {

Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::vector<IsobaricTerm> cohen_terms(unsigned w) {
  switch (w) {
    case 4:
      return {{q(1, 8), 7, 0}, {q(7, 8), 3, 1}};
    case 6:
      return {{q(-1, 32), 11, 0}, {q(22, 32), 7, 1}, {q(11, 32), 3, 2}};
    case 10: {
      const long d = 22459904;
      return {{q(-43867, d), 19, 0},
              {q(725876, d), 15, 1},
              {q(12824886, d), 11, 2},
              {q(8845412, d), 7, 3},
              {q(107597, d), 3, 4}};
    }
    case 12: {
      const long d = 159094784;
      return {{q(77683, d), 23, 0},     {q(212405, d), 19, 1},   {q(38627902, d), 15, 2},
              {q(100820362, d), 11, 3}, {q(19313951, d), 7, 4}, {q(42481, d), 3, 5}};
    }
    default:
      throw std::invalid_argument("cohen_series: unsupported weight " + std::to_string(w));
  }
}

std::vector<IsobaricTerm> cusp_terms(unsigned w) {
  switch (w) {
    case 10:
      return {{q(1, 4096), 15, 1}, {q(-3, 4096), 11, 2}, {q(3, 4096), 7, 3}, {q(-1, 4096), 3, 4}};
    case 12:
      return {{q(5, 16384), 19, 1},
              {q(-16, 16384), 15, 2},
              {q(18, 16384), 11, 3},
              {q(-8, 16384), 7, 4},
              {q(1, 16384), 3, 5}};
    default:
      throw std::invalid_argument("cusp_series: unsupported weight " + std::to_string(w));
  }
}

// Coefficients of a / b as power series in t, both given to `order`.
std::vector<Rational> series_divide(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                    std::size_t order) {
  std::vector<Rational> out(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    Rational acc = a[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= b[j] * out[k - j];
    out[k] = acc / b[0];
  }
  return out;
}

// B_0(chi) .. B_order(chi) for chi = (D0/.) with modulus n = |D0|.
std::vector<Rational> bernoulli_row(std::int64_t D0, std::size_t order) {
  const std::int64_t n = D0 < 0 ? -D0 : D0;
  // (e^{nt} - 1)/t = sum_j n^{j+1} t^j / (j+1)!
  // sum_r chi(r) e^{rt} = sum_j (sum_r chi(r) r^j) t^j / j!
  std::vector<Rational> den(order + 1);
  std::vector<Rational> num(order + 1);
  mpz_class fact = 1;  // j!
  for (std::size_t j = 0; j <= order; ++j) {
    if (j > 0) fact *= static_cast<unsigned long>(j);
    mpz_class npow;
    mpz_ui_pow_ui(npow.get_mpz_t(), static_cast<unsigned long>(n), j + 1);
    den[j] = Rational(npow, fact * static_cast<unsigned long>(j + 1));
    den[j].canonicalize();
    mpz_class moment = 0;
    mpz_class rpow;
    for (std::int64_t r = 1; r <= n; ++r) {
      const int chi = kronecker(D0, r);
      if (chi == 0) continue;
      mpz_ui_pow_ui(rpow.get_mpz_t(), static_cast<unsigned long>(r), j);
      if (chi > 0) {
        moment += rpow;
      } else {
        moment -= rpow;
      }
    }
    num[j] = Rational(moment, fact);
    num[j].canonicalize();
  }
  auto quotient = series_divide(num, den, order);
  mpz_class k_fact = 1;
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) k_fact *= static_cast<unsigned long>(k);
    quotient[k] *= Rational(k_fact);
  }
  return quotient;
}

std::mutex bernoulli_mutex;
std::map<std::int64_t, std::vector<Rational>> bernoulli_cache;

Rational cached_bernoulli(std::int64_t D0, unsigned k) {
  std::lock_guard<std::mutex> lock(bernoulli_mutex);
  auto& row = bernoulli_cache[D0];
  if (row.size() <= k) row = bernoulli_row(D0, std::max<std::size_t>(k, 24));
  return row[k];
}

HalfIntTable make_table(HalfIntKind kind, const std::vector<IsobaricTerm>& terms, std::size_t order,
                        Rational normalization) {
  HalfIntTable t;
  t.kind = kind;
  t.coeffs = isobaric_combine(terms, order);
  t.normalization = std::move(normalization);
  return t;
}

}  // namespace

std::string to_string(HalfIntKind kind) {
  switch (kind) {
    case HalfIntKind::H4: return "H4";
    case HalfIntKind::H6: return "H6";
    case HalfIntKind::H10: return "H10";
    case HalfIntKind::H12: return "H12";
    case HalfIntKind::K10: return "K10";
    case HalfIntKind::K12: return "K12";
  }
  return "?";
}

unsigned weight_of(HalfIntKind kind) {
  switch (kind) {
    case HalfIntKind::H4: return 4;
    case HalfIntKind::H6: return 6;
    case HalfIntKind::H10:
    case HalfIntKind::K10: return 10;
    case HalfIntKind::H12:
    case HalfIntKind::K12: return 12;
  }
  return 0;
}

HalfIntTable cohen_series(unsigned w, std::size_t order) {
  const auto terms = cohen_terms(w);
  const HalfIntKind kind = w == 4 ? HalfIntKind::H4 : w == 6 ? HalfIntKind::H6 : w == 10 ? HalfIntKind::H10
                                                                                          : HalfIntKind::H12;
  return make_table(kind, terms, order, eisenstein_normalization(w));
}

HalfIntTable cusp_series(unsigned w, std::size_t order) {
  const auto terms = cusp_terms(w);
  return w == 10 ? make_table(HalfIntKind::K10, terms, order, q(-1, 4))
                 : make_table(HalfIntKind::K12, terms, order, q(1, 12));
}

Rational bernoulli(unsigned k) {
  if (k == 1) return q(-1, 2);
  return cached_bernoulli(1, k);
}

Rational eisenstein_normalization(unsigned w) {
  if (w < 2 || w % 2 != 0) throw std::invalid_argument("eisenstein_normalization: weight must be even");
  return Rational(-2 * static_cast<long>(w)) / bernoulli(w);
}

Rational gen_bernoulli(std::int64_t D0, unsigned k) {
  if (!(D0 == 1 || (D0 < 0 && is_fundamental(D0)))) {
    throw std::invalid_argument("gen_bernoulli: " + std::to_string(D0) +
                                " is not 1 or a negative fundamental discriminant");
  }
  return cached_bernoulli(D0, k);
}

Rational lvalue(std::int64_t D0, unsigned w) {
  if (w < 2) throw std::invalid_argument("lvalue: weight must be at least 2");
  return -gen_bernoulli(D0, w - 1) / Rational(static_cast<long>(w - 1));
}

Rational alpha_direct(unsigned w, std::int64_t D) {
  if (D > 0) throw std::invalid_argument("alpha_direct: D must be <= 0");
  if (D == 0) return 1;
  if (!is_discriminant(D)) return 0;
  const auto [D0, f] = split_discriminant(D);
  mpz_class sum = 0;
  for (std::int64_t d : divisors(f)) {
    const int mu = mobius(d);
    if (mu == 0) continue;
    const int chi = kronecker(D0, d);
    if (chi == 0) continue;
    mpz_class dpow;
    mpz_ui_pow_ui(dpow.get_mpz_t(), static_cast<unsigned long>(d), w - 2);
    mpz_class term = dpow * sigma(2 * w - 3, f / d);
    if (mu * chi > 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  const Rational zeta_value = -bernoulli(2 * w - 2) / Rational(static_cast<long>(2 * w - 2));
  return lvalue(D0, w) * Rational(sum) / zeta_value;
}

}  // namespace siegel
