#include "siegel/series.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace siegel {
namespace {

static_assert(GMP_NAIL_BITS == 0, "limb packing assumes no nail bits");

// Below this length the schoolbook integer product wins.
constexpr std::size_t kKroneckerThreshold = 48;

mpz_class common_denominator(const QSeries& s, std::size_t length) {
  mpz_class den = 1;
  for (std::size_t i = 0; i < length; ++i) {
    const mpz_class& d = s[i].get_den();
    if (d != 1) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  return den;
}

std::vector<mpz_class> scaled_numerators(const QSeries& s, std::size_t length, const mpz_class& den) {
  std::vector<mpz_class> out(length);
  for (std::size_t i = 0; i < length; ++i) {
    const Rational& c = s[i];
    if (c.get_den() == 1) {
      out[i] = c.get_num() * den;
    } else {
      out[i] = c.get_num() * (den / c.get_den());
    }
  }
  return out;
}

std::size_t max_bits(std::span<const mpz_class> v) {
  std::size_t bits = 0;
  for (const auto& x : v) {
    if (sgn(x) != 0) bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
  }
  return bits;
}

std::size_t bit_length(std::size_t n) {
  std::size_t bits = 0;
  while (n > 0) {
    ++bits;
    n >>= 1;
  }
  return bits;
}

mpz_class import_limbs(const std::vector<mp_limb_t>& limbs) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), limbs.size(), -1, sizeof(mp_limb_t), 0, 0, limbs.data());
  return z;
}

// Packs sum_i v_i 2^(slot_bits * i) for signed v_i with |v_i| < 2^(slot_bits - 1).
mpz_class pack(std::span<const mpz_class> v, std::size_t slot_limbs) {
  std::vector<mp_limb_t> pos(v.size() * slot_limbs, 0);
  std::vector<mp_limb_t> neg(v.size() * slot_limbs, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int s = sgn(v[i]);
    if (s == 0) continue;
    std::size_t written = 0;
    mpz_export((s > 0 ? pos : neg).data() + i * slot_limbs, &written, -1, sizeof(mp_limb_t), 0, 0,
               v[i].get_mpz_t());
  }
  return import_limbs(pos) - import_limbs(neg);
}

std::vector<mpz_class> schoolbook_integer(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                          std::size_t length) {
  std::vector<mpz_class> out(length);
  for (std::size_t i = 0; i < length && i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; i + j < length && j < b.size(); ++j) {
      if (sgn(b[j]) == 0) continue;
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return out;
}

class PowerCache {
 public:
  explicit PowerCache(QSeries base) : base_(std::move(base)) {}

  const QSeries& get(unsigned e) {
    if (auto it = cache_.find(e); it != cache_.end()) return it->second;
    if (e == 0) return cache_.emplace(0, QSeries::one(base_.order())).first->second;
    if (e == 1) return cache_.emplace(1, base_).first->second;
    // Split off the largest power already known, else halve.
    unsigned p = e / 2;
    for (const auto& [k, _] : cache_) {
      if (k >= 1 && k < e && k > p) p = k;
    }
    QSeries r = mul(get(p), get(e - p));
    return cache_.emplace(e, std::move(r)).first->second;
  }

 private:
  QSeries base_;
  std::map<unsigned, QSeries> cache_;
};

}  // namespace

QSeries::QSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
}

QSeries QSeries::one(std::size_t order) {
  QSeries s(order + 1);
  s.coeffs_[0] = 1;
  return s;
}

QSeries QSeries::truncated(std::size_t order) const {
  const std::size_t n = std::min(coeffs_.size(), order + 1);
  return QSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n)));
}

QSeries QSeries::scaled(const Rational& factor) const {
  QSeries out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i] * factor;
  return out;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.length(), b.length());
  QSeries out(n);
  for (std::size_t i = 0; i < n; ++i) out.coeffs_[i] = a[i] + b[i];
  return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.length(), b.length());
  QSeries out(n);
  for (std::size_t i = 0; i < n; ++i) out.coeffs_[i] = a[i] - b[i];
  return out;
}

QSeries theta(std::size_t order) {
  std::vector<Rational> c(order + 1);
  c[0] = 1;
  for (std::size_t n = 1; n * n <= order; ++n) c[n * n] = 2;
  return QSeries(std::move(c));
}

QSeries alternating_theta(std::size_t order) {
  std::vector<Rational> c(order + 1);
  c[0] = 1;
  for (std::size_t n = 1; n * n <= order; ++n) c[n * n] = (n % 2 == 0) ? 2 : -2;
  return QSeries(std::move(c));
}

QSeries theta_tilde(std::size_t order) { return pow(alternating_theta(order), 4); }

namespace detail {

std::vector<mpz_class> kronecker_product(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                         std::size_t length) {
  a = a.first(std::min(a.size(), length));
  b = b.first(std::min(b.size(), length));
  if (a.empty() || b.empty() || length == 0) return std::vector<mpz_class>(length);

  // Every product coefficient is bounded by min(|a|,|b|) * max|a_i| * max|b_j|;
  // one extra bit keeps the balanced digit strictly inside the slot.
  const std::size_t bits = max_bits(a) + max_bits(b) + bit_length(std::min(a.size(), b.size())) + 2;
  const std::size_t slot_limbs = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

  mpz_class product = pack(a, slot_limbs) * pack(b, slot_limbs);

  // Adding 2^(slot-1) to every slot makes all digits non-negative with no borrows.
  const std::size_t slots = a.size() + b.size() - 1;
  std::vector<mp_limb_t> offset_limbs(slots * slot_limbs, 0);
  for (std::size_t i = 0; i < slots; ++i) {
    offset_limbs[i * slot_limbs + slot_limbs - 1] = mp_limb_t(1) << (GMP_NUMB_BITS - 1);
  }
  product += import_limbs(offset_limbs);

  std::vector<mp_limb_t> limbs(slots * slot_limbs, 0);
  std::size_t written = 0;
  mpz_export(limbs.data(), &written, -1, sizeof(mp_limb_t), 0, 0, product.get_mpz_t());
  if (written > limbs.size()) throw std::logic_error("kronecker_product: slot overflow");

  mpz_class half;
  mpz_setbit(half.get_mpz_t(), slot_limbs * GMP_NUMB_BITS - 1);
  std::vector<mpz_class> out(length);
  const std::size_t keep = std::min(length, slots);
  std::vector<mp_limb_t> slot(slot_limbs);
  for (std::size_t i = 0; i < keep; ++i) {
    std::copy_n(limbs.begin() + static_cast<std::ptrdiff_t>(i * slot_limbs), slot_limbs, slot.begin());
    out[i] = import_limbs(slot) - half;
  }
  return out;
}

}  // namespace detail

QSeries mul_schoolbook(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.length(), b.length());
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (sgn(b[j]) == 0) continue;
      c[i + j] += a[i] * b[j];
    }
  }
  return QSeries(std::move(c));
}

QSeries mul(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.length(), b.length());
  if (n == 0) return QSeries();
  const mpz_class da = common_denominator(a, n);
  const mpz_class db = common_denominator(b, n);
  const auto ia = scaled_numerators(a, n, da);
  const auto ib = scaled_numerators(b, n, db);
  const auto prod = n < kKroneckerThreshold ? schoolbook_integer(ia, ib, n) : detail::kronecker_product(ia, ib, n);

  const mpz_class den = da * db;
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = Rational(prod[i], den);
  }
  return QSeries(std::move(c));
}

QSeries pow(const QSeries& a, unsigned e) {
  if (a.empty()) return a;
  QSeries result = QSeries::one(a.order());
  QSeries base = a;
  while (e > 0) {
    if (e & 1u) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

QSeries isobaric_combine(std::span<const IsobaricTerm> terms, std::size_t order) {
  PowerCache theta_powers(theta(order));
  PowerCache tilde_powers(theta_tilde(order));
  std::vector<Rational> acc(order + 1);
  for (const auto& term : terms) {
    const QSeries& tp = theta_powers.get(term.theta_exp);
    QSeries monomial = term.tilde_exp == 0 ? tp : mul(tp, tilde_powers.get(term.tilde_exp));
    for (std::size_t k = 0; k <= order; ++k) {
      if (sgn(monomial[k]) != 0) acc[k] += term.coeff * monomial[k];
    }
  }
  return QSeries(std::move(acc));
}

}  // namespace siegel
