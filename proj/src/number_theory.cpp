#include "siegel/number_theory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace siegel {

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

mpz_class sigma(unsigned k, std::int64_t n) {
  mpz_class total = 0;
  mpz_class term;
  for (std::int64_t d : divisors(n)) {
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(d), k);
    total += term;
  }
  return total;
}

int mobius(std::int64_t n) {
  int sign = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("kronecker: n must be positive");
  return mpz_kronecker(mpz_class(static_cast<long>(a)).get_mpz_t(), mpz_class(static_cast<long>(n)).get_mpz_t());
}

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) { return std::gcd(std::gcd(a, b), c); }

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative argument");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), mpz_class(static_cast<long>(n)).get_mpz_t());
  return r.get_si();
}

bool is_square(std::int64_t n) {
  if (n < 0) return false;
  const std::int64_t r = isqrt(n);
  return r * r == n;
}

std::int64_t square_root_of_square_part(std::int64_t n) {
  std::int64_t f = 1;
  for (const auto& [p, e] : factorize(n)) {
    for (int i = 0; i < e / 2; ++i) f *= p;
  }
  return f;
}

bool is_discriminant(std::int64_t D) {
  const std::int64_t r = ((D % 4) + 4) % 4;
  return r == 0 || r == 1;
}

DiscriminantSplit split_discriminant(std::int64_t D) {
  if (D == 0 || !is_discriminant(D)) {
    throw std::invalid_argument("not a nonzero discriminant: " + std::to_string(D));
  }
  const std::int64_t m = square_root_of_square_part(D < 0 ? -D : D);
  const std::int64_t s = D / (m * m);  // squarefree part with sign
  if (((s % 4) + 4) % 4 == 1) return {s, m};
  // s = 2,3 mod 4 forces 4 | D/s, so m is even.
  return {4 * s, m / 2};
}

bool is_fundamental(std::int64_t D) {
  if (D == 1) return true;
  if (D == 0 || !is_discriminant(D)) return false;
  return split_discriminant(D).conductor == 1;
}

}  // namespace siegel
