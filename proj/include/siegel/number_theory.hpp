#pragma once

// Small elementary number theory on machine integers plus exact divisor sums.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace siegel {

/// Prime factorization of n >= 1 by trial division, as (prime, exponent) pairs.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/// Positive divisors of n >= 1 in increasing order.
std::vector<std::int64_t> divisors(std::int64_t n);

/// sigma_k(n) = sum_{d | n} d^k, exact.
mpz_class sigma(unsigned k, std::int64_t n);

/// Moebius function.
int mobius(std::int64_t n);

/// Kronecker symbol (a / n) for n >= 1.
int kronecker(std::int64_t a, std::int64_t n);

/// gcd of three integers, non-negative; gcd(0,0,0) = 0.
std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c);

/// Largest f >= 1 with f^2 | n (n >= 1).
std::int64_t square_root_of_square_part(std::int64_t n);

/// true for n a perfect square (n >= 0).
bool is_square(std::int64_t n);

/// Floor of sqrt(n) for n >= 0.
std::int64_t isqrt(std::int64_t n);

struct DiscriminantSplit {
  std::int64_t fundamental;  // D0
  std::int64_t conductor;    // f, with D = D0 f^2
};

/// true when D is 0 or 1 mod 4 (D != 0 required by callers that need it).
bool is_discriminant(std::int64_t D);
/// true for fundamental discriminants, including 1.
bool is_fundamental(std::int64_t D);
/// Splits a nonzero discriminant as D0 f^2 with D0 fundamental.
/// Throws std::invalid_argument if D is not a discriminant.
DiscriminantSplit split_discriminant(std::int64_t D);

}  // namespace siegel
