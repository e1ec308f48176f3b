#include <doctest.h>

#include <random>

#include "siegel/series.hpp"

using namespace siegel;

namespace {

QSeries random_series(std::mt19937_64& rng, std::size_t length, bool fractions) {
  std::uniform_int_distribution<long> small(-1000000, 1000000);
  std::uniform_int_distribution<int> bits(0, 300);
  std::vector<Rational> c(length);
  for (auto& x : c) {
    mpz_class num = small(rng);
    num <<= static_cast<unsigned>(bits(rng));
    if (rng() % 7 == 0) num = 0;
    x = num;
    if (fractions) {
      x /= mpz_class(1 + static_cast<long>(rng() % 97));
      x.canonicalize();
    }
  }
  return QSeries(c);
}

// Number of representations of n as a sum of `k` squares, by enumeration.
long reps(long n, int k) {
  if (k == 0) return n == 0 ? 1 : 0;
  long total = 0;
  for (long x = -n; x <= n; ++x) {
    if (x * x > n) continue;
    total += reps(n - x * x, k - 1);
  }
  return total;
}

}  // namespace

TEST_CASE("kronecker product matches schoolbook") {
  std::mt19937_64 rng(17);
  for (std::size_t len : {1u, 2u, 3u, 7u, 47u, 48u, 49u, 100u, 255u, 512u}) {
    for (bool fractions : {false, true}) {
      const QSeries a = random_series(rng, len, fractions);
      const QSeries b = random_series(rng, len, fractions);
      CHECK(mul(a, b) == mul_schoolbook(a, b));
    }
  }
}

TEST_CASE("product truncates to the shorter operand") {
  std::mt19937_64 rng(5);
  const QSeries a = random_series(rng, 300, true);
  const QSeries b = random_series(rng, 120, false);
  CHECK(mul(a, b).length() == 120);
  CHECK(mul(a, b) == mul(a.truncated(119), b));
}

TEST_CASE("truncation commutes with products and powers") {
  const QSeries t = theta(400);
  for (std::size_t m : {0u, 1u, 10u, 99u, 250u}) {
    CHECK(mul(t, theta_tilde(400)).truncated(m) == mul(t.truncated(m), theta_tilde(m)));
    CHECK(pow(t, 7).truncated(m) == pow(t.truncated(m), 7));
  }
}

TEST_CASE("theta powers count sums of squares") {
  const std::size_t order = 60;
  const QSeries t2 = pow(theta(order), 2);
  const QSeries t4 = pow(theta(order), 4);
  for (std::size_t n = 0; n <= order; ++n) {
    CHECK(t2[n] == reps(static_cast<long>(n), 2));
    CHECK(t4[n] == reps(static_cast<long>(n), 4));
  }
}

TEST_CASE("theta_tilde is the fourth power of the alternating theta") {
  const QSeries tt = theta_tilde(40);
  CHECK(tt[0] == 1);
  CHECK(tt[1] == -8);
  CHECK(tt[2] == 24);
  for (std::size_t n = 0; n <= 40; ++n) CHECK(tt[n] == ((n % 2) ? -1 : 1) * reps(static_cast<long>(n), 4));
  CHECK(tt == pow(alternating_theta(40), 4));
}

TEST_CASE("pow agrees with repeated multiplication") {
  std::mt19937_64 rng(9);
  const QSeries a = random_series(rng, 80, true);
  QSeries p = QSeries::one(79);
  for (unsigned e = 0; e <= 9; ++e) {
    CHECK(pow(a, e) == p);
    p = mul_schoolbook(p, a);
  }
}

TEST_CASE("isobaric_combine shares powers") {
  const std::vector<IsobaricTerm> terms = {{3, 2, 0}, {Rational(-1, 2), 1, 1}, {5, 0, 0}};
  const QSeries got = isobaric_combine(terms, 100);
  const QSeries want = pow(theta(100), 2).scaled(3) - mul(theta(100), theta_tilde(100)).scaled(Rational(1, 2)) +
                       QSeries::one(100).scaled(5);
  CHECK(got == want);
}
