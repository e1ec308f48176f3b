#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "siegel/number_theory.hpp"
#include "siegel/tables.hpp"
#include "support.hpp"

using namespace siegel;
using namespace siegel::testing;

namespace {

using Key = std::array<std::int64_t, 3>;
using SiegelSeries = std::map<Key, Rational>;

// All T >= 0 with trace <= t, as a truncated Siegel q-expansion.
SiegelSeries expansion(FormKind f, std::int64_t t) {
  SiegelSeries s;
  for (std::int64_t a = 0; a <= t; ++a)
    for (std::int64_t c = 0; a + c <= t; ++c)
      for (std::int64_t b = -2 * t; b <= 2 * t; ++b)
        if (b * b <= 4 * a * c) s[{a, b, c}] = coeff_for_matrix(f, a, b, c);
  return s;
}

SiegelSeries multiply(const SiegelSeries& x, const SiegelSeries& y, std::int64_t t) {
  SiegelSeries r;
  for (const auto& [k1, v1] : x)
    for (const auto& [k2, v2] : y) {
      const Key k{k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]};
      if (k[0] + k[2] <= t) r[k] += v1 * v2;
    }
  return r;
}

SiegelSeries combine(const std::vector<std::pair<Rational, SiegelSeries>>& terms) {
  SiegelSeries r;
  for (const auto& [c, s] : terms)
    for (const auto& [k, v] : s) r[k] += c * v;
  return r;
}

}  // namespace

TEST_CASE("E4 row N = 16") {
  const CoeffTable t = build_table(FormKind::E4, 16, 3);
  REQUIRE(t.posdef[16].size() == 4);
  CHECK(t.posdef[16][0] == 997920);
  CHECK(t.posdef[16][1] == 1239840);
  CHECK(t.posdef[16][2] == 0);
  CHECK(t.posdef[16][3] == 1239840);
  CHECK(t.constant == 1);
  CHECK(t.degenerate_at(1) == 240);
  CHECK(t.degenerate_at(2) == 240 * 9);
}

TEST_CASE("small cusp coefficients") {
  CHECK(coeff_for_matrix(FormKind::Chi10, 1, 0, 1) == Rational(1, 2));
  CHECK(coeff_for_matrix(FormKind::Chi12, 1, 0, 1) == Rational(5, 6));
  CHECK(coeff_for_matrix(FormKind::Chi10, 1, 1, 1) == Rational(-1, 4));
  CHECK(coeff_for_matrix(FormKind::Chi12, 1, 1, 1) == Rational(1, 12));
  CHECK(coeff(FormKind::Chi10, 0, 0) == 0);
  CHECK(coeff(FormKind::Chi10, 0, 5) == 0);
  CHECK(coeff(FormKind::E6, 0, 0) == 1);
  CHECK(coeff(FormKind::E6, 0, 2) == -504 * 33);
}

TEST_CASE("table entries agree with single-coefficient lookups") {
  for (FormKind f : kAllForms) {
    const CoeffTable t = build_table(f, 200, 10);
    for (std::int64_t N = 1; N <= 200; ++N) {
      const std::int64_t fmax = square_root_of_square_part(N);
      CHECK(static_cast<std::int64_t>(t.posdef[static_cast<std::size_t>(N)].size()) == fmax);
      for (std::int64_t d = 1; d <= fmax; ++d) CHECK(t.at(N, d) == coeff(f, N, d));
    }
    for (std::int64_t s = 1; s <= 10; ++s) CHECK(t.degenerate_at(s) == coeff(f, 0, s));
  }
}

TEST_CASE("coefficients are GL2(Z)-invariant") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::int64_t> entry(0, 12);
  const CoeffTable t = build_table(FormKind::Chi12, 5000, 200);
  int checked = 0;
  while (checked < 100) {
    const std::int64_t a = entry(rng), c = entry(rng);
    const std::int64_t bmax = isqrt(4 * a * c);
    const std::int64_t b = bmax == 0 ? 0 : static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * bmax + 1)) - bmax;
    const Int2x2 u = random_unimodular(rng);
    const auto [a2, b2, c2] = transform(u, a, b, c);
    if (4 * a2 * c2 - b2 * b2 > 5000 || a2 + c2 > 200) continue;
    CHECK(4 * a2 * c2 - b2 * b2 == 4 * a * c - b * b);
    CHECK(gcd3(a2, b2, c2) == gcd3(a, b, c));
    CHECK(t.for_matrix(a2, b2, c2) == t.for_matrix(a, b, c));
    CHECK(coeff_for_matrix(FormKind::E10, a2, b2, c2) == coeff_for_matrix(FormKind::E10, a, b, c));
    ++checked;
  }
}

TEST_CASE("cusp forms agree with their Eisenstein expressions") {
  const std::int64_t t = 4;
  const SiegelSeries e4 = expansion(FormKind::E4, t), e6 = expansion(FormKind::E6, t);
  const SiegelSeries e10 = expansion(FormKind::E10, t), e12 = expansion(FormKind::E12, t);

  const Rational k10(-43867, mpz_class(4096) * 243 * 25 * 7 * 53);
  const SiegelSeries chi10 = combine({{k10, multiply(e4, e6, t)}, {-k10, e10}});
  for (const auto& [k, v] : chi10) CHECK(v == coeff_for_matrix(FormKind::Chi10, k[0], k[1], k[2]));

  const Rational k12(mpz_class(131) * 593, mpz_class(8192) * 2187 * 125 * 49 * 337);
  const SiegelSeries e4cube = multiply(multiply(e4, e4, t), e4, t);
  const SiegelSeries chi12 =
      combine({{k12 * 441, e4cube}, {k12 * 250, multiply(e6, e6, t)}, {k12 * -691, e12}});
  for (const auto& [k, v] : chi12) CHECK(v == coeff_for_matrix(FormKind::Chi12, k[0], k[1], k[2]));
}

TEST_CASE("extend_table keeps existing rows") {
  const CoeffTable small = build_table(FormKind::E12, 50, 4);
  const CoeffTable big = extend_table(small, 120, 9);
  CHECK(big == build_table(FormKind::E12, 120, 9));
  CHECK(extend_table(big, 10, 2) == big);
}

TEST_CASE("serialization round trip and format") {
  const CoeffTable t = build_table(FormKind::E4, 16, 3);
  const std::string text = serialize_table(t);
  CHECK(text.rfind("SIEGEL-COEFFS v1 E4 4 16 3\n", 0) == 0);
  CHECK(text.find("P 16 2 1239840/1\n") != std::string::npos);
  CHECK(text.find("P 16 3 ") == std::string::npos);
  CHECK(parse_table(text) == t);
  CHECK(parse_table(text, FormKind::E4) == t);
  const CoeffTable c = build_table(FormKind::Chi10, 40, 2);
  CHECK(parse_table(serialize_table(c)) == c);
}

TEST_CASE("corrupt tables are rejected") {
  const std::string text = serialize_table(build_table(FormKind::E6, 30, 2));
  auto kind_of = [](const std::string& s, std::optional<FormKind> f = std::nullopt) {
    try {
      parse_table(s, f);
    } catch (const TableError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  std::string tampered = text;
  tampered.replace(tampered.find("P 3 1 "), 6, "P 3 1 1");
  CHECK(kind_of(tampered) == static_cast<int>(TableError::Kind::Checksum));
  std::string versioned = text;
  versioned.replace(versioned.find("v1"), 2, "v2");
  CHECK(kind_of(versioned) == static_cast<int>(TableError::Kind::Version));
  CHECK(kind_of(text, FormKind::E4) == static_cast<int>(TableError::Kind::FormMismatch));
  CHECK(kind_of("hello\n") == static_cast<int>(TableError::Kind::Malformed));
  CHECK(kind_of(text.substr(0, text.size() / 2)) != -1);
  CHECK_THROWS_AS(load_table(std::filesystem::path("/nonexistent/e4.v1.coeffs")), TableError);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("table cache persists, extends and recovers") {
  const auto dir = temp_dir("cache");
  std::ostringstream warnings;
  {
    TableCache cache(dir, &warnings);
    const auto t = cache.get(FormKind::E4, 50, 5);
    CHECK(t->nmax >= 50);
    CHECK(std::filesystem::exists(dir / "e4.v1.coeffs"));
    const auto t2 = cache.get(FormKind::E4, 80, 5);
    CHECK(t2->nmax >= 80);
    CHECK(*t2 == build_table(FormKind::E4, t2->nmax, t2->tmax));
  }
  {
    TableCache cache(dir, &warnings);
    const auto t = cache.get(FormKind::E4, 80, 5);
    CHECK(*t == build_table(FormKind::E4, t->nmax, t->tmax));
    CHECK(warnings.str().empty());
  }
  {
    std::ofstream(dir / "e4.v1.coeffs") << "garbage\n";
    TableCache cache(dir, &warnings);
    const auto t = cache.get(FormKind::E4, 20, 2);
    CHECK(*t == build_table(FormKind::E4, t->nmax, t->tmax));
    CHECK(!warnings.str().empty());
    CHECK(load_table(dir / "e4.v1.coeffs", FormKind::E4) == *t);
  }
  std::filesystem::remove_all(dir);
}
