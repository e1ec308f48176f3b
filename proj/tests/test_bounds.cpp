#include <doctest.h>

#include <cmath>

#include "siegel/bounds.hpp"
#include "siegel/evaluator.hpp"
#include "support.hpp"

using namespace siegel;
using namespace siegel::testing;

namespace {

// Composite Simpson for C int_{B-1}^{B-1+L} t^p exp(-2 pi delta t) dt.
long double simpson_tail(long double C, long double p, long double delta, long B) {
  const long double a = B - 1, L = 60.0L / delta + 40.0L, h = L / 200000;
  auto f = [&](long double t) { return C * std::pow(t, p) * std::exp(-2 * 3.14159265358979323846264L * delta * t); };
  long double s = f(a) + f(a + L);
  for (int i = 1; i < 200000; ++i) s += f(a + i * h) * ((i % 2) ? 4 : 2);
  return s * h / 3;
}

std::int64_t brute_count(std::int64_t t) {
  std::int64_t n = 0;
  for (std::int64_t a = 0; a <= t; ++a) {
    const std::int64_t c = t - a;
    for (std::int64_t b = -2 * t; b <= 2 * t; ++b)
      if (b * b <= 4 * a * c) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("Eisenstein bound constants") {
  const BigReal c4 = eisenstein_bound_const(4);
  CHECK(c4 <= 19230.0);
  CHECK(c4 >= 19229.0);
  CHECK(eisenstein_trace_bound(4, 3) >= eisenstein_bound_const(4) * 243L);
  CHECK_THROWS(eisenstein_bound_const(8));
}

TEST_CASE("cusp bound constants") {
  const BigReal m12 = cusp_bound_const(FormKind::Chi12, {0.1, 1.45});
  CHECK(m12 <= kTraceTailConstant);
  CHECK(m12 >= kTraceTailConstant - 1);
  const BigReal m10 = cusp_bound_const(FormKind::Chi10, {0.1, 1.5});
  CHECK(m10 <= 35557.0);
  CHECK(m10 >= 35556.0);
  CHECK(cusp_bound_exponent(FormKind::Chi10, {0.1, 1.5}) == doctest::Approx(6.05));
  CHECK(cusp_bound_exponent(FormKind::Chi12, {0.1, 1.45}) == doctest::Approx(7.0));
  CHECK(b2_constant(1.45).to_double() ==
        doctest::Approx(std::exp(std::pow(2.0, 1 / 1.45) / (1.45 * std::log(2.0)))).epsilon(1e-12));
  CHECK_THROWS(cusp_bound(FormKind::E4, 5, {}));
  CHECK_THROWS(BoundParams{0.0, 1.45}.validate());
  CHECK(bound_grid().size() == 12);
}

TEST_CASE("tail integral against quadrature") {
  for (auto [p, delta, B] : std::vector<std::tuple<double, double, long>>{{15, 4.3, 49}, {15, 1.66, 9}, {15, 1.0, 4}}) {
    const long double q = simpson_tail(kTraceTailConstant, p, delta, B);
    const double got = tail_integral(kTraceTailConstant, p, delta, B).to_double();
    CHECK(got >= static_cast<double>(q) * (1 - 1e-9));
    CHECK(got <= static_cast<double>(q) * (1 + 1e-6));
  }
  // Non-integer exponents are rounded up, so the closed form dominates.
  const long double q = simpson_tail(20 * 35557.0L, 13.2L, 4.3L, 5);
  const double got = tail_integral(20 * 35557.0, 13.2, 4.3, 5).to_double();
  CHECK(got >= static_cast<double>(q));
  CHECK(q == doctest::Approx(1.1e-34).epsilon(0.1));
  CHECK(tail_integral(1.0, 3, 1.0, 10) < tail_integral(1.0, 3, 1.0, 9));
  CHECK_THROWS(tail_integral(1.0, 3, 1.0, 0));
  CHECK_THROWS(tail_integral(1.0, 3, -1.0, 5));
}

TEST_CASE("trace bound") {
  const mpfr_prec_t bits = digits_to_bits(kBoundDigits);
  const std::int64_t b1 = solve_trace_bound(BigReal(4.3, bits), 524);
  CHECK(b1 >= 48);
  CHECK(b1 <= 50);
  CHECK(tail_integral(kTraceTailConstant, 15, 4.3, b1) <= BigReal::pow10(-524, bits));
  CHECK(tail_integral(kTraceTailConstant, 15, 4.3, b1 - 1) > BigReal::pow10(-524, bits));
  const std::int64_t b2 = solve_trace_bound(BigReal(1.66, bits), 14);
  CHECK(b2 >= 8);
  CHECK(b2 <= 10);
  CHECK(solve_trace_bound(BigReal(100.0, bits), 1) == 3);
}

TEST_CASE("counts of T per trace") {
  for (std::int64_t t = 0; t <= 30; ++t) CHECK(count_of_trace(t) == brute_count(t));
}

TEST_CASE("delta") {
  const SiegelPoint p = point({"0", "5", "0", "1", "0", "6"});
  const BigReal want = (BigReal(11L, p.bits()) - sqrt(BigReal(5L, p.bits()))) / 2L;
  CHECK(abs(delta_of(p) - want) < 1e-50);
  CHECK(delta_of(p) <= want);
  CHECK(abs(delta_of(point({"0", "2", "0", "0", "0", "3"})) - BigReal(2L, p.bits())) < 1e-50);
  CHECK_THROWS(delta_of(SiegelPoint{p.tau1, p.tau1, p.tau1, 60, std::nullopt, std::nullopt}));
}

TEST_CASE("magnitude bounds dominate form values") {
  CHECK(magnitude_bound(FormKind::E4, 1.0) <= 302.0);
  for (FormKind f : {FormKind::E4, FormKind::E6, FormKind::Chi10, FormKind::Chi12})
    CHECK(magnitude_bound(f, 2.0) < magnitude_bound(f, 1.0));
  TableCache cache;
  const SiegelPoint cm = cm_point(40);
  const FormValues v = evaluate_forms(cm, 20, cache);
  const double d = delta_of(cm).to_double();
  CHECK(v.e4.abs() <= magnitude_bound(FormKind::E4, d));
  CHECK(v.e6.abs() <= magnitude_bound(FormKind::E6, d));
  CHECK(v.chi10.abs() <= magnitude_bound(FormKind::Chi10, d));
  CHECK(v.chi12.abs() <= magnitude_bound(FormKind::Chi12, d));
}

TEST_CASE("chi10 lower bounds and plans") {
  TableCache cache;
  const SiegelPoint reduced = act(example_matrix(), example_point());
  const Chi10LowerBound lb = chi10_lower_bound(reduced, cache);
  CHECK(lb.certified);
  CHECK(lb.n == 28);
  CHECK(lb.majorant < abs(lb.partial_sum.re()));

  const PrecisionPlan plan = make_plan(cm_point(), 1, cache);
  CHECK(plan.certified);
  CHECK(plan.n == 12);
  CHECK(plan.l == 1 + 72);
  CHECK(plan.B == solve_trace_bound(plan.delta, plan.l));
  CHECK(plan.working_digits == plan.l + plan.coeff_bound_digits + 15);
}
