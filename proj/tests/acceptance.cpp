// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "siegel/bounds.hpp"
#include "siegel/evaluator.hpp"
#include "siegel/halfint.hpp"
#include "siegel/number_theory.hpp"
#include "siegel/verify.hpp"
#include "support.hpp"

using namespace siegel;
using namespace siegel::testing;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

TableCache& cache() {
  static TableCache c;
  return c;
}

const std::string kJ1Printed = "17399743914575167430246482183.29799";

const IgusaValues& example_k50() {
  static const IgusaValues v = igusa(example_point(), 50, cache());
  return v;
}

bool near(const BigReal& a, double b, double rel) { return std::abs(a.to_double() - b) <= rel * std::abs(b); }

bool series_matches(const QSeries& s, const std::map<std::size_t, Rational>& printed, std::size_t order,
                    std::string& why) {
  for (std::size_t n = 0; n <= order; ++n) {
    const auto it = printed.find(n);
    const Rational want = it == printed.end() ? Rational(0) : it->second;
    if (s[n] != want) {
      why = "q^" + std::to_string(n) + ": got " + s[n].get_str() + ", printed " + want.get_str();
      return false;
    }
  }
  return true;
}

// Partial sum of chi10 over T of trace <= t0.
BigComplex chi10_partial(const SiegelPoint& p, std::int64_t t0) {
  const auto table = cache().get(FormKind::Chi10, t0 * t0, t0);
  const PointPowers pw(p, t0);
  return evaluate_form(*table, pw, t0);
}

template <class F>
double best_time(F&& f, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

Outcome criterion1() {
  const IgusaValues& v = example_k50();
  const std::string j1 = v.j1.re().to_fixed(50);
  std::ostringstream d;
  d << "j1 = " << j1 << ", certified " << v.certified;
  return {v.certified && j1.rfind(kJ1Printed, 0) == 0 && abs(v.j1.im()) < 1e-50, d.str()};
}

Outcome criterion2() {
  const IgusaValues v = igusa(cm_point(), 1, cache());
  const BigReal target(6202728393750L, v.j1.bits());
  const BigReal e1 = abs(v.j1.re() - target);
  const BigReal e2 = abs(v.j2.re() - round(v.j2.re()));
  const BigReal e3 = abs(v.j3.re() - round(v.j3.re()));
  std::ostringstream d;
  d << "j1 = " << v.j1.re().to_fixed(6) << ", j2 = " << v.j2.re().to_fixed(6) << ", j3 = " << v.j3.re().to_fixed(6)
    << ", B = " << v.plan.B;
  const bool ok = v.certified && e1 < 1e-3 && round(v.j1.re()) == target && e2 < 0.1 && e3 < 0.1;
  return {ok, d.str()};
}

Outcome criterion3() {
  std::string why;
  bool ok = series_matches(cohen_series(4, 11).normalized(),
                           {{0, 240}, {3, 13440}, {4, 30240}, {7, 138240}, {8, 181440}, {11, 362880}}, 11, why) &&
            series_matches(cohen_series(6, 10).normalized(),
                           {{0, -504}, {3, 44352}, {4, 166320}, {7, 2128896}, {8, 3792096}}, 10, why) &&
            series_matches(cusp_series(10, 11).normalized(),
                           {{3, Rational(-1, 4)}, {4, Rational(1, 2)}, {7, 4}, {8, -9}, {11, Rational(-99, 4)}}, 11,
                           why) &&
            series_matches(cusp_series(12, 11).normalized(),
                           {{3, Rational(1, 12)}, {4, Rational(5, 6)}, {7, Rational(-22, 3)}, {8, -11},
                            {11, Rational(425, 4)}},
                           11, why);
  return {ok, ok ? "240 H4, -504 H6, -1/4 K10, 1/12 K12 match" : why};
}

Outcome criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = verify_oracle(500);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = true;
  std::string detail;
  for (const auto& c : r) {
    ok = ok && c.passed;
    detail += c.name + ": " + c.detail + "; ";
  }
  return {ok, detail + std::to_string(secs) + " s"};
}

Outcome criterion5() {
  const CoeffTable t = build_table(FormKind::E4, 16, 0);
  const auto& row = t.posdef[16];
  const bool ok = row == std::vector<Rational>{997920, 1239840, 0, 1239840};
  std::string s;
  for (const auto& v : row) s += v.get_str() + " ";
  return {ok, "E4 N=16: " + s};
}

Outcome criterion6() {
  const Rational a = coeff_for_matrix(FormKind::Chi10, 1, 0, 1);
  const Rational b = coeff_for_matrix(FormKind::Chi12, 1, 0, 1);
  return {a == Rational(1, 2) && b == Rational(5, 6), "chi10 " + a.get_str() + ", chi12 " + b.get_str()};
}

Outcome summarize(const std::vector<CheckResult>& results, const std::function<bool(const CheckResult&)>& keep) {
  bool ok = true;
  int n = 0;
  std::string detail;
  for (const auto& c : results) {
    if (!keep(c)) continue;
    ++n;
    ok = ok && c.passed;
    detail += c.name + ": " + c.detail + "; ";
  }
  return {ok && n > 0, detail};
}

Outcome criterion7() {
  return summarize(verify_denominators(1000), [](const CheckResult&) { return true; });
}

Outcome criterion8() {
  return summarize(verify_bounds(2000), [](const CheckResult& c) {
    return c.name.find("Eisenstein") != std::string::npos || c.name.find("eps=0.1, eta=1.45") != std::string::npos;
  });
}

Outcome criterion9() {
  const mpfr_prec_t bits = digits_to_bits(kBoundDigits);
  const std::int64_t b1 = solve_trace_bound(BigReal(4.3, bits), 524);
  const std::int64_t b2 = solve_trace_bound(BigReal(1.66, bits), 14);
  const bool tails = tail_integral(kTraceTailConstant, 15, 4.3, b1) < BigReal::pow10(-524, bits) &&
                     tail_integral(kTraceTailConstant, 15, 1.66, b2) < BigReal::pow10(-14, bits);
  std::ostringstream d;
  d << "B(4.3, 524) = " << b1 << " (printed 49), B(1.66, 14) = " << b2 << " (printed 9)";
  return {std::abs(b1 - 49) <= 1 && std::abs(b2 - 9) <= 1 && tails, d.str()};
}

Outcome criterion10() {
  const SiegelPoint reduced = act(example_matrix(), example_point());
  const BigComplex c4 = chi10_partial(reduced, 4);
  const BigComplex c6 = chi10_partial(cm_point(), 6);
  std::ostringstream d;
  d << "trace<=4 at reduced point: " << c4.re().to_sci(6) << ", trace<=6 at CM point: " << c6.re().to_sci(6);
  const bool ok = near(c4.re(), -1.28e-28, 1e-2) && near(c6.re(), -5.3e-12, 1e-1) && abs(c4.im()) < 1e-40 &&
                  abs(c6.im()) < 1e-20;
  return {ok, d.str()};
}

Outcome criterion11() {
  const SiegelPoint p = act(example_matrix(), example_point());
  const BigReal eps = BigReal::pow10(-30, p.bits());
  auto is = [&](const BigComplex& z, long im) { return abs(z.re()) < eps && abs(z.im() - BigReal(im, p.bits())) < eps; };
  const bool acted = is(p.tau1, 5) && is(p.z, 1) && is(p.tau2, 6);
  const Reduction r = reduce(example_point(400));
  const BigReal delta = delta_of(r.point);
  const IgusaValues v = igusa(r.point, 50, cache());
  const BigReal tol = BigReal::pow10(-48, v.j1.bits());
  const IgusaValues& ref = example_k50();
  const bool same = (v.j1 - ref.j1).abs() < tol && (v.j2 - ref.j2).abs() < tol && (v.j3 - ref.j3).abs() < tol;
  std::ostringstream d;
  d << "act gives (5i, i; i, 6i): " << acted << ", reduce matrix " << r.matrix.to_string() << ", delta "
    << delta.to_sci(8) << ", j-values agree: " << same;
  return {acted && delta >= 4.3 && same && v.j1.re().to_fixed(50).rfind(kJ1Printed, 0) == 0, d.str()};
}

Outcome criterion12() {
  bool ok = true;
  std::ostringstream d;
  for (FormKind f : {FormKind::Chi10, FormKind::Chi12}) {
    const WaldspurgerReport r = waldspurger_ratio_check(f, {-3, -4, -7, -8});
    const bool good = r.spread < 1e-4 && r.max_ratio <= r.limit;
    ok = ok && good;
    d << name(f) << " ratio " << r.max_ratio.to_sci(10) << " (limit " << static_cast<long>(r.limit) << ", spread "
      << r.spread.to_sci(3) << "); ";
  }
  const double small = best_time([] { build_table(FormKind::E4, 2000, 0); }, 5);
  const double large = best_time([] { build_table(FormKind::E4, 10000, 0); }, 3);
  const double exponent = std::log(large / small) / std::log(5.0);
  d << "E4 table: N<=2000 " << small << " s, N<=10000 " << large << " s, growth exponent " << exponent;
  return {ok && large < 60 && exponent < 2, d.str()};
}

Outcome criterion13() {
  std::mt19937_64 rng(20240521);
  const long k = 20;
  const SiegelPoint base_point = point({"0.21", "1.1", "0.34", "0.35", "-0.17", "1.3"}, 200);
  const IgusaValues base = igusa(base_point, k, cache());
  const BigReal tol = BigReal::pow10(-k, base.j1.bits()) * 2L;
  int sp4_ok = 0;
  for (int i = 0; i < 10; ++i) {
    const IgusaValues v = igusa(act(random_symplectic(rng, 4), base_point), k, cache());
    if (v.certified && (v.j1 - base.j1).abs() < tol && (v.j2 - base.j2).abs() < tol && (v.j3 - base.j3).abs() < tol)
      ++sp4_ok;
  }

  const CoeffTable t = build_table(FormKind::Chi12, 5000, 200);
  std::uniform_int_distribution<std::int64_t> entry(0, 12);
  int gl2_ok = 0, gl2_n = 0;
  while (gl2_n < 100) {
    const std::int64_t a = entry(rng), c = entry(rng);
    const std::int64_t bmax = isqrt(4 * a * c);
    const std::int64_t b = bmax == 0 ? 0 : static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * bmax + 1)) - bmax;
    const auto [a2, b2, c2] = transform(random_unimodular(rng), a, b, c);
    if (4 * a2 * c2 - b2 * b2 > 5000 || a2 + c2 > 200) continue;
    ++gl2_n;
    if (t.for_matrix(a2, b2, c2) == t.for_matrix(a, b, c) &&
        coeff_for_matrix(FormKind::E6, a2, b2, c2) == coeff_for_matrix(FormKind::E6, a, b, c))
      ++gl2_ok;
  }

  const SiegelPoint p = cm_point();
  const double delta = delta_of(p).to_double();
  const std::int64_t B = 5;
  const FormValues lo = evaluate_forms(p, B, cache()), hi = evaluate_forms(p, B + 5, cache());
  int trunc_ok = 0;
  const std::array<std::pair<FormKind, BigReal>, 4> diffs = {{{FormKind::E4, (lo.e4 - hi.e4).abs()},
                                                              {FormKind::E6, (lo.e6 - hi.e6).abs()},
                                                              {FormKind::Chi10, (lo.chi10 - hi.chi10).abs()},
                                                              {FormKind::Chi12, (lo.chi12 - hi.chi12).abs()}}};
  const BigReal two_pi_delta = BigReal::pi(p.bits()) * BigReal(2 * delta, p.bits());
  for (const auto& [f, dv] : diffs) {
    BigReal m(0L, p.bits());
    for (std::int64_t s = B + 1; s <= B + 5; ++s)
      m += coefficient_bound_at_trace(f, s) * count_of_trace(s) * exp(-(two_pi_delta * s));
    if (dv <= m) ++trunc_ok;
  }
  std::ostringstream d;
  d << "Sp4 " << sp4_ok << "/10, GL2 " << gl2_ok << "/100, truncation " << trunc_ok << "/4";
  return {sp4_ok == 10 && gl2_ok == 100 && trunc_ok == 4, d.str()};
}

Outcome slow_k500() {
  const auto t0 = std::chrono::steady_clock::now();
  const IgusaValues v = igusa(example_point(), 500, cache());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const BigReal tol = BigReal::pow10(-49, v.j1.bits());
  const IgusaValues& ref = example_k50();
  const bool ok = v.certified && (v.j1 - ref.j1).abs() < tol && (v.j2 - ref.j2).abs() < tol &&
                  (v.j3 - ref.j3).abs() < tol;
  std::ostringstream d;
  d << "k = 500 in " << secs << " s, B = " << v.plan.B << ", working digits " << v.plan.working_digits
    << ", agrees with k = 50";
  return {ok, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1", criterion1},   {"2", criterion2},   {"3", criterion3},   {"4", criterion4},  {"5", criterion5},
      {"6", criterion6},   {"7", criterion7},   {"8", criterion8},   {"9", criterion9},  {"10", criterion10},
      {"11", criterion11}, {"12", criterion12}, {"13", criterion13}, {"k500", slow_k500}};
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
