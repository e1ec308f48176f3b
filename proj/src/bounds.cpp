#include "siegel/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "siegel/halfint.hpp"
#include "siegel/number_theory.hpp"
#include "siegel/series.hpp"

namespace siegel {
namespace {

mpfr_prec_t const_bits() { return digits_to_bits(kBoundDigits); }

BigReal real(double x) { return BigReal(x, const_bits()); }
BigReal real(long x) { return BigReal(x, const_bits()); }

BigReal factorial(long n) {
  BigReal r(1L, const_bits());
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

BigReal two_pi() { return BigReal::pi(const_bits()) * 2L; }

// C_form and the base exponent of the cusp bound.
struct CuspShape {
  long constant;
  int gamma_index;
  double exponent;
};

CuspShape cusp_shape(FormKind form) {
  if (form == FormKind::Chi10) return {320, 9, 4.5};
  if (form == FormKind::Chi12) return {3843, 11, 5.5};
  throw std::invalid_argument("cusp bound requested for " + name(form));
}

QSeries classical_eisenstein(unsigned w, std::size_t order) {
  std::vector<Rational> c(order + 1);
  c[0] = 1;
  const Rational norm = -Rational(2 * static_cast<long>(w)) / bernoulli(w);
  for (std::size_t n = 1; n <= order; ++n) c[n] = norm * Rational(sigma(w - 1, static_cast<std::int64_t>(n)));
  return QSeries(std::move(c));
}

// phi_m(x) = int_1^inf y^m e^{-xy} dy = m!/x^{m+1} e^{-x} sum_{j<=m} x^j/j!.
BigReal phi(long m, const BigReal& x) {
  BigReal sum(1L, x.bits());
  BigReal term(1L, x.bits());
  for (long j = 1; j <= m; ++j) {
    term = term * x / j;
    sum += term;
  }
  return factorial(m) / pow(x, m + 1) * exp(-x) * sum;
}

}  // namespace

void BoundParams::validate() const {
  if (!(epsilon > 0) || !(eta > 0)) throw std::invalid_argument("epsilon and eta must be positive");
}

std::vector<BoundParams> bound_grid() {
  std::vector<BoundParams> grid;
  for (double eps : {0.1, 0.28, 0.5}) {
    for (double eta : {1.05, 1.37, 1.45, 1.5}) grid.push_back({eps, eta});
  }
  return grid;
}

BigReal delta_of(const SiegelPoint& tau) {
  tau.validate();
  const BigReal& y11 = tau.tau1.im();
  const BigReal& y12 = tau.z.im();
  const BigReal& y22 = tau.tau2.im();
  const BigReal tr = y11 + y22;
  const BigReal det = y11 * y22 - y12 * y12;
  const BigReal diff = y11 - y22;
  // (tr - sqrt(tr^2 - 4 det))/2 written without cancellation.
  const BigReal root = sqrt(diff * diff + y12 * y12 * 4L);
  return round_down(det * 2L / (tr + root));
}

BigReal eisenstein_bound_const(unsigned w) {
  if (w != 4 && w != 6 && w != 10 && w != 12) throw std::invalid_argument("unsupported weight");
  const long lw = static_cast<long>(w);
  const BigReal pi = BigReal::pi(const_bits());
  auto z = [](long s) { return zeta(real(s)); };
  // zeta(3 - 2w) = -B_{2w-2}/(2w-2)
  const BigReal exact_zeta = BigReal(-bernoulli(2 * w - 2) / Rational(2 * lw - 2), const_bits());
  const BigReal bw = BigReal(bernoulli(w), const_bits());
  BigReal c = real(4 * lw) * factorial(lw - 2) * z(lw - 1) * z(lw - 1) * z(2 * lw - 3) * z(lw - 2) /
              (pow(pi, lw - 1) * exact_zeta * bw);
  return round_up(abs(c));
}

BigReal eisenstein_trace_bound(unsigned w, std::int64_t trace) {
  const BigReal t = real(static_cast<long>(trace));
  BigReal generic = eisenstein_bound_const(w) * pow(t, 2L * w - 3);
  // Rank-one T: |norm| sigma_{w-1}(t) <= |norm| zeta(w-1) t^(w-1).
  BigReal degenerate = abs(BigReal(eisenstein_normalization(w), const_bits())) *
                       zeta(real(static_cast<long>(w) - 1)) * pow(t, static_cast<long>(w) - 1);
  return round_up(max(generic, degenerate));
}

BigReal pl_constant(double epsilon, int n) {
  const BigReal e = real(epsilon);
  const BigReal z = zeta(e + 1L);
  const BigReal z2 = z * z;
  const BigReal ratio = gamma(e + real(n + 0.5)) / gamma(real(n - 0.5) - e);
  const BigReal inv_sqrt = BigReal(1L, const_bits()) / sqrt(two_pi());
  return round_up(inv_sqrt * max(z2, z2 * ratio));
}

BigReal b2_constant(double eta) {
  const BigReal h = real(eta);
  const BigReal two = real(2L);
  return round_up(exp(pow(two, BigReal(1L, const_bits()) / h) / (h * log(two))));
}

BigReal cusp_bound_const(FormKind form, const BoundParams& params) {
  params.validate();
  const CuspShape shape = cusp_shape(form);
  return round_up(real(shape.constant) * b2_constant(params.eta) * sqrt(pl_constant(params.epsilon, shape.gamma_index)));
}

double cusp_bound_exponent(FormKind form, const BoundParams& params) {
  return cusp_shape(form).exponent + params.epsilon / 2 + params.eta;
}

BigReal cusp_bound(FormKind form, std::int64_t N, const BoundParams& params) {
  if (N < 1) throw std::invalid_argument("cusp_bound: N must be positive");
  return round_up(cusp_bound_const(form, params) *
                  pow(real(static_cast<long>(N)), real(cusp_bound_exponent(form, params))));
}

BigReal coefficient_bound_at_trace(FormKind form, std::int64_t trace) {
  if (trace < 1) throw std::invalid_argument("trace must be positive");
  if (is_cusp_form(form)) return cusp_bound(form, trace * trace, BoundParams{0.1, 1.45});
  return eisenstein_trace_bound(weight(form), trace);
}

BigReal magnitude_bound(FormKind form, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  const BigReal s = two_pi() * real(delta);
  BigReal total = real(is_cusp_form(form) ? 0L : 1L);
  BigReal previous = real(0L);
  for (std::int64_t t = 1;; ++t) {
    const BigReal term = real(static_cast<long>(count_of_trace(t))) * coefficient_bound_at_trace(form, t) *
                         exp(-(s * real(static_cast<long>(t))));
    total += term;
    // Once terms shrink by a factor below 1/2 the remainder is at most the last term.
    if (t > 2 && term < previous * real(0.5) && term < total * real(1e-30)) {
      total += term;
      break;
    }
    previous = term;
  }
  return round_up(total);
}

BigReal tail_integral(const BigReal& C, double p, const BigReal& delta, std::int64_t B) {
  if (B < 1) throw std::invalid_argument("tail_integral: B must be at least 1");
  if (!(C > 0.0) || !(delta > 0.0) || !(p >= 0)) throw std::invalid_argument("tail_integral: bad parameters");
  const mpfr_prec_t bits = std::max(C.bits(), const_bits());
  const long pbar = static_cast<long>(std::ceil(p));
  const BigReal s = BigReal::pi(bits) * 2L * delta.with_bits(bits);
  const BigReal x(static_cast<long>(B - 1), bits);
  // sum_{j=0}^{pbar} pbar!/j! x^j / s^(pbar+1-j)
  BigReal sum(bits);
  BigReal coef = factorial(pbar).with_bits(bits);  // pbar!/j!
  for (long j = 0; j <= pbar; ++j) {
    if (j > 0) coef /= j;
    sum += coef * pow(x, j) / pow(s, pbar + 1 - j);
  }
  return round_up(C.with_bits(bits) * exp(-(s * x)) * sum);
}

BigReal tail_integral(double C, double p, double delta, std::int64_t B) {
  return tail_integral(real(C), p, real(delta), B);
}

std::int64_t solve_trace_bound(const BigReal& delta, long l) {
  const BigReal target = BigReal::pow10(-l, const_bits());
  const BigReal C = real(kTraceTailConstant);
  for (std::int64_t B = 3;; ++B) {
    if (tail_integral(C, 15, delta, B) <= target) return B;
    if (B > 1000000) throw std::runtime_error("trace bound search did not terminate");
  }
}

Chi10LowerBound chi10_lower_bound(const SiegelPoint& tau, TableCache& cache, std::int64_t max_t0) {
  if (max_t0 < 2) throw std::invalid_argument("max_t0 must be at least 2");
  const BigReal delta = delta_of(tau);
  const SiegelPoint pt = tau.with_digits(std::max<long>(tau.digits, 60));
  const auto table = cache.get(FormKind::Chi10, max_t0 * max_t0, max_t0);
  const PointPowers powers(pt, max_t0);
  const auto sums = trace_sums(*table, powers, max_t0);

  Chi10LowerBound best;
  BigComplex partial = sums[0] + sums[1];
  for (std::int64_t t0 = 2; t0 <= max_t0; ++t0) {
    partial += sums[static_cast<std::size_t>(t0)];
    const BigReal size = round_down(partial.abs());
    BigReal majorant;
    BoundParams chosen;
    bool first = true;
    for (const auto& params : bound_grid()) {
      const BigReal M = cusp_bound_const(FormKind::Chi10, params);
      const BigReal m = tail_integral(M * 2L, 11 + params.epsilon + 2 * params.eta, delta, t0 + 1) * 10L;
      if (first || m < majorant) {
        majorant = m;
        chosen = params;
        first = false;
      }
    }
    best.partial_sum = partial;
    best.majorant = majorant;
    best.t0 = t0;
    best.params = chosen;
    if (size >= majorant && size.sign() > 0) {
      best.certified = true;
      break;
    }
  }
  const BigReal size = best.partial_sum.abs();
  if (size.is_zero() || size < BigReal::pow10(-(pt.digits - 10), pt.bits())) {
    throw std::runtime_error("chi10 vanishes to working precision; Igusa values are undefined here");
  }
  const BigReal lower = round_down(size * real(0.9));
  best.n = to_long(ceil(-log10(lower)));
  return best;
}

PrecisionPlan make_plan(const SiegelPoint& tau, long k, TableCache& cache) {
  if (k < 1) throw std::invalid_argument("requested digits must be positive");
  PrecisionPlan plan;
  plan.delta = delta_of(tau);
  plan.k = k;
  plan.chi10 = chi10_lower_bound(tau, cache);
  plan.n = plan.chi10.n;
  plan.certified = plan.chi10.certified;
  plan.l = k + std::max(22L, 6 * plan.n);
  plan.B = solve_trace_bound(plan.delta, plan.l);
  BigReal biggest = real(1L);
  for (FormKind f : {FormKind::E4, FormKind::E6, FormKind::Chi10, FormKind::Chi12}) {
    biggest = max(biggest, coefficient_bound_at_trace(f, plan.B));
  }
  plan.coeff_bound_digits = to_long(ceil(log10(biggest)));
  plan.working_digits = plan.l + plan.coeff_bound_digits + 15;
  return plan;
}

WaldspurgerReport waldspurger_ratio_check(FormKind form, const std::vector<std::int64_t>& discriminants) {
  if (!is_cusp_form(form)) throw std::invalid_argument("Waldspurger check applies to CHI10 and CHI12");
  const unsigned w = weight(form);
  const long k = static_cast<long>(w) - 1;
  WaldspurgerReport report;
  report.form = form;
  report.limit = form == FormKind::Chi10 ? 75634.0 : 1197339.0;

  std::int64_t max_abs = 1;
  for (auto D : discriminants) max_abs = std::max<std::int64_t>(max_abs, D < 0 ? -D : D);
  // x_n = 2 pi n/|D| reaches about 250 at the cut, far beyond 40 digits.
  const std::size_t order = static_cast<std::size_t>(40 * max_abs + 10);

  const QSeries e4 = classical_eisenstein(4, order);
  const QSeries e6 = classical_eisenstein(6, order);
  const QSeries delta = (pow(e4, 3) - mul(e6, e6)).scaled(Rational(1, 1728));
  const QSeries g = mul(delta, form == FormKind::Chi10 ? e6 : classical_eisenstein(10, order));
  const HalfIntTable K = cusp_series(w, order);

  const mpfr_prec_t bits = const_bits();
  const BigReal pi = BigReal::pi(bits);
  bool have = false;
  bool all_below = true;
  for (auto D : discriminants) {
    WaldspurgerEntry entry;
    entry.D = D;
    const std::int64_t absD = D < 0 ? -D : D;
    if (D >= 0 || !is_discriminant(D) || static_cast<std::size_t>(absD) > order || sgn(K[static_cast<std::size_t>(absD)]) == 0) {
      entry.skipped = true;
      report.entries.push_back(entry);
      continue;
    }
    const std::int64_t M = 40 * absD;
    const BigReal step = two_pi() / absD;
    BigReal sum(bits);
    for (std::int64_t n = 1; n <= M; ++n) {
      const int chi = kronecker(D, n);
      if (chi == 0) continue;
      const Rational& c = g[static_cast<std::size_t>(n)];
      if (sgn(c) == 0) continue;
      BigReal term = BigReal(c, bits) * phi(k - 1, step * static_cast<long>(n));
      if (chi > 0) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    // Tail beyond M with |c(n)| <= n^(k+1) and phi_m(x) <= 2 e^{-x}/x for x >= 2m.
    const BigReal x1 = step * static_cast<long>(M + 1);
    const BigReal first = pow(real(static_cast<long>(M + 1)), k + 1) * exp(-x1) * 2L / x1;
    const BigReal ratio_step = exp(-step) * pow(real(static_cast<long>(M + 2)) / real(static_cast<long>(M + 1)), k + 1);
    entry.truncation_bound = round_up(first / (real(1L) - ratio_step));

    const BigReal L = real(2L) * pow(step, k) / gamma(real(k)) * sum;
    const BigReal a = BigReal(K[static_cast<std::size_t>(absD)], bits);
    const BigReal scale = pow(real(static_cast<long>(absD)), real(static_cast<double>(w) - 1.5));
    entry.ratio = factorial(static_cast<long>(w) - 2) / pow(pi, static_cast<long>(w) - 1) * L * scale / (a * a);
    if (entry.truncation_bound > abs(sum) * real(1e-20)) {
      throw std::runtime_error("Waldspurger L-series truncation bound not met for D=" + std::to_string(D));
    }
    if (!have) {
      report.max_ratio = entry.ratio;
      report.min_ratio = entry.ratio;
      have = true;
    } else {
      report.max_ratio = max(report.max_ratio, entry.ratio);
      report.min_ratio = min(report.min_ratio, entry.ratio);
    }
    if (entry.ratio > report.limit) all_below = false;
    report.entries.push_back(entry);
  }
  if (!have) throw std::invalid_argument("no usable discriminants");
  report.spread = (report.max_ratio - report.min_ratio) / report.max_ratio;
  report.passed = all_below && report.spread < 1e-6;
  return report;
}

}  // namespace siegel
