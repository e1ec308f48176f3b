#include "siegel/verify.hpp"

#include <sstream>

#include "siegel/bounds.hpp"
#include "siegel/halfint.hpp"
#include "siegel/tables.hpp"

namespace siegel {
namespace {

std::string str(const BigReal& x, int digits = 8) { return x.to_sci(digits); }

}  // namespace

long bernoulli_numerator(unsigned k) { return std::abs(bernoulli(k).get_num().get_si()); }

std::vector<CheckResult> verify_oracle(std::int64_t nmax) {
  std::vector<CheckResult> out;
  for (unsigned w : {4u, 6u, 10u, 12u}) {
    const HalfIntTable h = cohen_series(w, static_cast<std::size_t>(nmax));
    std::int64_t mismatches = 0;
    std::int64_t first_bad = -1;
    for (std::int64_t n = 0; n <= nmax; ++n) {
      if (h[static_cast<std::size_t>(n)] != alpha_direct(w, -n)) {
        if (first_bad < 0) first_bad = n;
        ++mismatches;
      }
    }
    std::ostringstream detail;
    detail << "n <= " << nmax << ", mismatches " << mismatches;
    if (first_bad >= 0) detail << " (first at n = " << first_bad << ")";
    out.push_back({"oracle H" + std::to_string(w), mismatches == 0, detail.str()});
  }
  return out;
}

std::vector<CheckResult> verify_denominators(std::int64_t nmax) {
  std::vector<CheckResult> out;
  for (FormKind f : {FormKind::E4, FormKind::E6, FormKind::E10, FormKind::E12}) {
    const unsigned w = weight(f);
    const mpz_class bound = mpz_class(bernoulli_numerator(w)) * bernoulli_numerator(2 * w - 2);
    const CoeffTable t = build_table(f, nmax, 0);
    std::int64_t bad = 0;
    mpz_class worst = 1;
    for (std::int64_t N = 1; N <= nmax; ++N) {
      for (const auto& v : t.posdef[static_cast<std::size_t>(N)]) {
        const mpz_class& den = v.get_den();
        worst = std::max(worst, den);
        const bool ok = (w <= 6) ? den == 1 : mpz_divisible_p(bound.get_mpz_t(), den.get_mpz_t()) != 0;
        if (!ok) ++bad;
      }
    }
    std::ostringstream detail;
    detail << "N <= " << nmax << ", allowed denominator " << (w <= 6 ? mpz_class(1) : bound) << ", largest seen "
           << worst << ", violations " << bad;
    out.push_back({"denominators " + name(f), bad == 0, detail.str()});
  }
  return out;
}

std::vector<CheckResult> verify_bounds(std::int64_t nmax) {
  std::vector<CheckResult> out;
  const mpfr_prec_t bits = digits_to_bits(kBoundDigits);
  for (FormKind f : {FormKind::Chi10, FormKind::Chi12}) {
    const CoeffTable t = build_table(f, nmax, 0);
    for (const BoundParams& p : std::vector<BoundParams>{{0.1, 1.45}, {0.28, 1.37}, {0.1, 1.5}}) {
      const BigReal C = cusp_bound_const(f, p);
      const BigReal e(cusp_bound_exponent(f, p), bits);
      std::int64_t bad = 0;
      BigReal tightest(1e300, bits);  // smallest bound / |a| seen
      for (std::int64_t N = 1; N <= nmax; ++N) {
        const BigReal bound = C * pow(BigReal(static_cast<long>(N), bits), e);
        for (const auto& v : t.posdef[static_cast<std::size_t>(N)]) {
          if (sgn(v) == 0) continue;
          const BigReal a = abs(BigReal(v, bits));
          if (a > bound) ++bad;
          tightest = min(tightest, bound / a);
        }
      }
      std::ostringstream name_;
      name_ << "cusp bound " << name(f) << " (eps=" << p.epsilon << ", eta=" << p.eta << ")";
      out.push_back({name_.str(), bad == 0,
                     "N <= " + std::to_string(nmax) + ", violations " + std::to_string(bad) + ", min bound/|a| " + str(tightest, 4)});
    }
  }
  for (FormKind f : {FormKind::E4, FormKind::E6, FormKind::E10, FormKind::E12}) {
    const unsigned w = weight(f);
    const CoeffTable t = build_table(f, nmax, 0);
    const BigReal c = eisenstein_bound_const(w);
    const BigReal e(static_cast<double>(w) - 1.5, bits);
    std::int64_t bad = 0;
    BigReal tightest(1e300, bits);
    for (std::int64_t N = 1; N <= nmax; ++N) {
      const BigReal bound = c * pow(BigReal(static_cast<long>(N), bits), e);
      for (const auto& v : t.posdef[static_cast<std::size_t>(N)]) {
        if (sgn(v) == 0) continue;
        const BigReal a = abs(BigReal(v, bits));
        if (a > bound) ++bad;
        tightest = min(tightest, bound / a);
      }
    }
    out.push_back({"Eisenstein bound " + name(f), bad == 0,
                   "c_w = " + str(c, 6) + ", N <= " + std::to_string(nmax) + ", violations " + std::to_string(bad) +
                       ", min bound/|a| " + str(tightest, 4)});
  }
  return out;
}

std::vector<CheckResult> verify_waldspurger(const std::vector<std::int64_t>& discriminants) {
  std::vector<CheckResult> out;
  for (FormKind f : {FormKind::Chi10, FormKind::Chi12}) {
    const WaldspurgerReport r = waldspurger_ratio_check(f, discriminants);
    std::ostringstream detail;
    detail << "max ratio " << str(r.max_ratio, 12) << " (limit " << static_cast<long>(r.limit) << "), relative spread "
           << str(r.spread, 3);
    for (const auto& e : r.entries) {
      detail << "; D=" << e.D << ": " << (e.skipped ? std::string("skipped") : str(e.ratio, 12));
    }
    out.push_back({"Waldspurger " + name(f), r.passed, detail.str()});
  }
  return out;
}

}  // namespace siegel
