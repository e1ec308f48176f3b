#pragma once

// Self-checks run by `siegel verify`.

#include <cstdint>
#include <string>
#include <vector>

namespace siegel {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// H_w coefficients against the L-value formula for n <= nmax.
std::vector<CheckResult> verify_oracle(std::int64_t nmax = 500);
/// Eisenstein entries lie in (1/(n_w n_{2w-2})) Z; E4 and E6 entries are integers.
std::vector<CheckResult> verify_denominators(std::int64_t nmax = 1000);
/// Explicit coefficient bounds dominate the stored tables up to nmax.
std::vector<CheckResult> verify_bounds(std::int64_t nmax = 2000);
/// Waldspurger ratio estimates are D-independent and below the stated limits.
std::vector<CheckResult> verify_waldspurger(const std::vector<std::int64_t>& discriminants = {-3, -4, -7, -8, -11,
                                                                                             -15, -19, -20});

/// Bernoulli numerator |num(B_k)|.
long bernoulli_numerator(unsigned k);

}  // namespace siegel
