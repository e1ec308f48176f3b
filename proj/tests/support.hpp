#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <filesystem>
#include <random>
#include <string>

#include "siegel/evaluator.hpp"
#include "siegel/fourier.hpp"
#include "siegel/tables.hpp"

namespace siegel::testing {

inline SiegelPoint point(const std::array<std::string, 6>& parts, long digits = 60) {
  return SiegelPoint::parse(parts, digits, true);
}

/// (2+5i, 13+26i; 13+26i, 83+141i).
inline SiegelPoint example_point(long digits = 60) { return point({"2", "5", "13", "26", "83", "141"}, digits); }

/// 50-place truncation of the CM point with j1 = 6202728393750.
inline SiegelPoint cm_point(long digits = 60) {
  return SiegelPoint::parse({"0", "2.40600382003018269462399023537923059891406412887483", "0",
                             "0.45950584109472236704787473876292543743198187457101", "0",
                             "1.94649797893546032757611549661630516148208225430382"},
                            digits);
}

inline const SymplecticMatrix& example_matrix() {
  static const SymplecticMatrix m({{{1, 0, -2, -13}, {-5, 1, -3, -18}, {0, 0, 1, 5}, {0, 0, 0, 1}}});
  return m;
}

/// Random unimodular 2x2 matrix as a short word in the elementary generators.
inline Int2x2 random_unimodular(std::mt19937_64& rng, int steps = 4) {
  Int2x2 u{{{1, 0}, {0, 1}}};
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<std::int64_t> shift(-2, 2);
  for (int i = 0; i < steps; ++i) {
    Int2x2 g{{{1, 0}, {0, 1}}};
    switch (pick(rng)) {
      case 0: g = {{{1, shift(rng)}, {0, 1}}}; break;
      case 1: g = {{{1, 0}, {shift(rng), 1}}}; break;
      case 2: g = {{{0, 1}, {1, 0}}}; break;
      default: g = {{{-1, 0}, {0, 1}}}; break;
    }
    Int2x2 r{};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) r[a][b] = u[a][0] * g[0][b] + u[a][1] * g[1][b];
    u = r;
  }
  return u;
}

/// Random element of Sp4(Z) with small entries, built from J, translations and GL2 blocks.
inline SymplecticMatrix random_symplectic(std::mt19937_64& rng, int steps = 3) {
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<std::int64_t> entry(-1, 1);
  SymplecticMatrix m;
  for (int i = 0; i < steps; ++i) {
    switch (pick(rng)) {
      case 0: {
        const std::int64_t b = entry(rng);
        m = SymplecticMatrix::translation(Int2x2{{{entry(rng), b}, {b, entry(rng)}}}) * m;
        break;
      }
      case 1: m = SymplecticMatrix::gl2(random_unimodular(rng, 2)) * m; break;
      default: m = SymplecticMatrix::j() * m; break;
    }
  }
  return m;
}

/// T' = U T U^T for T = (a, b/2; b/2, c), returned as (a', b', c').
inline std::array<std::int64_t, 3> transform(const Int2x2& u, std::int64_t a, std::int64_t b, std::int64_t c) {
  // 2T = [[2a, b], [b, 2c]].
  const std::int64_t t[2][2] = {{2 * a, b}, {b, 2 * c}};
  std::int64_t r[2][2] = {};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r[i][j] += u[i][k] * t[k][l] * u[j][l];
  return {r[0][0] / 2, r[0][1], r[1][1] / 2};
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
  std::random_device rd;
  const auto dir = std::filesystem::temp_directory_path() / ("siegel-" + tag + "-" + std::to_string(rd()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace siegel::testing
