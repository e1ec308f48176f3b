#include "siegel/evaluator.hpp"

#include <cmath>
#include <future>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace siegel {
namespace {

using Rows = SymplecticMatrix::Rows;

struct CMat {
  BigComplex e[2][2];
};

CMat tau_matrix(const SiegelPoint& p) {
  CMat m;
  m.e[0][0] = p.tau1;
  m.e[0][1] = p.z;
  m.e[1][0] = p.z;
  m.e[1][1] = p.tau2;
  return m;
}

BigComplex scaled(const BigComplex& z, std::int64_t k) {
  return {z.re() * static_cast<long>(k), z.im() * static_cast<long>(k)};
}

// X tau + Y for integer blocks X, Y.
CMat affine(const Int2x2& X, const CMat& t, const Int2x2& Y, mpfr_prec_t bits) {
  CMat out;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      BigComplex acc(BigReal(static_cast<long>(Y[i][k]), bits), BigReal(0L, bits));
      for (int j = 0; j < 2; ++j) {
        if (X[i][j] != 0) acc += scaled(t.e[j][k], X[i][j]);
      }
      out.e[i][k] = acc;
    }
  }
  return out;
}

BigComplex det(const CMat& m) { return m.e[0][0] * m.e[1][1] - m.e[0][1] * m.e[1][0]; }

BigReal max_entry(const CMat& m) {
  BigReal best = m.e[0][0].abs();
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) best = max(best, m.e[i][k].abs());
  }
  return best;
}

BigComplex cofactor_det(const Int2x2& C, const Int2x2& D, const SiegelPoint& p) {
  return det(affine(C, tau_matrix(p), D, p.bits()));
}

std::vector<SymplecticMatrix> build_candidates() {
  std::vector<SymplecticMatrix> out;
  std::set<Rows> seen;
  auto add = [&](const SymplecticMatrix& m) {
    if (seen.insert(m.rows()).second) out.push_back(m);
  };
  // (0 -I; I S): det(C tau + D) = det(tau + S).
  for (int s11 = -1; s11 <= 1; ++s11) {
    for (int s12 = -1; s12 <= 1; ++s12) {
      for (int s22 = -1; s22 <= 1; ++s22) {
        add(SymplecticMatrix(Rows{{{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, s11, s12}, {0, 1, s12, s22}}}));
      }
    }
  }
  // Genus-one inversions in tau1 and tau2, then their conjugates by small GL2.
  const SymplecticMatrix e1(Rows{{{0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}}});
  const SymplecticMatrix e2(Rows{{{1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}}});
  for (const auto& e : {e1, e2}) {
    for (int s = -1; s <= 1; ++s) add(e * SymplecticMatrix::translation(Int2x2{{{s, 0}, {0, s}}}));
  }
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      for (int c = -1; c <= 1; ++c) {
        for (int d = -1; d <= 1; ++d) {
          if (std::abs(a * d - b * c) != 1) continue;
          const SymplecticMatrix g = SymplecticMatrix::gl2(Int2x2{{{a, b}, {c, d}}});
          for (const auto& e : {e1, e2}) {
            const SymplecticMatrix m = g.inverse() * e * g;
            const Int2x2 C = m.block(1, 0);
            bool small = true;
            for (const auto& row : C) {
              for (auto v : row) small = small && std::abs(v) <= 1;
            }
            if (small) add(m);
          }
        }
      }
    }
  }
  return out;
}

const std::vector<SymplecticMatrix>& candidates() {
  static const std::vector<SymplecticMatrix> list = build_candidates();
  return list;
}

long ceil_log10(const BigReal& x) {
  if (x <= 1.0) return 0;
  return to_long(ceil(log10(x)));
}

}  // namespace

SymplecticMatrix::SymplecticMatrix() : m_{} {
  for (int i = 0; i < 4; ++i) m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
}

SymplecticMatrix::SymplecticMatrix(const Rows& rows) : m_(rows) {
  if (!is_symplectic(rows)) throw std::invalid_argument("matrix is not symplectic");
}

bool SymplecticMatrix::is_symplectic(const Rows& m) {
  // (M J M^T)_{ik} = sum_j (m_ij m_k,j+2 - m_i,j+2 m_kj)
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      __int128 v = 0;
      for (int j = 0; j < 2; ++j) {
        v += static_cast<__int128>(m[i][j]) * m[k][j + 2] - static_cast<__int128>(m[i][j + 2]) * m[k][j];
      }
      __int128 want = 0;
      if (k == i + 2) want = 1;
      if (i == k + 2) want = -1;
      if (v != want) return false;
    }
  }
  return true;
}

SymplecticMatrix SymplecticMatrix::j() {
  return SymplecticMatrix(Rows{{{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}}});
}

SymplecticMatrix SymplecticMatrix::translation(const Int2x2& S) {
  if (S[0][1] != S[1][0]) throw std::invalid_argument("translation needs a symmetric matrix");
  return SymplecticMatrix(Rows{{{1, 0, S[0][0], S[0][1]}, {0, 1, S[1][0], S[1][1]}, {0, 0, 1, 0}, {0, 0, 0, 1}}});
}

SymplecticMatrix SymplecticMatrix::gl2(const Int2x2& U) {
  const std::int64_t d = U[0][0] * U[1][1] - U[0][1] * U[1][0];
  if (d != 1 && d != -1) throw std::invalid_argument("GL2 matrix is not unimodular");
  // U^-T = (1/d) (u22 -u21; -u12 u11)
  const Int2x2 V{{{d * U[1][1], -d * U[1][0]}, {-d * U[0][1], d * U[0][0]}}};
  return SymplecticMatrix(Rows{{{U[0][0], U[0][1], 0, 0},
                                {U[1][0], U[1][1], 0, 0},
                                {0, 0, V[0][0], V[0][1]},
                                {0, 0, V[1][0], V[1][1]}}});
}

Int2x2 SymplecticMatrix::block(int row, int col) const {
  Int2x2 b{};
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) b[i][k] = (*this)(2 * row + i, 2 * col + k);
  }
  return b;
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  // M^-1 = (D^T -B^T; -C^T A^T)
  Rows r{};
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      r[i][k] = (*this)(k + 2, i + 2);
      r[i][k + 2] = -(*this)(k, i + 2);
      r[i + 2][k] = -(*this)(k + 2, i);
      r[i + 2][k + 2] = (*this)(k, i);
    }
  }
  return SymplecticMatrix(r);
}

std::int64_t SymplecticMatrix::max_abs() const {
  std::int64_t best = 0;
  for (const auto& row : m_) {
    for (auto v : row) best = std::max<std::int64_t>(best, v < 0 ? -v : v);
  }
  return best;
}

SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b) {
  Rows r{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      __int128 v = 0;
      for (int j = 0; j < 4; ++j) v += static_cast<__int128>(a(i, j)) * b(j, k);
      if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("symplectic product overflows");
      r[i][k] = static_cast<std::int64_t>(v);
    }
  }
  return SymplecticMatrix(r);
}

std::string SymplecticMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (int i = 0; i < 4; ++i) {
    out << (i ? ", [" : "[");
    for (int k = 0; k < 4; ++k) out << (k ? ", " : "") << (*this)(i, k);
    out << ']';
  }
  out << ']';
  return out.str();
}

SiegelPoint act(const SymplecticMatrix& M, const SiegelPoint& tau) {
  const mpfr_prec_t bits = tau.bits();
  const CMat t = tau_matrix(tau);
  const CMat X = affine(M.block(0, 0), t, M.block(0, 1), bits);
  const CMat Y = affine(M.block(1, 0), t, M.block(1, 1), bits);
  const BigComplex dY = det(Y);
  if (dY.re().is_zero() && dY.im().is_zero()) throw std::runtime_error("C tau + D is singular");
  const BigComplex inv_det = dY.inverse();
  CMat Yi;
  Yi.e[0][0] = Y.e[1][1] * inv_det;
  Yi.e[0][1] = -(Y.e[0][1] * inv_det);
  Yi.e[1][0] = -(Y.e[1][0] * inv_det);
  Yi.e[1][1] = Y.e[0][0] * inv_det;

  // Digits consumed by the inversion, from the condition number of C tau + D.
  const long lost = ceil_log10(max_entry(Y) * max_entry(Yi) * 4L);
  if (lost > tau.digits - 5) {
    throw std::runtime_error("working precision exhausted applying a symplectic matrix (" + std::to_string(lost) +
                             " digits lost)");
  }

  CMat R;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) R.e[i][k] = X.e[i][0] * Yi.e[0][k] + X.e[i][1] * Yi.e[1][k];
  }
  SiegelPoint out = tau;
  out.source.reset();
  out.tau1 = R.e[0][0];
  out.tau2 = R.e[1][1];
  out.z = (R.e[0][1] + R.e[1][0]) * BigReal(0.5, bits);
  return out;
}

Reduction reduce(const SiegelPoint& tau, int max_iterations) {
  tau.validate();
  Reduction r{tau, SymplecticMatrix::identity(), false, 0};
  SiegelPoint& p = r.point;
  SymplecticMatrix& M = r.matrix;
  auto apply = [&](const SymplecticMatrix& g) {
    p = act(g, p);
    M = g * M;
  };
  const BigReal threshold(1.0 - 1e-10, p.bits());

  for (; r.iterations < max_iterations; ++r.iterations) {
    // Gauss reduction of Y = Im(tau) under tau -> U tau U^T.
    for (int guard = 0; guard < 1000; ++guard) {
      const long k = to_long(round(p.z.im() / p.tau1.im()));
      if (k != 0) apply(SymplecticMatrix::gl2(Int2x2{{{1, 0}, {-k, 1}}}));
      if (abs(p.z.im()) * 2L > p.tau2.im()) {
        apply(SymplecticMatrix::gl2(Int2x2{{{0, 1}, {1, 0}}}));
      } else {
        break;
      }
    }
    // Integer translation of the real part.
    const Int2x2 S{{{-to_long(round(p.tau1.re())), -to_long(round(p.z.re()))},
                    {-to_long(round(p.z.re())), -to_long(round(p.tau2.re()))}}};
    if (S[0][0] != 0 || S[0][1] != 0 || S[1][1] != 0) apply(SymplecticMatrix::translation(S));

    const SymplecticMatrix* best = nullptr;
    BigReal best_value = threshold;
    for (const auto& g : candidates()) {
      const BigReal v = cofactor_det(g.block(1, 0), g.block(1, 1), p).abs();
      if (v < best_value) {
        best_value = v;
        best = &g;
      }
    }
    if (best == nullptr) {
      r.converged = true;
      break;
    }
    apply(*best);
  }
  // Recompute from the input in one step to avoid accumulated rounding.
  p = act(M, tau);
  return r;
}

FormValues evaluate_forms(const SiegelPoint& tau, std::int64_t B, TableCache& cache) {
  if (B < 1) throw std::invalid_argument("trace bound must be positive");
  const auto t4 = cache.get(FormKind::E4, B * B, B);
  const auto t6 = cache.get(FormKind::E6, B * B, B);
  const auto t10 = cache.get(FormKind::Chi10, B * B, B);
  const auto t12 = cache.get(FormKind::Chi12, B * B, B);
  const PointPowers powers(tau, B);
  auto run = [&](const std::shared_ptr<const CoeffTable>& t) {
    return std::async(std::launch::async, [&powers, t, B] { return evaluate_form(*t, powers, B); });
  };
  auto f4 = run(t4);
  auto f6 = run(t6);
  auto f10 = run(t10);
  auto f12 = run(t12);
  return FormValues{f4.get(), f6.get(), f10.get(), f12.get()};
}

void assemble_igusa(const FormValues& f, BigComplex& j1, BigComplex& j2, BigComplex& j3) {
  const mpfr_prec_t bits = f.chi10.bits();
  auto rational = [bits](long num, long den) { return BigReal(num, bits) / BigReal(den, bits); };
  const BigComplex inv10 = f.chi10.inverse();
  const BigComplex r = f.chi12 * inv10;  // chi12 / chi10
  const BigComplex r2 = r * r;
  const BigComplex r3 = r2 * r;
  // chi12^5/chi10^6 = r^5 / chi10, chi12^3/chi10^4 = r^3 / chi10, chi12^2/chi10^3 = r^2 / chi10.
  j1 = r3 * r2 * inv10 * rational(486, 1);
  const BigComplex e4_term = f.e4 * r3 * inv10 * rational(9, 8);
  j2 = f.e4 * r3 * inv10 * rational(27, 8);
  j3 = f.e6 * r2 * inv10 * rational(3, 32) + e4_term;
}

IgusaValues igusa(const SiegelPoint& tau, long k, TableCache& cache, const IgusaOptions& options) {
  if (k < 1) throw std::invalid_argument("requested digits must be positive");
  tau.validate();
  IgusaValues out;
  out.reduction = reduce(tau.with_digits(std::max<long>(tau.digits, 60)));
  out.plan = make_plan(out.reduction.point, k, cache);
  const std::int64_t B = options.trace_bound.value_or(out.plan.B);
  if (B < 1) throw std::invalid_argument("trace bound must be positive");

  const long working = out.plan.working_digits;
  // Extra digits absorb cancellation inside the symplectic action.
  const long action_guard = 2 * static_cast<long>(std::ceil(std::log10(1.0 + out.reduction.matrix.max_abs()))) + 10;
  SiegelPoint high = act(out.reduction.matrix, tau.with_digits(working + action_guard)).with_digits(working);
  out.forms = evaluate_forms(high, B, cache);
  assemble_igusa(out.forms, out.j1, out.j2, out.j3);

  if (tau.input_digits) {
    const BigReal biggest = max(max(out.j1.abs(), out.j2.abs()), out.j3.abs());
    BigReal entry = max(max(tau.tau1.abs(), tau.z.abs()), tau.tau2.abs());
    const BigReal spread = BigReal(static_cast<long>(out.reduction.matrix.max_abs()), entry.bits()) * max(entry, BigReal(1L, entry.bits())) + 1L;
    const long sensitivity = ceil_log10(BigReal(11.0 * 2.0 * M_PI * static_cast<double>(B), 64));
    const long cap = *tau.input_digits - ceil_log10(biggest) - sensitivity - 2 * ceil_log10(spread) - 2;
    out.input_cap = cap;
    if (k > cap) {
      throw std::invalid_argument("requested " + std::to_string(k) + " digits but the input precision supports only " +
                                  std::to_string(std::max(cap, 0L)));
    }
  }
  out.certified = out.plan.certified;
  if (options.trace_bound && *options.trace_bound < out.plan.B) {
    out.certified = false;
    out.failure = "trace bound override " + std::to_string(*options.trace_bound) + " is below the certified bound " +
                  std::to_string(out.plan.B);
  } else if (!out.plan.certified) {
    out.failure = "chi10 lower bound could not be certified up to trace " + std::to_string(out.plan.chi10.t0);
  }
  out.certified_digits = out.certified ? k : 0;
  return out;
}

}  // namespace siegel
