#pragma once

// Sp4(Z) action, reduction towards the fundamental domain, and the Igusa
// functions
//   j1 = 2 3^5 chi12^5 / chi10^6
//   j2 = 3^3 2^-3 E4 chi12^3 / chi10^4
//   j3 = 3 2^-5 E6 chi12^2 / chi10^3 + 3^2 2^-3 E4 chi12^3 / chi10^4.

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "siegel/bigfloat.hpp"
#include "siegel/bounds.hpp"
#include "siegel/fourier.hpp"
#include "siegel/tables.hpp"

namespace siegel {

using Int2x2 = std::array<std::array<std::int64_t, 2>, 2>;

/// 4x4 integer matrix M = (A B; C D) with M J M^T = J.
class SymplecticMatrix {
 public:
  using Rows = std::array<std::array<std::int64_t, 4>, 4>;

  SymplecticMatrix();  // identity
  /// Throws std::invalid_argument unless the matrix is symplectic.
  explicit SymplecticMatrix(const Rows& rows);

  static SymplecticMatrix identity() { return {}; }
  /// J = (0 I; -I 0).
  static SymplecticMatrix j();
  /// (I S; 0 I) for symmetric S.
  static SymplecticMatrix translation(const Int2x2& S);
  /// (U 0; 0 U^-T), acting as tau -> U tau U^T. U must be unimodular.
  static SymplecticMatrix gl2(const Int2x2& U);

  static bool is_symplectic(const Rows& rows);

  std::int64_t operator()(int i, int k) const { return m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]; }
  const Rows& rows() const { return m_; }
  Int2x2 block(int row, int col) const;
  SymplecticMatrix inverse() const;
  std::int64_t max_abs() const;

  friend SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b);
  friend bool operator==(const SymplecticMatrix& a, const SymplecticMatrix& b) { return a.m_ == b.m_; }

  std::string to_string() const;

 private:
  Rows m_;
};

/// (A tau + B)(C tau + D)^-1, symmetrized. Throws std::runtime_error if the
/// condition of C tau + D exhausts the working precision.
SiegelPoint act(const SymplecticMatrix& M, const SiegelPoint& tau);

struct Reduction {
  SiegelPoint point;
  SymplecticMatrix matrix;
  bool converged = false;
  int iterations = 0;
};

/// Moves tau towards the fundamental domain: Gauss reduction of Im(tau),
/// integer translation of Re(tau), and inversions with |det(C tau + D)| < 1.
Reduction reduce(const SiegelPoint& tau, int max_iterations = 200);

struct FormValues {
  BigComplex e4, e6, chi10, chi12;
};

struct IgusaValues {
  BigComplex j1, j2, j3;
  long certified_digits = 0;
  bool certified = false;
  /// Why certification failed, empty on success.
  std::string failure;
  /// Largest k the input precision supports, nullopt for exact input.
  std::optional<long> input_cap;
  PrecisionPlan plan;
  Reduction reduction;
  FormValues forms;
};

struct IgusaOptions {
  /// Replaces the planned trace bound.
  std::optional<std::int64_t> trace_bound;
};

FormValues evaluate_forms(const SiegelPoint& tau, std::int64_t B, TableCache& cache);

/// j1, j2, j3 at tau to k decimal places. Throws std::invalid_argument if k
/// exceeds what the input precision supports and std::runtime_error if chi10
/// vanishes numerically.
IgusaValues igusa(const SiegelPoint& tau, long k, TableCache& cache, const IgusaOptions& options = {});

/// j-values from form values.
void assemble_igusa(const FormValues& f, BigComplex& j1, BigComplex& j2, BigComplex& j3);

}  // namespace siegel
