#pragma once

// Fourier coefficients a(T) of the Siegel forms, keyed by the invariants of
// T = (a, b/2; b/2, c): N = 4ac - b^2 and content gcd(a, b, c).

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "siegel/forms.hpp"
#include "siegel/series.hpp"

namespace siegel {

struct CoeffTable {
  FormKind form = FormKind::E4;
  std::int64_t nmax = 0;
  std::int64_t tmax = 0;
  /// a(0).
  Rational constant;
  /// degenerate[t - 1] = a(diag(t, 0)) for t = 1..tmax.
  std::vector<Rational> degenerate;
  /// posdef[N][d - 1] for N = 1..nmax and d = 1..f(N), f(N)^2 the largest
  /// square dividing N. posdef[0] is empty. Entries with d^2 not dividing N are 0.
  std::vector<std::vector<Rational>> posdef;

  /// a(T) for N > 0 and content d. Zero when d exceeds the stored row.
  /// Throws std::out_of_range if N > nmax.
  const Rational& at(std::int64_t N, std::int64_t d) const;
  /// a(T) for rank-one T of content t >= 1. Throws std::out_of_range if t > tmax.
  const Rational& degenerate_at(std::int64_t t) const;
  /// a(T) for T = (a, b/2; b/2, c). Throws std::invalid_argument unless T >= 0.
  const Rational& for_matrix(std::int64_t a, std::int64_t b, std::int64_t c) const;

  bool covers(std::int64_t n, std::int64_t t) const { return nmax >= n && tmax >= t; }
  bool operator==(const CoeffTable& other) const = default;
};

CoeffTable build_table(FormKind form, std::int64_t nmax, std::int64_t tmax);
/// Table covering max(nmax, old) and max(tmax, old); existing rows are kept.
CoeffTable extend_table(const CoeffTable& table, std::int64_t nmax, std::int64_t tmax);

/// Single coefficient without a prebuilt table. For N = 0 the third argument
/// is the content t of the rank-one class (t = 0 is the constant term).
Rational coeff(FormKind form, std::int64_t N, std::int64_t d);
/// Single coefficient of T = (a, b/2; b/2, c).
Rational coeff_for_matrix(FormKind form, std::int64_t a, std::int64_t b, std::int64_t c);

class TableError : public std::runtime_error {
 public:
  enum class Kind { Io, Malformed, Checksum, Version, FormMismatch };
  TableError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string serialize_table(const CoeffTable& table);
/// Inverse of serialize_table. If `expected` is set the form must match.
CoeffTable parse_table(const std::string& text, std::optional<FormKind> expected = std::nullopt);

void save_table(const CoeffTable& table, const std::filesystem::path& path);
CoeffTable load_table(const std::filesystem::path& path, std::optional<FormKind> expected = std::nullopt);

/// Hex SHA-256 digest.
std::string sha256_hex(const std::string& data);

/// In-memory table store with an optional on-disk cache, one file per form.
/// Tables only grow; a request below what is held returns the held table.
class TableCache {
 public:
  explicit TableCache(std::optional<std::filesystem::path> dir = std::nullopt, std::ostream* warnings = nullptr);

  std::shared_ptr<const CoeffTable> get(FormKind form, std::int64_t nmax, std::int64_t tmax);

  std::optional<std::filesystem::path> file_for(FormKind form) const;

 private:
  std::optional<std::filesystem::path> dir_;
  std::ostream* warnings_;
  std::mutex mutex_;
  std::map<FormKind, std::shared_ptr<const CoeffTable>> tables_;
};

}  // namespace siegel
