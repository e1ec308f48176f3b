#include "siegel/tables.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "siegel/halfint.hpp"
#include "siegel/number_theory.hpp"

namespace siegel {
namespace {

const Rational kZero = 0;

HalfIntTable series_for(FormKind form, std::int64_t order) {
  const auto n = static_cast<std::size_t>(order);
  switch (form) {
    case FormKind::Chi10: return cusp_series(10, n);
    case FormKind::Chi12: return cusp_series(12, n);
    default: return cohen_series(weight(form), n);
  }
}

Rational degenerate_value(FormKind form, std::int64_t t) {
  if (is_cusp_form(form)) return 0;
  return eisenstein_normalization(weight(form)) * Rational(sigma(weight(form) - 1, t));
}

Rational constant_value(FormKind form) { return is_cusp_form(form) ? 0 : 1; }

mpz_class power(std::int64_t e, unsigned k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(e), k);
  return r;
}

// norm * sum_{e | d} e^(w-1) s[N / e^2], assuming d^2 | N.
Rational assemble(const HalfIntTable& s, unsigned w, std::int64_t N, std::int64_t d) {
  Rational sum = 0;
  for (std::int64_t e : divisors(d)) {
    const Rational& c = s[static_cast<std::size_t>(N / (e * e))];
    if (sgn(c) == 0) continue;
    sum += c * Rational(power(e, w - 1));
  }
  return sum * s.normalization;
}

std::vector<Rational> assemble_row(const HalfIntTable& s, unsigned w, std::int64_t N) {
  const std::int64_t f = square_root_of_square_part(N);
  std::vector<Rational> row(static_cast<std::size_t>(f));
  const std::int64_t r = N % 4;
  if (r == 1 || r == 2) return row;  // no T has this determinant
  for (std::int64_t d = 1; d <= f; ++d) {
    if (N % (d * d) == 0) row[static_cast<std::size_t>(d - 1)] = assemble(s, w, N, d);
  }
  return row;
}

void fill(CoeffTable& t, std::int64_t nmax, std::int64_t tmax) {
  if (nmax > t.nmax) {
    const HalfIntTable s = series_for(t.form, nmax);
    t.posdef.resize(static_cast<std::size_t>(nmax + 1));
    for (std::int64_t N = t.nmax + 1; N <= nmax; ++N) {
      t.posdef[static_cast<std::size_t>(N)] = assemble_row(s, weight(t.form), N);
    }
    t.nmax = nmax;
  }
  for (std::int64_t k = t.tmax + 1; k <= tmax; ++k) t.degenerate.push_back(degenerate_value(t.form, k));
  t.tmax = std::max(t.tmax, tmax);
}

std::string rational_text(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

[[noreturn]] void malformed(const std::string& why) { throw TableError(TableError::Kind::Malformed, why); }

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) malformed("expected num/den, got '" + text + "'");
  mpz_class num, den;
  if (num.set_str(text.substr(0, slash), 10) != 0 || den.set_str(text.substr(slash + 1), 10) != 0 || den <= 0) {
    malformed("bad rational '" + text + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::int64_t parse_int(const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) malformed("bad integer '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    malformed("bad integer '" + text + "'");
  }
}

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

}  // namespace

const Rational& CoeffTable::at(std::int64_t N, std::int64_t d) const {
  if (N < 1 || N > nmax) throw std::out_of_range("coefficient table has no row N=" + std::to_string(N));
  const auto& row = posdef[static_cast<std::size_t>(N)];
  if (d < 1 || d > static_cast<std::int64_t>(row.size())) return kZero;
  return row[static_cast<std::size_t>(d - 1)];
}

const Rational& CoeffTable::degenerate_at(std::int64_t t) const {
  if (t < 1 || t > tmax) throw std::out_of_range("coefficient table has no trace t=" + std::to_string(t));
  return degenerate[static_cast<std::size_t>(t - 1)];
}

const Rational& CoeffTable::for_matrix(std::int64_t a, std::int64_t b, std::int64_t c) const {
  const std::int64_t N = 4 * a * c - b * b;
  if (a < 0 || c < 0 || N < 0) throw std::invalid_argument("T is not positive semi-definite");
  const std::int64_t d = gcd3(a, b, c);
  if (d == 0) return constant;
  if (N == 0) return degenerate_at(d);
  return at(N, d);
}

CoeffTable build_table(FormKind form, std::int64_t nmax, std::int64_t tmax) {
  if (nmax < 0 || tmax < 0) throw std::invalid_argument("build_table: bounds must be non-negative");
  CoeffTable t;
  t.form = form;
  t.constant = constant_value(form);
  t.posdef.resize(1);
  fill(t, nmax, tmax);
  return t;
}

CoeffTable extend_table(const CoeffTable& table, std::int64_t nmax, std::int64_t tmax) {
  CoeffTable t = table;
  fill(t, nmax, tmax);
  return t;
}

Rational coeff(FormKind form, std::int64_t N, std::int64_t d) {
  if (N < 0) throw std::invalid_argument("coeff: negative N");
  if (N == 0) {
    if (d < 0) throw std::invalid_argument("coeff: negative content");
    return d == 0 ? constant_value(form) : degenerate_value(form, d);
  }
  if (d < 1) throw std::invalid_argument("coeff: content must be positive");
  if (N % (d * d) != 0) return 0;
  const std::int64_t r = N % 4;
  if (r == 1 || r == 2) return 0;
  return assemble(series_for(form, N), weight(form), N, d);
}

Rational coeff_for_matrix(FormKind form, std::int64_t a, std::int64_t b, std::int64_t c) {
  const std::int64_t N = 4 * a * c - b * b;
  if (a < 0 || c < 0 || N < 0) throw std::invalid_argument("T is not positive semi-definite");
  return coeff(form, N, gcd3(a, b, c));
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

std::string serialize_table(const CoeffTable& table) {
  std::ostringstream out;
  out << "SIEGEL-COEFFS v1 " << name(table.form) << ' ' << weight(table.form) << ' ' << table.nmax << ' '
      << table.tmax << '\n';
  out << "C " << rational_text(table.constant) << '\n';
  for (std::int64_t t = 1; t <= table.tmax; ++t) out << "D " << t << ' ' << rational_text(table.degenerate_at(t)) << '\n';
  for (std::int64_t N = 1; N <= table.nmax; ++N) {
    const auto& row = table.posdef[static_cast<std::size_t>(N)];
    for (std::size_t d = 0; d < row.size(); ++d) {
      if (sgn(row[d]) != 0) out << "P " << N << ' ' << d + 1 << ' ' << rational_text(row[d]) << '\n';
    }
  }
  std::string body = out.str();
  return body + "SHA256 " + sha256_hex(body) + "\n";
}

CoeffTable parse_table(const std::string& text, std::optional<FormKind> expected) {
  const auto header_end = text.find('\n');
  if (header_end == std::string::npos) malformed("missing header line");
  const auto header = split_words(text.substr(0, header_end));
  if (header.size() != 6 || header[0] != "SIEGEL-COEFFS") malformed("bad header");
  if (header[1] != "v1") throw TableError(TableError::Kind::Version, "unsupported table version " + header[1]);

  const auto sha_pos = text.rfind("SHA256 ");
  if (sha_pos == std::string::npos || sha_pos == 0 || text[sha_pos - 1] != '\n') malformed("missing checksum");
  const std::string body = text.substr(0, sha_pos);
  std::string digest = text.substr(sha_pos + 7);
  while (!digest.empty() && (digest.back() == '\n' || digest.back() == '\r')) digest.pop_back();
  if (digest != sha256_hex(body)) throw TableError(TableError::Kind::Checksum, "table checksum mismatch");

  FormKind form;
  try {
    form = parse_form(header[2]);
  } catch (const std::invalid_argument&) {
    malformed("unknown form " + header[2]);
  }
  if (expected && *expected != form) {
    throw TableError(TableError::Kind::FormMismatch,
                     "table holds " + name(form) + " but " + name(*expected) + " was requested");
  }
  if (parse_int(header[3]) != static_cast<std::int64_t>(weight(form))) malformed("weight does not match form");

  CoeffTable t;
  t.form = form;
  t.nmax = parse_int(header[4]);
  t.tmax = parse_int(header[5]);
  if (t.nmax < 0 || t.tmax < 0) malformed("negative bounds");
  t.degenerate.assign(static_cast<std::size_t>(t.tmax), Rational(0));
  t.posdef.resize(static_cast<std::size_t>(t.nmax + 1));
  for (std::int64_t N = 1; N <= t.nmax; ++N) {
    t.posdef[static_cast<std::size_t>(N)].assign(static_cast<std::size_t>(square_root_of_square_part(N)), Rational(0));
  }

  bool have_constant = false;
  std::istringstream lines(body.substr(header_end + 1));
  for (std::string line; std::getline(lines, line);) {
    const auto w = split_words(line);
    if (w.empty()) continue;
    if (w[0] == "C" && w.size() == 2) {
      t.constant = parse_rational(w[1]);
      have_constant = true;
    } else if (w[0] == "D" && w.size() == 3) {
      const std::int64_t k = parse_int(w[1]);
      if (k < 1 || k > t.tmax) malformed("trace out of range: " + line);
      t.degenerate[static_cast<std::size_t>(k - 1)] = parse_rational(w[2]);
    } else if (w[0] == "P" && w.size() == 4) {
      const std::int64_t N = parse_int(w[1]);
      const std::int64_t d = parse_int(w[2]);
      if (N < 1 || N > t.nmax) malformed("N out of range: " + line);
      auto& row = t.posdef[static_cast<std::size_t>(N)];
      if (d < 1 || d > static_cast<std::int64_t>(row.size())) malformed("content out of range: " + line);
      row[static_cast<std::size_t>(d - 1)] = parse_rational(w[3]);
    } else {
      malformed("unrecognized line: " + line);
    }
  }
  if (!have_constant) malformed("missing constant term");
  return t;
}

void save_table(const CoeffTable& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw TableError(TableError::Kind::Io, "cannot write " + tmp);
    out << serialize_table(table);
    if (!out) throw TableError(TableError::Kind::Io, "write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

CoeffTable load_table(const std::filesystem::path& path, std::optional<FormKind> expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableError(TableError::Kind::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str(), expected);
}

TableCache::TableCache(std::optional<std::filesystem::path> dir, std::ostream* warnings)
    : dir_(std::move(dir)), warnings_(warnings) {}

std::optional<std::filesystem::path> TableCache::file_for(FormKind form) const {
  if (!dir_) return std::nullopt;
  std::string file = name(form);
  for (auto& c : file) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return *dir_ / (file + ".v1.coeffs");
}

std::shared_ptr<const CoeffTable> TableCache::get(FormKind form, std::int64_t nmax, std::int64_t tmax) {
  std::lock_guard<std::mutex> lock(mutex_);
  std::shared_ptr<const CoeffTable> held;
  if (auto it = tables_.find(form); it != tables_.end()) held = it->second;
  if (held && held->covers(nmax, tmax)) return held;

  const auto path = file_for(form);
  if (path && std::filesystem::exists(*path)) {
    try {
      auto loaded = std::make_shared<const CoeffTable>(load_table(*path, form));
      if (!held || loaded->nmax > held->nmax || loaded->tmax > held->tmax) held = loaded;
    } catch (const TableError& e) {
      if (warnings_) *warnings_ << "warning: ignoring cache file " << path->string() << ": " << e.what() << "; rebuilding\n";
    }
  }
  if (!held || !held->covers(nmax, tmax)) {
    CoeffTable grown = held ? extend_table(*held, std::max(nmax, held->nmax), std::max(tmax, held->tmax))
                            : build_table(form, nmax, tmax);
    held = std::make_shared<const CoeffTable>(std::move(grown));
    if (path) save_table(*held, *path);
  }
  tables_[form] = held;
  return held;
}

}  // namespace siegel
