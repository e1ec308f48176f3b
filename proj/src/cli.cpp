#include "siegel/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <optional>
#include <sstream>

#include "siegel/bounds.hpp"
#include "siegel/evaluator.hpp"
#include "siegel/tables.hpp"
#include "siegel/verify.hpp"

namespace siegel {
namespace {

using nlohmann::json;

struct Common {
  long digits = 30;
  std::string cache_dir;
  bool json_output = false;
  std::vector<std::string> point_args;
  std::string point_option;
  bool exact = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* cmd, Common& c, bool with_point) {
  cmd->add_option("--digits,-k", c.digits, "Decimal digits (k)")->check(CLI::PositiveNumber);
  cmd->add_option("--cache", c.cache_dir, "Table cache directory (default: $SIEGEL_CACHE_DIR)");
  cmd->add_flag("--json", c.json_output, "Machine-readable output");
  if (with_point) {
    cmd->add_option("--point", c.point_option, "Point as six comma-separated decimals");
    cmd->add_flag("--exact", c.exact, "Treat decimal inputs as exact");
    cmd->add_option("coords", c.point_args, "Re/Im of tau1, z, tau2 (six numbers)");
  }
}

std::optional<std::filesystem::path> cache_dir(const Common& c) {
  if (!c.cache_dir.empty()) return std::filesystem::path(c.cache_dir);
  if (const char* env = std::getenv("SIEGEL_CACHE_DIR"); env != nullptr && *env != '\0') return std::filesystem::path(env);
  return std::nullopt;
}

std::optional<SiegelPoint> read_point(const Common& c, long digits) {
  std::vector<std::string> parts = c.point_args;
  if (!c.point_option.empty()) {
    if (!parts.empty()) throw UsageError("give the point either positionally or with --point, not both");
    std::stringstream in(c.point_option);
    for (std::string item; std::getline(in, item, ',');) {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      parts.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
    }
  }
  if (parts.empty()) return std::nullopt;
  if (parts.size() != 6) throw UsageError("a point needs six numbers (re/im of tau1, z, tau2), got " + std::to_string(parts.size()));
  std::array<std::string, 6> a;
  std::copy(parts.begin(), parts.end(), a.begin());
  try {
    return SiegelPoint::parse(a, digits, c.exact);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string fixed(const BigReal& x, long k) { return x.to_fixed(static_cast<int>(k)); }

bool negligible(const BigReal& x, long k) { return abs(x) < BigReal::pow10(-k, x.bits()); }

std::string complex_text(const BigComplex& z, long k) {
  std::string s = fixed(z.re(), k);
  if (!negligible(z.im(), k)) s += (z.im().sign() < 0 ? " - " : " + ") + fixed(abs(z.im()), k) + "*i";
  return s;
}

json plan_json(const PrecisionPlan& p) {
  return json{{"delta", p.delta.to_sci(12)},
              {"k", std::to_string(p.k)},
              {"n", std::to_string(p.n)},
              {"certified", p.certified},
              {"l", std::to_string(p.l)},
              {"B", std::to_string(p.B)},
              {"coeff_bound_digits", std::to_string(p.coeff_bound_digits)},
              {"working_digits", std::to_string(p.working_digits)},
              {"chi10_partial_sum", p.chi10.partial_sum.re().to_sci(12)},
              {"chi10_majorant", p.chi10.majorant.to_sci(6)},
              {"chi10_trace", std::to_string(p.chi10.t0)},
              {"epsilon", std::to_string(p.chi10.params.epsilon)},
              {"eta", std::to_string(p.chi10.params.eta)}};
}

void print_plan(std::ostream& out, const PrecisionPlan& p) {
  out << "delta = " << p.delta.to_sci(12) << '\n';
  out << "n = " << p.n << " (|chi10| >= 10^-" << p.n << ", " << (p.certified ? "certified" : "NOT certified")
      << " at trace <= " << p.chi10.t0 << ", eps=" << p.chi10.params.epsilon << " eta=" << p.chi10.params.eta << ")\n";
  out << "chi10 partial sum = " << p.chi10.partial_sum.re().to_sci(12) << ", majorant = " << p.chi10.majorant.to_sci(4)
      << '\n';
  out << "l = " << p.l << '\n';
  out << "B = " << p.B << '\n';
  out << "coefficient bound digits = " << p.coeff_bound_digits << '\n';
  out << "working digits = " << p.working_digits << '\n';
}

std::string point_text(const SiegelPoint& p, long digits) {
  auto c = [&](const BigComplex& z) { return z.re().to_sci(static_cast<int>(digits)) + " " + z.im().to_sci(static_cast<int>(digits)); };
  return c(p.tau1) + "  " + c(p.z) + "  " + c(p.tau2);
}

json point_json(const SiegelPoint& p, long digits) {
  auto s = [&](const BigReal& x) { return x.to_sci(static_cast<int>(digits)); };
  return json::array({s(p.tau1.re()), s(p.tau1.im()), s(p.z.re()), s(p.z.im()), s(p.tau2.re()), s(p.tau2.im())});
}

json matrix_json(const SymplecticMatrix& m) {
  json rows = json::array();
  for (const auto& r : m.rows()) {
    json row = json::array();
    for (auto v : r) row.push_back(std::to_string(v));
    rows.push_back(row);
  }
  return rows;
}

std::string input_text(const SiegelPoint& p) {
  if (!p.input_digits) return "exact";
  return std::to_string(*p.input_digits) + " decimal places";
}

int cmd_eval(const Common& c, std::optional<std::int64_t> trace_bound, std::ostream& out, std::ostream& err) {
  const auto point = read_point(c, c.digits);
  if (!point) throw UsageError("eval needs a point");
  TableCache cache(cache_dir(c), &err);
  IgusaOptions options;
  options.trace_bound = trace_bound;
  IgusaValues v;
  try {
    v = igusa(*point, c.digits, cache, options);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  const long k = c.digits;
  if (c.json_output) {
    json j{{"j1", fixed(v.j1.re(), k)},
           {"j2", fixed(v.j2.re(), k)},
           {"j3", fixed(v.j3.re(), k)},
           {"imag", {{"j1", fixed(v.j1.im(), k)}, {"j2", fixed(v.j2.im(), k)}, {"j3", fixed(v.j3.im(), k)}}},
           {"certified", v.certified},
           {"certified_digits", std::to_string(v.certified_digits)},
           {"plan", plan_json(v.plan)},
           {"reduction", {{"matrix", matrix_json(v.reduction.matrix)},
                          {"converged", v.reduction.converged},
                          {"iterations", std::to_string(v.reduction.iterations)}}},
           {"input_precision", input_text(*point)}};
    if (v.input_cap) j["input_cap"] = std::to_string(*v.input_cap);
    if (!v.failure.empty()) j["failure"] = v.failure;
    out << j.dump(2) << '\n';
  } else {
    out << "j1 = " << complex_text(v.j1, k) << '\n';
    out << "j2 = " << complex_text(v.j2, k) << '\n';
    out << "j3 = " << complex_text(v.j3, k) << '\n';
    out << "certified digits = " << v.certified_digits << '\n';
    print_plan(out, v.plan);
    out << "reduction matrix = " << v.reduction.matrix.to_string() << (v.reduction.converged ? "" : " (iteration cap hit)")
        << '\n';
    out << "input precision = " << input_text(*point);
    if (v.input_cap) out << " (supports k <= " << *v.input_cap << ")";
    out << '\n';
  }
  if (!v.certified) {
    err << "certification failed: " << v.failure << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

CoeffTable truncate(const CoeffTable& t, std::int64_t nmax, std::int64_t tmax) {
  CoeffTable r;
  r.form = t.form;
  r.nmax = nmax;
  r.tmax = tmax;
  r.constant = t.constant;
  r.degenerate.assign(t.degenerate.begin(), t.degenerate.begin() + tmax);
  r.posdef.assign(t.posdef.begin(), t.posdef.begin() + nmax + 1);
  return r;
}

int cmd_coeffs(const Common& c, const std::string& form_name, std::optional<std::int64_t> nmax_opt,
               std::optional<std::int64_t> row, std::optional<std::int64_t> content, std::int64_t tmax,
               std::ostream& out, std::ostream& err) {
  FormKind form;
  try {
    form = parse_form(form_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::int64_t nmax = nmax_opt.value_or(row.value_or(100));
  if (nmax < 0 || tmax < 0) throw UsageError("--nmax and --tmax must be non-negative");
  if (row && (*row < 1 || *row > nmax)) throw UsageError("--row must lie in 1..nmax");
  if (content && !row) throw UsageError("--content needs --row");
  TableCache cache(cache_dir(c), &err);
  const auto table = cache.get(form, nmax, tmax);

  if (!row) {
    const CoeffTable view = truncate(*table, nmax, tmax);
    if (c.json_output) {
      json entries = json::array();
      for (std::int64_t N = 1; N <= nmax; ++N) {
        const auto& r = view.posdef[static_cast<std::size_t>(N)];
        for (std::size_t d = 0; d < r.size(); ++d) {
          if (sgn(r[d]) != 0) entries.push_back(json::array({std::to_string(N), std::to_string(d + 1), r[d].get_str()}));
        }
      }
      json deg = json::array();
      for (const auto& v : view.degenerate) deg.push_back(v.get_str());
      out << json{{"form", name(form)}, {"nmax", std::to_string(nmax)}, {"tmax", std::to_string(tmax)},
                  {"constant", view.constant.get_str()}, {"degenerate", deg}, {"entries", entries}}
                 .dump(2)
          << '\n';
    } else {
      out << serialize_table(view);
    }
    return kExitOk;
  }

  const auto& r = table->posdef[static_cast<std::size_t>(*row)];
  std::vector<std::pair<std::int64_t, Rational>> entries;
  if (content) {
    entries.emplace_back(*content, table->at(*row, *content));
  } else {
    for (std::size_t d = 0; d < r.size(); ++d) entries.emplace_back(static_cast<std::int64_t>(d + 1), r[d]);
  }
  if (c.json_output) {
    json e = json::object();
    for (const auto& [d, v] : entries) e[std::to_string(d)] = v.get_str();
    out << json{{"form", name(form)}, {"N", std::to_string(*row)}, {"entries", e}}.dump(2) << '\n';
  } else {
    for (const auto& [d, v] : entries) {
      out << "P " << *row << ' ' << d << ' ' << v.get_num().get_str() << '/' << v.get_den().get_str() << '\n';
    }
  }
  return kExitOk;
}

int cmd_reduce(const Common& c, std::ostream& out, std::ostream& err) {
  const auto point = read_point(c, std::max<long>(c.digits, 40));
  if (!point) throw UsageError("reduce needs a point");
  Reduction r;
  BigReal before, after;
  try {
    r = reduce(*point);
    before = delta_of(*point);
    after = delta_of(r.point);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  if (c.json_output) {
    out << json{{"point", point_json(r.point, c.digits)},
                {"matrix", matrix_json(r.matrix)},
                {"delta_before", before.to_sci(12)},
                {"delta_after", after.to_sci(12)},
                {"converged", r.converged},
                {"iterations", std::to_string(r.iterations)}}
               .dump(2)
        << '\n';
  } else {
    out << "reduced point = " << point_text(r.point, c.digits) << '\n';
    out << "matrix = " << r.matrix.to_string() << '\n';
    out << "delta: " << before.to_sci(12) << " -> " << after.to_sci(12) << '\n';
    out << "converged = " << (r.converged ? "yes" : "no") << " after " << r.iterations << " inversion steps\n";
  }
  return r.converged ? kExitOk : kExitFailure;
}

int cmd_bound(const Common& c, std::ostream& out, std::ostream& err) {
  const auto point = read_point(c, std::max<long>(c.digits, 40));
  if (!point) {
    json j = json::object();
    for (unsigned w : {4u, 6u, 10u, 12u}) j["c" + std::to_string(w)] = eisenstein_bound_const(w).to_sci(10);
    j["chi12_tail_constant"] = cusp_bound_const(FormKind::Chi12, {0.1, 1.45}).to_sci(10);
    for (FormKind f : {FormKind::E4, FormKind::E6, FormKind::Chi10, FormKind::Chi12}) {
      j["magnitude_bound_delta1"][name(f)] = magnitude_bound(f, 1.0).to_sci(8);
    }
    if (c.json_output) {
      out << j.dump(2) << '\n';
    } else {
      for (unsigned w : {4u, 6u, 10u, 12u}) out << "c_" << w << " = " << j["c" + std::to_string(w)].get<std::string>() << '\n';
      out << "chi12 tail constant (eps=0.1, eta=1.45) = " << j["chi12_tail_constant"].get<std::string>() << '\n';
      for (FormKind f : {FormKind::E4, FormKind::E6, FormKind::Chi10, FormKind::Chi12}) {
        out << "|" << name(f) << "| <= " << j["magnitude_bound_delta1"][name(f)].get<std::string>()
            << " when delta >= 1\n";
      }
    }
    return kExitOk;
  }
  TableCache cache(cache_dir(c), &err);
  PrecisionPlan plan;
  try {
    const Reduction r = reduce(*point);
    plan = make_plan(r.point, c.digits, cache);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  if (c.json_output) {
    out << plan_json(plan).dump(2) << '\n';
  } else {
    print_plan(out, plan);
  }
  return plan.certified ? kExitOk : kExitFailure;
}

int cmd_verify(const Common& c, const std::string& suite, std::optional<std::int64_t> nmax, std::ostream& out) {
  std::vector<CheckResult> results;
  auto append = [&](std::vector<CheckResult> r) { results.insert(results.end(), r.begin(), r.end()); };
  const bool all = suite == "all";
  if (all || suite == "oracle") append(verify_oracle(nmax.value_or(500)));
  if (all || suite == "denominators") append(verify_denominators(nmax.value_or(1000)));
  if (all || suite == "bounds") append(verify_bounds(nmax.value_or(2000)));
  if (all || suite == "waldspurger") append(verify_waldspurger());
  bool passed = true;
  for (const auto& r : results) passed = passed && r.passed;
  if (c.json_output) {
    json checks = json::array();
    for (const auto& r : results) checks.push_back(json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    out << json{{"suite", suite}, {"passed", passed}, {"checks", checks}}.dump(2) << '\n';
  } else {
    for (const auto& r : results) out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    out << (passed ? "all checks passed" : "some checks FAILED") << '\n';
  }
  return passed ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Siegel modular forms of degree two and Igusa functions", "siegel"};
  app.require_subcommand(1);

  Common eval_c, coeffs_c, reduce_c, bound_c, verify_c;
  std::optional<std::int64_t> trace_bound;
  auto* eval = app.add_subcommand("eval", "Evaluate j1, j2, j3 at a point");
  add_common(eval, eval_c, true);
  eval->add_option("--trace-bound", trace_bound, "Override the trace bound B")->check(CLI::PositiveNumber);

  std::string form_name;
  std::optional<std::int64_t> nmax, row, content;
  std::int64_t tmax = 0;
  auto* coeffs = app.add_subcommand("coeffs", "Print Fourier coefficient tables");
  add_common(coeffs, coeffs_c, false);
  coeffs->add_option("--form", form_name, "e4, e6, e10, e12, chi10 or chi12")->required();
  coeffs->add_option("--nmax", nmax, "Largest 4ac - b^2");
  coeffs->add_option("--tmax", tmax, "Largest trace of rank-one entries");
  coeffs->add_option("--row", row, "Print the row N = 4ac - b^2 only");
  coeffs->add_option("--content", content, "With --row, print content d only");

  auto* red = app.add_subcommand("reduce", "Reduce a point towards the fundamental domain");
  add_common(red, reduce_c, true);

  auto* bound = app.add_subcommand("bound", "Precision plan for a point, or the analytic constants");
  add_common(bound, bound_c, true);

  std::string suite = "all";
  std::optional<std::int64_t> verify_nmax;
  auto* verify = app.add_subcommand("verify", "Run self-checks");
  add_common(verify, verify_c, false);
  verify->add_option("--suite", suite, "oracle, denominators, bounds, waldspurger or all")
      ->check(CLI::IsMember({"oracle", "denominators", "bounds", "waldspurger", "all"}));
  verify->add_option("--nmax", verify_nmax, "Table size for the oracle, denominator and bound suites");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_c, trace_bound, out, err);
    if (*coeffs) return cmd_coeffs(coeffs_c, form_name, nmax, row, content, tmax, out, err);
    if (*red) return cmd_reduce(reduce_c, out, err);
    if (*bound) return cmd_bound(bound_c, out, err);
    if (*verify) return cmd_verify(verify_c, suite, verify_nmax, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace siegel
