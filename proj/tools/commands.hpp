#pragma once

// Subcommands of the hecke_metro tool. Each returns the rendered output and
// an exit status: 0 when every check passes, 1 on a failed check.
// Malformed configurations throw UsageError (exit status 2).

#include <heckemetro/heckemetro.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace heckemetro::cli {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string family = "symmetric";
  int n = 3;
  std::string theta = "1/2";
  std::string scan = "long";
  long lmin = 1;
  long lmax = 3;
  bool averaged = false;
  std::string start;  // comma-separated payload; empty means the identity
  std::string mode = "exact";
  std::uint64_t seed = 1;
  long samples = 10000;
  bool emit_samples = false;
  bool inject_fault = false;
  std::string format = "json";
  std::string output;
  // bounds grid
  std::vector<int> bound_n = {10, 20, 50, 100};
  std::vector<std::string> bound_theta = {"1/2"};
  std::vector<double> bound_c = {1, 2, 3, 4, 5};
  int lead_n = 100;
  std::vector<std::string> lead_theta = {"1/2", "0.9", "0.1"};
};

struct CommandResult {
  int exit_code = 0;
  std::string text;
};

inline GroupFamily parse_family(const std::string& name, int n) {
  try {
    if (name == "symmetric") return GroupFamily::symmetric(n);
    if (name == "hypercube") return GroupFamily::hypercube(n);
    if (name == "dihedral") return GroupFamily::dihedral(n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown family '" + name + "' (expected symmetric, hypercube or dihedral)");
}

inline ScanKind parse_scan(const std::string& s) {
  if (s == "long") return ScanKind::long_scan;
  if (s == "short") return ScanKind::short_scan;
  if (s == "random") return ScanKind::random;
  throw UsageError("unknown scan '" + s + "' (expected long, short or random)");
}

inline Rational parse_theta_exact(const std::string& text) {
  Rational t;
  try {
    t = parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("theta: ") + e.what());
  }
  if (!(t > 0 && t <= 1)) throw UsageError("theta must satisfy 0 < theta <= 1");
  return t;
}

inline double parse_theta_float(const std::string& text) { return nearest_double(parse_theta_exact(text)); }

inline GroupElement parse_start(const GroupFamily& f, const std::string& text) {
  if (text.empty()) return identity(f);
  std::vector<int> payload;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      payload.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("start: malformed entry '" + item + "'");
    }
  }
  try {
    return make_element(f, payload);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("start: ") + e.what());
  }
}

template <Scalar S>
ordered_json number(const S& v) {
  if constexpr (is_exact_v<S>) {
    return to_string(v);
  } else {
    if (!std::isfinite(v)) return nullptr;
    return static_cast<double>(v);
  }
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_cell(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return quoted + "\"";
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

inline std::string render_csv(const std::vector<std::string>& columns, const ordered_json& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out += (i ? "," : "");
      if (row.contains(columns[i])) out += csv_cell(row[columns[i]]);
    }
    out += "\n";
  }
  return out;
}

/// Writes to a sibling temporary file, then renames it over the target.
inline void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << text;
    if (!out.flush()) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, target);
}

inline ordered_json config_json(const RunConfig& c, const char* command) {
  ordered_json j;
  j["command"] = command;
  j["family"] = c.family;
  j["n"] = c.n;
  j["theta"] = c.theta;
  j["mode"] = c.mode;
  return j;
}

// ---------------------------------------------------------------- analyze

namespace detail {

/// Closed-form value for one step count: exact, float, or unavailable.
template <Scalar S>
struct FormulaValue {
  std::optional<S> value;
  std::optional<double> approx;  // only for forms that involve cosines
  std::string name;
};

template <Scalar S>
FormulaValue<S> closed_form(const GroupFamily& f, ScanKind scan, bool averaged, const GroupElement& start,
                            const S& theta, long l) {
  const bool at_id = start == identity(f);
  const int n = f.n();
  FormulaValue<S> out;
  const bool hyper = f.kind() == FamilyKind::hypercube;
  const bool within = f.order() <= Integer(static_cast<unsigned long>(enumeration_cap()));

  if (hyper && (scan == ScanKind::long_scan || scan == ScanKind::short_scan)) {
    if (averaged) {
      out.value = hypercube_systematic_scan_avg_chisq(n, theta, l);
      out.name = "(1 + theta^(4l))^n - 1";
    } else {
      out.value = hypercube_systematic_scan_chisq(n, theta, l, start.payload);
      out.name = "sum over nonzero lambda of theta^((4l-1)|lambda| + 2 lambda.x)";
    }
    return out;
  }
  if (hyper && scan == ScanKind::random) {
    if (averaged) {
      out.value = hypercube_random_scan_avg_chisq(n, theta, l);
      out.name = "sum over j >= 1 of C(n,j) (1 - j(1+theta)/n)^(2l)";
    } else {
      out.value = hypercube_random_scan_chisq(n, theta, l, start.payload);
      out.name = "sum over nonzero lambda of theta^(2 lambda.x - |lambda|) (1 - |lambda|(1+theta)/n)^(2l)";
    }
    return out;
  }
  if (scan == ScanKind::long_scan) {
    if (f.kind() == FamilyKind::dihedral) {
      if (averaged) {
        out.value = dihedral_long_scan_avg_chisq(n, theta, l);
        out.name = "theta^(4ln) + (2n-2) theta^(2ln)";
      } else if (at_id) {
        out.value = dihedral_long_scan_chisq(n, theta, l);
        out.name = "theta^((4l-1)n) + theta^((2l-1)n) ((1+theta)[n]_theta - 1) - theta^(2ln)";
      }
      return out;
    }
    if (!within && f.kind() != FamilyKind::symmetric) return out;
    if (averaged) {
      out.value = long_scan_avg_chisq(f, theta, l);
      out.name = "sum over nontrivial irreps of d^2 theta^(2l(l(w0) - c))";
    } else if (at_id) {
      out.value = long_scan_chisq(f, theta, l);
      out.name = "sum over nontrivial irreps of t d theta^(2l(l(w0) - c))";
    }
    return out;
  }
  if (scan == ScanKind::short_scan && f.kind() == FamilyKind::symmetric && (averaged || at_id)) {
    out.value = short_scan_chisq_symmetric(n, theta, l, averaged);
    out.name = averaged ? "sum over nontrivial shapes of d times the tableau sum of theta^(2l(n-1-c(S(n))))"
                        : "sum over nontrivial shapes of t times the tableau sum of theta^(2l(n-1-c(S(n))))";
    return out;
  }
  if (scan == ScanKind::random && f.kind() == FamilyKind::dihedral && (averaged || at_id)) {
    out.approx = dihedral_random_scan_chisq(n, to_double(theta), l, averaged);
    out.name = averaged ? "theta^(2l) + sum over 0<k<n of 2 mu_k^(2l), mu_k = (theta + 2cos(pi k/n) sqrt(theta) - 1)/2"
                        : "theta^(2l-n) + theta^(1-n)(1+theta)[n]_theta/n times the sum over 0<k<n of "
                          "(2-2cos(2pi k/n))/(theta^2 - 2cos(2pi k/n) theta + 1) mu_k^(2l)";
    return out;
  }
  return out;
}

inline bool close(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b)) + 1e-300;
}

template <Scalar S>
CommandResult analyze_impl(const RunConfig& c, const GroupFamily& f, const S& theta) {
  const ScanKind scan = parse_scan(c.scan);
  const GroupElement start = parse_start(f, c.start);
  if (c.lmin < 0 || c.lmax < c.lmin) throw UsageError("need 0 <= lmin <= lmax");
  if (c.averaged && !c.start.empty()) throw UsageError("--averaged and --start are mutually exclusive");
  const bool within = f.order() <= Integer(static_cast<unsigned long>(enumeration_cap()));
  if (is_exact_v<S> && !within) {
    throw UsageError(f.name() + " exceeds the enumeration cap " + std::to_string(enumeration_cap()) +
                     "; raise HECKE_METRO_CAP or use --mode float");
  }
  const double tolerance = is_exact_v<S> ? 1e-12 : 1e-9;

  std::optional<Kernel<S>> kernel;
  std::optional<Distribution<S>> pi;
  std::optional<Distribution<S>> row;
  std::optional<DenseMatrix<S>> power;
  if (within) {
    auto en = make_enumeration(f);
    kernel = make_kernel(en, theta, scan);
    pi = stationary(en, theta);
    if (c.averaged) {
      power = kernel_power(*kernel, c.lmin);
    } else {
      row = evolve(*kernel, Distribution<S>::point_mass(en, en->index_of(start)), c.lmin);
    }
  }

  ordered_json rows = ordered_json::array();
  bool all_match = true;
  std::string formula_name;
  for (long l = c.lmin; l <= c.lmax; ++l) {
    ordered_json r;
    r["l"] = l;
    const auto form = closed_form(f, scan, c.averaged, start, theta, l);
    formula_name = form.name;
    r["chisq_formula"] = form.value ? number(*form.value)
                         : form.approx ? ordered_json(is_exact_v<S> ? ordered_json(format_double(*form.approx))
                                                                    : ordered_json(*form.approx))
                                       : ordered_json(nullptr);
    std::optional<S> oracle, tv;
    if (kernel) {
      if (c.averaged) {
        S chi = from_int<S>(0), t = from_int<S>(0);
        for (std::size_t x = 0; x < kernel->size(); ++x) {
          chi += pi->values[x] * chi_square<S>(power->row(x), pi->values);
          t += pi->values[x] * tv_distance<S>(power->row(x), pi->values);
        }
        oracle = chi;
        tv = t;
        *power = kernel->right_multiply(*power);
      } else {
        oracle = chi_square(*row, *pi);
        tv = tv_distance(*row, *pi);
        row->values = kernel->apply(row->values);
      }
    }
    r["chisq_oracle"] = oracle ? number(*oracle) : ordered_json(nullptr);
    r["tv"] = tv ? number(*tv) : ordered_json(nullptr);
    const std::optional<S> chi_ref = oracle ? oracle : form.value;
    if (chi_ref) {
      r["tv_bound"] = number(S(*chi_ref / 4));
    } else if (form.approx) {
      r["tv_bound"] = is_exact_v<S> ? ordered_json(format_double(*form.approx / 4)) : ordered_json(*form.approx / 4);
    } else {
      r["tv_bound"] = nullptr;
    }
    if (oracle && form.value) {
      bool m;
      if constexpr (is_exact_v<S>) {
        m = *oracle == *form.value;
      } else {
        m = close(*oracle, *form.value, tolerance);
      }
      r["match"] = m;
      all_match = all_match && m;
    } else if (oracle && form.approx) {
      const bool m = close(to_double(*oracle), *form.approx, tolerance);
      r["match"] = m;
      all_match = all_match && m;
    } else {
      r["match"] = nullptr;
    }
    rows.push_back(std::move(r));
  }

  ordered_json doc;
  doc["config"] = config_json(c, "analyze");
  doc["config"]["scan"] = c.scan;
  doc["config"]["lmin"] = c.lmin;
  doc["config"]["lmax"] = c.lmax;
  doc["config"]["averaged"] = c.averaged;
  doc["config"]["start"] = format_element(start);
  doc["rows"] = rows;
  doc["provenance"] = {
      {"chisq_formula", formula_name.empty() ? "no closed form for this configuration" : formula_name},
      {"chisq_oracle", within ? "exact evolution of the transition matrix" : "not computed: group exceeds cap"},
      {"tv", "half the L1 distance to the Mallows distribution"},
      {"tv_bound", "chi-square / 4, an upper bound on tv^2"},
      {"match", is_exact_v<S> && formula_name.find("cos") == std::string::npos
                    ? "exact equality"
                    : "relative difference within " + format_double(tolerance)},
  };
  doc["status"] = all_match ? "pass" : "fail";
  CommandResult res;
  res.exit_code = all_match ? 0 : 1;
  res.text = c.format == "csv" ? render_csv({"l", "chisq_formula", "chisq_oracle", "tv", "tv_bound", "match"}, rows)
                               : doc.dump(2) + "\n";
  return res;
}

}  // namespace detail

inline void check_format(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") throw UsageError("format must be json or csv");
}

inline CommandResult cmd_analyze(const RunConfig& c) {
  check_format(c);
  const GroupFamily f = parse_family(c.family, c.n);
  if (c.mode == "exact") return detail::analyze_impl<Rational>(c, f, parse_theta_exact(c.theta));
  if (c.mode == "float") return detail::analyze_impl<double>(c, f, parse_theta_float(c.theta));
  throw UsageError("mode must be exact or float");
}

// ---------------------------------------------------------------- verify

namespace detail {

struct CheckList {
  ordered_json rows = ordered_json::array();
  bool ok = true;
  void add(const std::string& name, bool pass, const std::string& detail = "") {
    ordered_json r;
    r["check"] = name;
    r["pass"] = pass;
    if (!detail.empty()) r["detail"] = detail;
    rows.push_back(std::move(r));
    ok = ok && pass;
  }
};

inline bool commutes(const DenseMatrix<Rational>& a, const DenseMatrix<Rational>& b) { return a * b == b * a; }

}  // namespace detail

inline CommandResult cmd_verify(const RunConfig& c) {
  check_format(c);
  if (c.mode != "exact") throw UsageError("verify runs in exact mode only");
  const GroupFamily f = parse_family(c.family, c.n);
  const Rational theta = parse_theta_exact(c.theta);
  const Rational q = 1 / theta;
  if (f.order() > Integer(static_cast<unsigned long>(enumeration_cap()))) {
    throw UsageError(f.name() + " exceeds the enumeration cap " + std::to_string(enumeration_cap()));
  }
  auto en = make_enumeration(f);
  const auto pi = stationary(en, theta);
  detail::CheckList checks;

  bool hecke_ok = true;
  std::vector<DenseMatrix<Rational>> singles;
  for (int i = 1; i <= f.rank(); ++i) {
    DenseMatrix<Rational> k = metropolis_kernel(en, i, theta).matrix();
    if (c.inject_fault && i == 1) {
      // Move mass from the first transition to a holding entry.
      const std::size_t y = en->left_reflect_at(1, 0);
      k(0, y) -= Rational(1, 2);
      k(0, 0) += Rational(1, 2);
    }
    const auto h = HeckeVector<Rational>::generator(f, q, Basis::tilde, i);
    hecke_ok = hecke_ok && k == left_mult_matrix(h, *en);
    singles.push_back(std::move(k));
  }
  checks.add("single-site kernel equals left multiplication by T~_i", hecke_ok);

  const std::vector<std::pair<std::string, Kernel<Rational>>> named = {
      {"random", make_kernel(en, theta, ScanKind::random)},
      {"short", make_kernel(en, theta, ScanKind::short_scan)},
      {"long", make_kernel(en, theta, ScanKind::long_scan)},
  };

  bool stat_ok = true, rev_ok = true, stoch_ok = true;
  for (int i = 1; i <= f.rank(); ++i) {
    const auto k = metropolis_kernel(en, i, theta);
    stat_ok = stat_ok && is_stationary(k, pi);
    rev_ok = rev_ok && check_reversible(k, pi);
  }
  for (const auto& [name, k] : named) {
    stat_ok = stat_ok && is_stationary(k, pi);
    const auto m = k.matrix();
    rev_ok = rev_ok && check_reversible(m, pi);
    stoch_ok = stoch_ok && is_row_stochastic(m);
  }
  checks.add("Mallows distribution is stationary for every kernel", stat_ok);
  checks.add("single-site, random, short and long kernels are reversible", rev_ok);
  checks.add("scan kernels are row-stochastic", stoch_ok);

  {
    // A kernel from h is reversible iff star(h) = h; test a palindrome and a one-way sweep.
    std::vector<int> sweep;
    for (int i = 1; i <= f.rank(); ++i) sweep.push_back(i);
    bool ok = true;
    for (const auto& recipe : {short_recipe(f), sweep}) {
      const auto h = recipe_element(f, theta, recipe);
      const bool self_adjoint = star(h) == h;
      ok = ok && self_adjoint == check_reversible(scan_kernel(en, theta, recipe), pi);
    }
    checks.add("reversible exactly when the Hecke element is star-invariant", ok);
  }

  const auto& long_kernel = named[2].second;
  const auto long_matrix = long_kernel.matrix();
  {
    const auto w0 = HeckeVector<Rational>::basis_element(f, q, Basis::tilde, longest_element(f));
    checks.add("long scan equals left multiplication by T~_{w0}^2", long_matrix == left_mult_matrix(product(w0, w0), *en));
  }
  {
    bool ok = true;
    for (const auto& k : singles) ok = ok && detail::commutes(long_matrix, k);
    checks.add("long scan commutes with every single-site kernel", ok);
  }
  {
    bool ok = true;
    for (long l = 1; l <= 2; ++l) {
      ok = ok && averaged_chi_square(long_kernel, pi, l) == trace_power(long_kernel, 2 * l) - 1;
    }
    checks.add("pi-averaged chi-square equals tr(K^(2l)) - 1", ok);
  }
  {
    bool ok = true;
    for (long m = 1; m <= 5; ++m) ok = ok && trace_power(long_kernel, m) == long_scan_trace(f, theta, m);
    checks.add("long scan traces match the irreducible spectrum", ok);
  }
  {
    bool ok = true;
    for (long l = 1; l <= 3; ++l) {
      const auto d = evolve(long_kernel, Distribution<Rational>::point_mass(en, en->identity_index()), l);
      ok = ok && chi_square(d, pi) == long_scan_chisq(f, theta, l);
      ok = ok && averaged_chi_square(long_kernel, pi, l) == long_scan_avg_chisq(f, theta, l);
    }
    checks.add("long scan chi-square matches the closed form", ok);
  }
  if (f.kind() == FamilyKind::symmetric) {
    bool ok = true;
    const auto& k = named[1].second;
    for (long l = 1; l <= 3; ++l) {
      const auto d = evolve(k, Distribution<Rational>::point_mass(en, en->identity_index()), l);
      ok = ok && chi_square(d, pi) == short_scan_chisq_symmetric(f.n(), theta, l, false);
      ok = ok && averaged_chi_square(k, pi, l) == short_scan_chisq_symmetric(f.n(), theta, l, true);
    }
    for (long m = 1; m <= 5; ++m) ok = ok && trace_power(k, m) == short_scan_trace_symmetric(f.n(), theta, m);
    checks.add("short scan chi-square and spectrum match the tableau sums", ok);
  }
  if (f.kind() == FamilyKind::hypercube) {
    bool ok = true;
    const auto& k = named[0].second;
    for (std::size_t x : {en->identity_index(), en->longest_index()}) {
      for (long l = 1; l <= 3; ++l) {
        const auto d = evolve(k, Distribution<Rational>::point_mass(en, x), l);
        ok = ok && chi_square(d, pi) == hypercube_random_scan_chisq(f.n(), theta, l, (*en)[x].payload);
      }
    }
    checks.add("hypercube random scan chi-square matches the closed form", ok);
  }
  if (f.kind() == FamilyKind::dihedral) {
    bool ok = true;
    const auto& k = named[0].second;
    for (long l = 1; l <= 3; ++l) {
      const auto d = evolve(k, Distribution<Rational>::point_mass(en, en->identity_index()), l);
      ok = ok && detail::close(chi_square(d, pi).get_d(), dihedral_random_scan_chisq(f.n(), theta.get_d(), l, false), 1e-12);
      ok = ok && detail::close(averaged_chi_square(k, pi, l).get_d(),
                               dihedral_random_scan_chisq(f.n(), theta.get_d(), l, true), 1e-12);
    }
    checks.add("dihedral random scan chi-square matches the closed form", ok);
  }
  checks.add("sum of squared dimensions equals the group order", dimension_square_sum(f) == f.order());
  checks.add("sum of dimension times generic degree equals P_W(q)",
             dimension_degree_sum(f, q) == poincare_polynomial(f, q));
  checks.add("Poincare polynomial by enumeration equals the degree product",
             en->poincare_by_enumeration(q) == poincare_polynomial(f, q));

  ordered_json doc;
  doc["config"] = config_json(c, "verify");
  doc["config"]["inject_fault"] = c.inject_fault;
  doc["rows"] = checks.rows;
  doc["provenance"] = {{"checks", "exact rational comparison of brute-force matrices against Hecke algebra and "
                                  "character formulas"}};
  doc["status"] = checks.ok ? "pass" : "fail";
  CommandResult res;
  res.exit_code = checks.ok ? 0 : 1;
  res.text = c.format == "csv" ? render_csv({"check", "pass"}, checks.rows) : doc.dump(2) + "\n";
  return res;
}

// ---------------------------------------------------------------- sample

struct SampleOutput {
  CommandResult result;
  std::string summary_for_stderr;  // filled in CSV mode with --emit-samples
};

inline SampleOutput cmd_sample_full(const RunConfig& c) {
  check_format(c);
  const GroupFamily f = parse_family(c.family, c.n);
  const Rational theta_exact = parse_theta_exact(c.theta);
  const double theta = nearest_double(theta_exact);
  if (c.samples < 2) throw UsageError("--samples must be at least 2");
  const bool within = f.order() <= Integer(static_cast<unsigned long>(enumeration_cap()));
  if (f.kind() == FamilyKind::dihedral && !within) throw UsageError("dihedral sampling needs the group within the cap");

  std::shared_ptr<const Enumeration> en = within ? make_enumeration(f) : nullptr;
  RandomSource rng(c.seed);
  std::vector<GroupElement> draws;
  draws.reserve(static_cast<std::size_t>(c.samples));
  double sum = 0, sum_sq = 0;
  std::vector<double> coord(static_cast<std::size_t>(f.n()), 0.0);
  for (long s = 0; s < c.samples; ++s) {
    GroupElement w = mallows_sample(f, theta, rng, en.get());
    const double l = length(w);
    sum += l;
    sum_sq += l * l;
    if (f.kind() == FamilyKind::hypercube) {
      for (std::size_t j = 0; j < coord.size(); ++j) coord[j] += w.payload[j];
    }
    draws.push_back(std::move(w));
  }
  const double N = static_cast<double>(c.samples);
  const double mean = sum / N;
  const double var = (sum_sq - N * mean * mean) / (N - 1);
  const auto exact = length_moments(f, theta_exact);
  const double se = std::sqrt(exact.variance.get_d() / N);
  const double z = se > 0 ? (mean - exact.mean.get_d()) / se : 0.0;

  ordered_json summary;
  summary["samples"] = c.samples;
  summary["seed"] = c.seed;
  summary["length_mean"] = mean;
  summary["length_variance"] = var;
  summary["length_mean_exact"] = to_string(exact.mean);
  summary["length_variance_exact"] = to_string(exact.variance);
  summary["length_mean_z"] = z;
  bool ok = std::fabs(z) <= 3.0;
  summary["length_mean_within_3se"] = ok;
  if (en) {
    const auto pi = stationary(en, theta);
    summary["empirical_tv"] = tv_distance(empirical_distribution(draws, en), pi);
  } else {
    summary["empirical_tv"] = nullptr;
  }
  if (f.kind() == FamilyKind::hypercube) {
    ordered_json cm = ordered_json::array();
    for (double v : coord) cm.push_back(v / N);
    summary["coordinate_means"] = cm;
    summary["coordinate_mean_exact"] = 1.0 / (1.0 + theta);
  }

  ordered_json rows = ordered_json::array();
  if (c.emit_samples) {
    for (std::size_t s = 0; s < draws.size(); ++s) {
      ordered_json r;
      r["index"] = s;
      r["element"] = format_element(draws[s]);
      r["length"] = length(draws[s]);
      rows.push_back(std::move(r));
    }
  }

  ordered_json doc;
  doc["config"] = config_json(c, "sample");
  doc["config"]["samples"] = c.samples;
  doc["config"]["seed"] = c.seed;
  doc["summary"] = summary;
  doc["rows"] = rows;
  doc["provenance"] = {
      {"sampler", f.kind() == FamilyKind::symmetric ? "sequential insertion, position k with probability "
                                                      "theta^(k-1)/[i]_theta"
                  : f.kind() == FamilyKind::hypercube ? "independent coordinates, one with probability 1/(1+theta)"
                                                      : "inverse CDF over the enumerated group"},
      {"length_mean_exact", "degree formula for the mean of the length under pi"},
  };
  doc["status"] = ok ? "pass" : "fail";

  SampleOutput out;
  out.result.exit_code = ok ? 0 : 1;
  if (c.format == "json") {
    out.result.text = doc.dump(2) + "\n";
  } else if (c.emit_samples) {
    out.result.text = render_csv({"index", "element", "length"}, rows);
    out.summary_for_stderr = summary.dump(2) + "\n";
  } else {
    ordered_json kv = ordered_json::array();
    for (const auto& [k, v] : summary.items()) {
      if (v.is_array()) continue;
      kv.push_back({{"key", k}, {"value", v}});
    }
    out.result.text = render_csv({"key", "value"}, kv);
  }
  return out;
}

inline CommandResult cmd_sample(const RunConfig& c) { return cmd_sample_full(c).result; }

// ---------------------------------------------------------------- bounds

inline CommandResult cmd_bounds(const RunConfig& c) {
  check_format(c);
  if (c.mode != "float" && c.mode != "exact") throw UsageError("mode must be exact or float");
  ordered_json rows = ordered_json::array();
  auto add = [&](const std::string& bound, int n, double theta, std::optional<double> cc, double steps, double value) {
    ordered_json r;
    r["bound"] = bound;
    r["n"] = n;
    r["theta"] = theta;
    r["c"] = cc ? ordered_json(*cc) : ordered_json(nullptr);
    r["steps"] = steps;
    r["value"] = std::isfinite(value) ? ordered_json(value) : ordered_json(nullptr);
    rows.push_back(std::move(r));
  };
  for (const auto& ttext : c.bound_theta) {
    const double theta = parse_theta_float(ttext);
    if (!(theta < 1.0)) throw UsageError("bounds need theta < 1");
    for (int n : c.bound_n) {
      if (n < 3) throw UsageError("bounds need n >= 3");
      for (double cc : c.bound_c) {
        add("symmetric_short_scan", n, theta, cc, bounds::short_scan_steps(n, theta, cc),
            bounds::short_scan_bound(n, theta, cc));
        add("symmetric_short_scan_averaged", n, theta, cc, bounds::short_scan_avg_steps(n, theta, cc),
            bounds::short_scan_avg_bound(n, theta, cc));
        add("hypercube_random_scan", n, theta, cc, bounds::hypercube_random_steps(n, theta, cc),
            bounds::hypercube_random_bound(cc));
        add("hypercube_systematic_scan", n, theta, cc, bounds::hypercube_systematic_steps(n, theta, cc),
            bounds::hypercube_systematic_bound(cc));
        const double rate = 1.0 - 0.5 * std::pow(1.0 - std::sqrt(theta), 2.0);
        const double dsteps = n * std::log(theta) / (2.0 * std::log(rate)) + cc;
        add("dihedral_random_scan", n, theta, cc, dsteps,
            bounds::dihedral_random_scan_bound(n, theta, static_cast<long>(std::ceil(dsteps))));
      }
      add("symmetric_long_scan_one_pass", n, theta, std::nullopt, 1, bounds::long_scan_single_pass_bound(n, theta));
      add("symmetric_long_scan_one_pass_averaged", n, theta, std::nullopt, 1,
          bounds::long_scan_single_pass_avg_bound(n, theta));
      add("dihedral_long_scan_one_pass", n, theta, std::nullopt, 1, bounds::dihedral_single_scan_bound(n, theta));
    }
  }
  ordered_json lead = ordered_json::array();
  for (const auto& ttext : c.lead_theta) {
    const double theta = parse_theta_float(ttext);
    if (!(theta < 1.0)) throw UsageError("lead constants need theta < 1");
    const auto row = bounds::lead_constants(c.lead_n, theta);
    lead.push_back({{"theta", row.theta}, {"n", row.n}, {"random_scan", row.random_scan},
                    {"systematic_scan", row.systematic_scan}});
  }

  ordered_json doc;
  doc["config"] = {{"command", "bounds"}, {"mode", "float"}, {"n", c.bound_n}, {"theta", c.bound_theta},
                   {"c", c.bound_c}, {"lead_n", c.lead_n}, {"lead_theta", c.lead_theta}};
  doc["rows"] = rows;
  doc["lead_constants"] = lead;
  doc["provenance"] = {
      {"symmetric_short_scan", "(e^(theta^(2c+1)) - 1) + n! theta^(n^2/8 - n log n/log theta + n(c+1/4)) at "
                               "l = n/2 - log n/log theta + c"},
      {"symmetric_short_scan_averaged", "(e^(theta^(2c)) - 1) + (theta^c/e)^n e^(1/12) sqrt(2 pi n) at "
                                        "l = -log n/log theta + c"},
      {"hypercube_random_scan", "(e^(e^-c) - 1) + e^(-c/2) at l = n(log n - log theta + c)/(2(1+theta))"},
      {"hypercube_systematic_scan", "(e^(e^-c) - 1)/4 at l = ((log n + c)/log(1/theta) + 1)/4"},
      {"dihedral_random_scan", "theta^-n sqrt((1+theta)/(1-theta)) (1 - (1-sqrt theta)^2/2)^(2l) at "
                               "l = ceil(n log theta/(2 log(1 - (1-sqrt theta)^2/2)) + c)"},
      {"symmetric_long_scan_one_pass", "(e^(n^2 theta^(n/2)) - 1) + n! theta^(n^2/8 + 5n/4)"},
      {"symmetric_long_scan_one_pass_averaged", "(e^(n^2 theta^n) - 1) + n! theta^(n^2/2 + n)"},
      {"dihedral_long_scan_one_pass", "2 theta^(n+1)/(1-theta)"},
      {"lead_constants", "random n log(n/theta)/(2(1+theta)); systematic n log n/(2 log(1/theta))"},
  };
  doc["status"] = "pass";
  CommandResult res;
  if (c.format == "csv") {
    ordered_json all = rows;
    for (const auto& l : lead) {
      all.push_back({{"bound", "lead_constant_random"}, {"n", l["n"]}, {"theta", l["theta"]}, {"value", l["random_scan"]}});
      all.push_back(
          {{"bound", "lead_constant_systematic"}, {"n", l["n"]}, {"theta", l["theta"]}, {"value", l["systematic_scan"]}});
    }
    res.text = render_csv({"bound", "n", "theta", "c", "steps", "value"}, all);
  } else {
    res.text = doc.dump(2) + "\n";
  }
  return res;
}

}  // namespace heckemetro::cli
