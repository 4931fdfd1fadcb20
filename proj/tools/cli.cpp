#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "omf/error.hpp"
#include "omf/expression.hpp"
#include "omf/info_metrics.hpp"
#include "omf/serialize.hpp"
#include "omf/verify.hpp"

namespace omf::cli {

namespace {

constexpr const char* kFooter = R"(Function specs (--f):
  SLD RLD WY KuboMori Sqrt          catalog entries
  WYD(0.3) GBeta(0.3)               catalog entries with beta (or --beta)
  tilde(F) check(F) sharp(F)        transforms, nestable
  x^2-probe x^3-probe               non-monotone probes
  expr:<expression>                 user function of x

Expression grammar:
  expr   := term (('+' | '-') term)*
  term   := unary (('*' | '/') unary)*
  unary  := ('-' | '+') unary | power
  power  := primary ('^' unary)?
  primary:= number | x | beta | log(expr) | sqrt(expr) | '(' expr ')'
  'beta' is replaced by the --beta value.

Matrix literals: diag:a,b,...  pauli:x|y|z  identity:n  inline JSON  file.json
  JSON: {"dim": n, "entries": [[[re, im], ...], ...]}
Measures (--atoms): [[lambda, weight], ...] or {"atoms": ...}, inline or a file.

Exit codes: 0 certified / ok, 1 refuted, 2 inconclusive, 64 usage error.)";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(std::string_view text, const char* what) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    throw PreconditionError("cli", std::string("malformed ") + what + " '" + s + "'");
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cli", "cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw PreconditionError("cli", "invalid JSON in " + origin + ": " + e.what());
  }
}

// Inline JSON when the text starts with '{' or '[', otherwise a path.
Json load_json(std::string_view inline_or_path) {
  const std::string s = trim(inline_or_path);
  if (!s.empty() && (s.front() == '{' || s.front() == '[')) return parse_json_text(s, "inline argument");
  return parse_json_text(read_file(s), "'" + s + "'");
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(6) << v;
  return ss.str();
}

std::string fmt(Complex c) {
  if (std::abs(c.imag()) <= 1e-15 * std::max(1.0, std::abs(c.real()))) return fmt(c.real());
  return fmt(c.real()) + (c.imag() < 0 ? " - " : " + ") + fmt(std::abs(c.imag())) + "i";
}

std::string fmt_optional(std::optional<double> v) { return v ? fmt(*v) : std::string("?"); }

Json optional_json(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

struct RunConfig {
  std::uint64_t seed = 42;
  double tol = 1e-9;
  bool tol_given = false;
  std::optional<verify::GridSpec> grid;
  bool json = false;
};

verify::GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw PreconditionError("cli", "--grid expects lo:hi:count, got '" + text + "'");
  const double lo = parse_number(parts[0], "grid bound");
  const double hi = parse_number(parts[1], "grid bound");
  const double count = parse_number(parts[2], "grid count");
  if (count < 2 || count != std::floor(count)) {
    throw PreconditionError("cli", "--grid count must be an integer >= 2");
  }
  return verify::GridSpec::log_spaced(lo, hi, static_cast<std::size_t>(count));
}

std::vector<double> eval_points(const std::vector<double>& explicit_points, const RunConfig& cfg) {
  if (!explicit_points.empty()) return explicit_points;
  if (cfg.grid) return cfg.grid->points();
  return {};
}

Json descriptor_json(const FunctionDescriptor& f) {
  Json j = to_json(f);
  j["regularity"] = std::string(to_string(resolve_regularity(f)));
  j["f_at_zero"] = optional_json(f.f_at_zero());
  j["d2_at_one"] = optional_json(f.d2_at_one());
  return j;
}

std::string descriptor_row(const FunctionDescriptor& f) {
  return f.label() + " | " + std::string(to_string(f.provenance())) + " | " +
         std::string(to_string(resolve_regularity(f))) + " | f(0)=" + fmt_optional(f.f_at_zero()) +
         " | f''(1)=" + fmt_optional(f.d2_at_one());
}

void emit_values(const FunctionDescriptor& f, const std::vector<double>& xs, const RunConfig& cfg,
                 std::ostream& os, Json extra = Json::object()) {
  if (cfg.json) {
    Json values = Json::array();
    for (double x : xs) values.push_back(Json{{"x", x}, {"value", f(x)}});
    Json j = Json{{"function", descriptor_json(f)}};
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    j["values"] = std::move(values);
    os << j.dump() << '\n';
    return;
  }
  if (xs.empty()) {
    os << descriptor_row(f) << '\n';
    return;
  }
  for (double x : xs) os << f.label() << "(" << fmt(x) << ") = " << fmt(f(x)) << '\n';
}

// --- catalog --------------------------------------------------------------------------

struct CatalogNote {
  const char* name;
  const char* formula;
  const char* f_at_zero;  // symbolic for beta families
};

constexpr CatalogNote kNotes[] = {
    {"SLD", "(1+x)/2", nullptr},
    {"RLD", "2x/(x+1)", nullptr},
    {"WY", "((1+sqrt x)/2)^2", nullptr},
    {"WYD", "beta(1-beta)(x-1)^2/((x^beta-1)(x^(1-beta)-1))", "beta(1-beta)"},
    {"KuboMori", "(x-1)/log x", nullptr},
    {"Sqrt", "sqrt x", nullptr},
    {"GBeta", "(x^beta+x^(1-beta))/2", nullptr},
};

int cmd_catalog(const RunConfig& cfg, std::ostream& os) {
  Json arr = Json::array();
  for (const auto& note : kNotes) {
    const bool needs_beta = catalog_requires_beta(note.name);
    // Beta families share their regularity across beta; 0.5 stands in.
    const auto f = needs_beta ? catalog(note.name, BetaParameter(0.5)) : catalog(note.name);
    const std::string reg(to_string(f.regularity()));
    std::string f0 = note.f_at_zero ? note.f_at_zero : fmt_optional(f.f_at_zero());
    if (cfg.json) {
      Json j{{"name", note.name}, {"requires_beta", needs_beta}, {"regularity", reg}};
      j["f_at_zero"] = note.f_at_zero ? Json(note.f_at_zero) : optional_json(f.f_at_zero());
      j["d2_at_one"] = needs_beta ? Json(nullptr) : optional_json(f.d2_at_one());
      j["formula"] = note.formula;
      arr.push_back(std::move(j));
    } else {
      os << note.name << " | " << reg << " | f(0)=" << f0 << " | " << note.formula << '\n';
    }
  }
  if (cfg.json) os << arr.dump() << '\n';
  return kExitCertified;
}

// --- transforms -----------------------------------------------------------------------

FunctionDescriptor apply_transform(const std::string& which, const FunctionDescriptor& f) {
  if (which == "tilde") return tilde_transform(f);
  if (which == "check") return check_transform(f);
  if (which == "sharp") return sharp_involution(f);
  throw PreconditionError("transform", "unknown transform '" + which + "'; expected tilde, check or sharp");
}

int cmd_transform(const std::string& chain, const FunctionDescriptor& f0,
                  const std::vector<double>& xs, const RunConfig& cfg, std::ostream& os) {
  FunctionDescriptor f = f0;
  std::stringstream ss(chain);
  bool any = false;
  for (std::string step; std::getline(ss, step, ',');) {
    f = apply_transform(trim(step), f);
    any = true;
  }
  if (!any) throw PreconditionError("transform", "empty transform chain");
  emit_values(f, xs, cfg, os);
  return kExitCertified;
}

// --- measures -------------------------------------------------------------------------

double sup_relative_gap(const FunctionDescriptor& a, const FunctionDescriptor& b,
                        const std::vector<double>& xs) {
  double worst = 0.0;
  for (double x : xs) {
    const double fb = b(x);
    worst = std::max(worst, std::abs(a(x) - fb) / std::max(1.0, std::abs(fb)));
  }
  return worst;
}

int cmd_measure(const std::string& op, const std::string& atoms, const std::vector<double>& xs,
                const RunConfig& cfg, std::ostream& os) {
  const auto mu = parse_measure(atoms);
  if (op == "build") {
    emit_values(f_from_measure(mu), xs, cfg, os, Json{{"measure", to_json(mu)}});
    return kExitCertified;
  }
  if (op != "construct") {
    throw PreconditionError("measure", "unknown operation '" + op + "'; expected build or construct");
  }
  const auto rc = construct_regular_from_nonregular(mu);
  const auto grid = cfg.grid ? *cfg.grid : verify::GridSpec::log_spaced(1e-2, 1e2, 200);
  const double residual = sup_relative_gap(tilde_transform(rc.f), rc.g, grid.points());
  if (cfg.json) {
    Json j{{"C", rc.C},
           {"nu", to_json(rc.nu)},
           {"f_at_zero", optional_json(rc.f.f_at_zero())},
           {"tilde_residual", residual},
           {"ill_conditioned", rc.ill_conditioned}};
    if (!xs.empty()) {
      Json values = Json::array();
      for (double x : xs) values.push_back(Json{{"x", x}, {"f", rc.f(x)}, {"g", rc.g(x)}});
      j["values"] = std::move(values);
    }
    os << j.dump() << '\n';
  } else {
    os << "C = " << fmt(rc.C) << '\n' << "nu = ";
    for (std::size_t i = 0; i < rc.nu.size(); ++i) {
      const auto& a = rc.nu.atoms()[i];
      os << (i ? ", " : "") << "[" << fmt(a.lambda) << ", " << fmt(a.weight) << "]";
    }
    os << '\n'
       << "f(0) = " << fmt_optional(rc.f.f_at_zero()) << '\n'
       << "tilde-residual = " << fmt(residual) << '\n';
    if (rc.ill_conditioned) os << "warning: atom with lambda < 1e-6, construction is ill-conditioned\n";
    for (double x : xs) os << "f(" << fmt(x) << ") = " << fmt(rc.f(x)) << '\n';
  }
  return kExitCertified;
}

// --- matrices -------------------------------------------------------------------------

struct MatrixArgs {
  std::string f_spec = "SLD";
  std::string g_spec = "SLD";
  std::optional<double> beta;
  std::string rho, a, b;
  std::vector<std::string> family;
  std::string mode = "standard";
  bool check_identity = false;
  double floor = DensityMatrix::kDefaultEigenFloor;
};

void print_matrix(const HermitianMatrix& m, std::ostream& os) {
  for (Index r = 0; r < m.dim(); ++r) {
    os << "[";
    for (Index c = 0; c < m.dim(); ++c) os << (c ? ", " : "") << fmt(m(r, c));
    os << "]\n";
  }
}

const std::string& require(const std::string& value, const char* flag, const std::string& op) {
  if (value.empty()) throw PreconditionError("matrix " + op, std::string("missing ") + flag);
  return value;
}

int cmd_matrix(const std::string& op, const MatrixArgs& m, const RunConfig& cfg, std::ostream& os) {
  if (op == "mean") {
    const auto f = parse_function_spec(m.f_spec, m.beta);
    const auto r = matrix_mean(f, parse_matrix(require(m.a, "--A", op)), parse_matrix(require(m.b, "--B", op)));
    if (cfg.json) {
      os << Json{{"function", to_json(f)}, {"mean", to_json(r)}}.dump() << '\n';
    } else {
      print_matrix(r, os);
    }
    return kExitCertified;
  }

  const auto rho = parse_density(require(m.rho, "--rho", op), m.floor);
  const auto identity_block = [&](const HermitianMatrix& a, const HermitianMatrix& b, Json& j) {
    const auto f = parse_function_spec(m.f_spec, m.beta);
    const auto sides = crucial_identity_sides(f, rho, a, b);
    if (cfg.json) {
      j["eq4"] = Json{{"f", f.label()}, {"lhs", sides.lhs}, {"rhs", sides.rhs}, {"residual", sides.residual()}};
    } else {
      os << "identity lhs = " << fmt(sides.lhs) << '\n'
         << "identity rhs = " << fmt(sides.rhs) << '\n'
         << "residual = " << fmt(sides.residual()) << '\n';
    }
  };

  if (op == "metric" || op == "covariance") {
    const auto a = parse_matrix(require(m.a, "--A", op));
    const auto b = m.b.empty() ? a : parse_matrix(m.b);
    Json j = Json::object();
    if (op == "metric") {
      const auto f = parse_function_spec(m.f_spec, m.beta);
      const Complex v = monotone_metric(f, rho, a, b);
      if (cfg.json) {
        j["f"] = f.label();
        j["metric"] = v.real();
        j["metric_imag"] = v.imag();
      } else {
        os << "metric = " << fmt(v) << '\n';
      }
    } else {
      const auto g = parse_function_spec(m.g_spec, m.beta);
      const double v = g_covariance(g, rho, a, b);
      if (cfg.json) {
        j["g"] = g.label();
        j["covariance"] = v;
      } else {
        os << "covariance = " << fmt(v) << '\n';
      }
    }
    if (m.check_identity) identity_block(a, b, j);
    if (cfg.json) os << j.dump() << '\n';
    return kExitCertified;
  }
  if (op == "skew" || op == "wyd") {
    const auto a = parse_matrix(require(m.a, "--A", op));
    double v = 0.0;
    if (op == "skew") {
      v = skew_information(rho, a);
    } else {
      if (!m.beta) throw PreconditionError("matrix wyd", "missing --beta");
      v = wyd_information(BetaParameter(*m.beta), rho, a);
    }
    if (cfg.json) {
      os << Json{{op, v}}.dump() << '\n';
    } else {
      os << op << " = " << fmt(v) << '\n';
    }
    return kExitCertified;
  }
  if (op == "uncertainty") {
    if (m.family.empty()) throw PreconditionError("matrix uncertainty", "missing --family");
    ObservableFamily family(parse_family(m.family));
    UncertaintyMode mode;
    std::optional<FunctionDescriptor> f;
    if (m.mode == "standard") {
      mode = UncertaintyMode::standard;
    } else if (m.mode == "metric") {
      mode = UncertaintyMode::metric;
      f = parse_function_spec(m.f_spec, m.beta);
    } else {
      throw PreconditionError("matrix uncertainty", "--mode must be standard or metric");
    }
    const auto rep = uncertainty_check(rho, family, mode, f, cfg.seed);
    if (cfg.json) {
      os << to_json(rep).dump() << '\n';
    } else {
      os << "mode = " << rep.mode << '\n';
      if (rep.function) os << "f = " << *rep.function << '\n';
      os << "lhs_det = " << fmt(rep.lhs_det) << '\n'
         << "rhs_det = " << fmt(rep.rhs_det) << '\n'
         << "margin = " << fmt(rep.margin) << '\n'
         << "satisfied = " << (rep.satisfied ? "yes" : "no") << '\n';
    }
    return rep.satisfied ? kExitCertified : kExitRefuted;
  }
  throw PreconditionError("matrix", "unknown operation '" + op +
                                        "'; expected mean, metric, covariance, skew, wyd or uncertainty");
}

// --- verification ---------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::string f_spec;
  std::optional<double> beta;
  std::optional<std::size_t> trials;
};

constexpr const char* kSuites[] = {"concavity", "eq4",       "loewner", "means",
                                   "pairs",     "roundtrip", "uncertainty", "wyd"};

std::vector<verify::VerificationReport> run_suite(const std::string& suite, const VerifyArgs& v,
                                                  const RunConfig& cfg) {
  const auto tol = [&](double fallback) { return cfg.tol_given ? cfg.tol : fallback; };
  const auto n = [&](std::size_t fallback) { return v.trials.value_or(fallback); };
  std::optional<FunctionDescriptor> chosen;
  if (!v.f_spec.empty()) chosen = parse_function_spec(v.f_spec, v.beta);
  const auto all_or = [&](std::vector<FunctionDescriptor> defaults) {
    return chosen ? std::vector<FunctionDescriptor>{*chosen} : defaults;
  };

  std::vector<verify::VerificationReport> out;
  if (suite == "loewner") {
    const auto fixed = cfg.grid ? *cfg.grid : verify::GridSpec::fixed({1.0, 2.0, 3.0});
    for (const auto& f : all_or(catalog_instances())) {
      const double t = tol(1e-8);
      out.push_back(verify::merge(verify::loewner_check(f, fixed, t),
                                  verify::loewner_suite(f, n(200), 12, cfg.seed, t, 1)));
    }
  } else if (suite == "pairs") {
    for (const auto& f : all_or(catalog_instances())) {
      out.push_back(verify::operator_pair_suite(f, {2, 3, 4, 5, 6}, n(500), cfg.seed, tol(1e-8)));
    }
  } else if (suite == "means") {
    for (const auto& f : all_or(catalog_instances())) {
      out.push_back(verify::mean_axiom_suite(f, n(200), cfg.seed, tol(1e-8)));
    }
  } else if (suite == "roundtrip") {
    const auto grid = cfg.grid ? *cfg.grid : verify::GridSpec::log_spaced(1e-2, 1e2, 200);
    std::vector<FunctionDescriptor> reg, nonreg;
    if (chosen) {
      (resolve_regularity(*chosen) == Regularity::regular ? reg : nonreg).push_back(*chosen);
    } else {
      reg = regular_catalog_instances();
      nonreg = nonregular_catalog_instances();
    }
    out.push_back(verify::roundtrip_suite(reg, nonreg, grid, tol(1e-10)));
  } else if (suite == "eq4") {
    for (const auto& f : all_or(regular_catalog_instances())) {
      out.push_back(verify::identity_suite(f, n(200), cfg.seed, tol(1e-9)));
    }
  } else if (suite == "uncertainty") {
    if (!chosen) out.push_back(verify::uncertainty_suite(std::nullopt, n(1000), cfg.seed, tol(1e-9)));
    for (const auto& f : all_or(regular_catalog_instances())) {
      out.push_back(verify::uncertainty_suite(f, n(1000), cfg.seed, tol(1e-9)));
    }
  } else if (suite == "concavity") {
    for (const auto& f : all_or(regular_catalog_instances())) {
      out.push_back(verify::concavity_probe_d(f, n(500), cfg.seed, tol(1e-9)));
    }
  } else if (suite == "wyd") {
    std::vector<double> betas;
    if (v.beta) {
      betas.push_back(*v.beta);
    } else {
      for (int k = 1; k <= 9; ++k) betas.push_back(k / 10.0);
    }
    for (double b : betas) out.push_back(verify::wyd_suite(BetaParameter(b), n(200), cfg.seed, tol(1e-9)));
  } else {
    throw PreconditionError("verify", "unknown suite '" + suite +
                                          "'; expected all, concavity, eq4, loewner, means, pairs, "
                                          "roundtrip, uncertainty or wyd");
  }
  return out;
}

void print_report(const verify::VerificationReport& r, std::ostream& os) {
  os << r.suite << " | " << (r.function ? r.function->label() : std::string("-")) << " | trials=" << r.trials
     << " | " << verify::to_string(r.verdict)
     << " | min_margin=" << (std::isfinite(r.min_margin) ? fmt(r.min_margin) : std::string("-")) << '\n';
  constexpr std::size_t kShown = 5;
  for (std::size_t i = 0; i < std::min(kShown, r.failures.size()); ++i) {
    const auto& w = r.failures[i];
    os << "  witness seed=" << w.seed << " check=" << w.check << " statistic=" << fmt(w.statistic)
       << " threshold=" << fmt(w.threshold);
    if (!w.grid.empty()) {
      os << " grid={";
      for (std::size_t i = 0; i < w.grid.size(); ++i) os << (i ? "," : "") << fmt(w.grid[i]);
      os << "}";
    }
    os << '\n';
  }
  if (r.failures.size() > kShown) os << "  ... " << r.failures.size() - kShown << " more witnesses (see --json)\n";
}

int cmd_verify(const VerifyArgs& v, const RunConfig& cfg, std::ostream& os) {
  std::vector<verify::VerificationReport> reports;
  if (v.suite == "all") {
    for (const char* s : kSuites) {
      auto part = run_suite(s, v, cfg);
      reports.insert(reports.end(), part.begin(), part.end());
    }
  } else {
    reports = run_suite(v.suite, v, cfg);
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const auto& a, const auto& b) { return a.suite < b.suite; });
  bool refuted = false, inconclusive = false;
  for (const auto& r : reports) {
    refuted = refuted || r.verdict == verify::Verdict::refuted;
    inconclusive = inconclusive || r.verdict == verify::Verdict::inconclusive;
    if (cfg.json) {
      os << to_json(r).dump() << '\n';
    } else {
      print_report(r, os);
    }
  }
  if (refuted) return kExitRefuted;
  return inconclusive ? kExitInconclusive : kExitCertified;
}

}  // namespace

// --- parsers --------------------------------------------------------------------------

FunctionDescriptor parse_function_spec(std::string_view spec_in, std::optional<double> beta) {
  const std::string spec = trim(spec_in);
  if (spec.rfind("expr:", 0) == 0) return user_function(spec.substr(5), beta);
  if (spec == "x^2-probe") return verify::square_probe();
  if (spec == "x^3-probe") return verify::cube_probe();

  const auto open = spec.find('(');
  if (open != std::string::npos) {
    if (spec.back() != ')') throw PreconditionError("function spec", "unbalanced parentheses in '" + spec + "'");
    const std::string head = trim(spec.substr(0, open));
    const std::string inner = spec.substr(open + 1, spec.size() - open - 2);
    if (head == "tilde" || head == "check" || head == "sharp") {
      return apply_transform(head, parse_function_spec(inner, beta));
    }
    const auto& names = catalog_names();
    if (std::find(names.begin(), names.end(), head) != names.end()) {
      if (!catalog_requires_beta(head)) {
        throw PreconditionError("function spec", head + " takes no beta argument");
      }
      return catalog(head, BetaParameter(parse_number(inner, "beta")));
    }
    throw PreconditionError("function spec", "unknown function '" + head + "'");
  }

  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), spec) == names.end()) {
    throw PreconditionError("function spec",
                            "unknown function '" + spec +
                                "'; expected a catalog name, tilde(...), check(...), sharp(...), "
                                "x^2-probe, x^3-probe or expr:<expression>");
  }
  if (catalog_requires_beta(spec)) {
    if (!beta) throw PreconditionError("function spec", spec + " requires beta, e.g. " + spec + "(0.3) or --beta");
    return catalog(spec, BetaParameter(*beta));
  }
  return catalog(spec);
}

HermitianMatrix parse_matrix(std::string_view literal) {
  const std::string s = trim(literal);
  if (s.rfind("diag:", 0) == 0) {
    std::vector<double> d;
    std::stringstream ss(s.substr(5));
    for (std::string p; std::getline(ss, p, ',');) d.push_back(parse_number(p, "diagonal entry"));
    if (d.empty()) throw PreconditionError("matrix literal", "diag: needs at least one entry");
    return HermitianMatrix::diagonal(d);
  }
  if (s.rfind("pauli:", 0) == 0) {
    if (s.size() != 7) throw PreconditionError("matrix literal", "pauli: expects x, y or z");
    return pauli(s[6]);
  }
  if (s.rfind("identity:", 0) == 0) {
    const double n = parse_number(s.substr(9), "dimension");
    if (n < 1 || n != std::floor(n)) throw PreconditionError("matrix literal", "identity: needs a positive integer");
    return HermitianMatrix::identity(static_cast<Index>(n));
  }
  return hermitian_from_json(load_json(s));
}

DensityMatrix parse_density(std::string_view literal, double eigen_floor) {
  return DensityMatrix(parse_matrix(literal), eigen_floor);
}

AtomicMeasure parse_measure(std::string_view inline_or_path) {
  return measure_from_json(load_json(inline_or_path));
}

std::vector<HermitianMatrix> parse_family(const std::vector<std::string>& items) {
  // A token without a literal prefix continues the previous diag: list.
  std::vector<std::string> literals;
  for (const auto& item : items) {
    std::stringstream ss(item);
    for (std::string tok; std::getline(ss, tok, ',');) {
      tok = trim(tok);
      const bool numeric = !tok.empty() && (std::isdigit(static_cast<unsigned char>(tok[0])) ||
                                            tok[0] == '-' || tok[0] == '.' || tok[0] == '+');
      if (!numeric) {
        literals.push_back(tok);
      } else if (!literals.empty() && literals.back().rfind("diag:", 0) == 0) {
        literals.back() += "," + tok;
      } else {
        throw PreconditionError("matrix literal", "stray number '" + tok + "' in --family");
      }
    }
  }
  std::vector<HermitianMatrix> out;
  for (const auto& l : literals) out.push_back(parse_matrix(l));
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"omf: operator monotone functions, their transforms and quantum information metrics", "omf"};
  app.footer(kFooter);
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  std::string grid_text, out_path;
  app.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  auto* tol_opt = app.add_option("--tol", cfg.tol, "tolerance override (suites have their own defaults)")
                      ->capture_default_str();
  app.add_option("--grid", grid_text, "log-spaced grid lo:hi:count");
  app.add_flag("--json", cfg.json, "machine-readable output");
  app.add_option("--out", out_path, "write output to a file");

  std::string f_spec;
  std::optional<double> beta;
  std::vector<double> evals;

  auto* catalog_cmd = app.add_subcommand("catalog", "list catalog functions");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a function");
  eval_cmd->add_option("--f", f_spec, "function spec")->required();
  eval_cmd->add_option("--beta", beta, "beta in (0,1)");
  eval_cmd->add_option("--eval,--at", evals, "points")->delimiter(',');

  std::string chain;
  auto* transform_cmd = app.add_subcommand("transform", "apply tilde / check / sharp, comma chains left to right");
  transform_cmd->add_option("which", chain, "tilde|check|sharp[,...]")->required();
  transform_cmd->add_option("--f", f_spec, "function spec")->required();
  transform_cmd->add_option("--beta", beta, "beta in (0,1)");
  transform_cmd->add_option("--eval", evals, "points")->delimiter(',');

  std::string measure_op, atoms;
  auto* measure_cmd = app.add_subcommand("measure", "measure-built functions");
  measure_cmd->add_option("op", measure_op, "build|construct")->required();
  measure_cmd->add_option("--atoms", atoms, "[[lambda, weight], ...] inline or a file")->required();
  measure_cmd->add_option("--eval", evals, "points")->delimiter(',');

  std::string matrix_op;
  MatrixArgs margs;
  auto* matrix_cmd = app.add_subcommand("matrix", "matrix means, metrics and informations");
  matrix_cmd->add_option("op", matrix_op, "mean|metric|covariance|skew|wyd|uncertainty")->required();
  matrix_cmd->add_option("--f", margs.f_spec, "function for mean / metric / identity check")->capture_default_str();
  matrix_cmd->add_option("--g", margs.g_spec, "function for covariance")->capture_default_str();
  matrix_cmd->add_option("--beta", margs.beta, "beta in (0,1)");
  matrix_cmd->add_option("--rho", margs.rho, "density matrix");
  matrix_cmd->add_option("--A", margs.a, "observable A");
  matrix_cmd->add_option("--B", margs.b, "observable B (defaults to A)");
  matrix_cmd->add_option("--family", margs.family, "observables, comma separated");
  matrix_cmd->add_option("--mode", margs.mode, "standard|metric")->capture_default_str();
  matrix_cmd->add_flag("--check-eq4", margs.check_identity, "print both sides of the metric / covariance identity");
  matrix_cmd->add_option("--floor", margs.floor, "minimum eigenvalue of rho")->capture_default_str();

  VerifyArgs vargs;
  auto* verify_cmd = app.add_subcommand("verify", "run certification suites");
  verify_cmd->add_option("suite", vargs.suite,
                         "all|concavity|eq4|loewner|means|pairs|roundtrip|uncertainty|wyd")
      ->capture_default_str();
  verify_cmd->add_option("--f", vargs.f_spec, "restrict to one function");
  verify_cmd->add_option("--beta", vargs.beta, "beta in (0,1)");
  verify_cmd->add_option("--trials", vargs.trials, "trials per suite");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("omf");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitCertified;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ostringstream buffer;
  int code = kExitCertified;
  try {
    cfg.tol_given = tol_opt->count() > 0;
    if (!(cfg.tol > 0.0)) throw PreconditionError("cli", "--tol must be positive");
    if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);

    if (catalog_cmd->parsed()) {
      code = cmd_catalog(cfg, buffer);
    } else if (eval_cmd->parsed()) {
      emit_values(parse_function_spec(f_spec, beta), eval_points(evals, cfg), cfg, buffer);
    } else if (transform_cmd->parsed()) {
      code = cmd_transform(chain, parse_function_spec(f_spec, beta), eval_points(evals, cfg), cfg, buffer);
    } else if (measure_cmd->parsed()) {
      code = cmd_measure(measure_op, atoms, eval_points(evals, cfg), cfg, buffer);
    } else if (matrix_cmd->parsed()) {
      code = cmd_matrix(matrix_op, margs, cfg, buffer);
    } else if (verify_cmd->parsed()) {
      code = cmd_verify(vargs, cfg, buffer);
    }
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInconclusive;
  }

  if (out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(out_path);
    if (!file) {
      err << "error: cli: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace omf::cli
