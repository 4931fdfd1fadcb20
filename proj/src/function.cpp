#include "omf/function.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "omf/error.hpp"

namespace omf {

namespace {

// Half-width of the window around x = 1 where 0/0 formulas switch to Taylor.
constexpr double kCatalogTaylorWindow = 1e-4;
// The check transform loses ~eps/(x-1)^2 relative accuracy near 1, so its
// window is wider; see check_transform.
constexpr double kCheckTaylorWindow = 1e-3;

std::string format_number(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

double taylor_at_one(double x, double d2) {
  const double u = x - 1.0;
  return 1.0 + 0.5 * u + 0.5 * d2 * u * u;
}

FunctionDescriptor::Traits catalog_traits(std::optional<double> f0, std::optional<double> d2,
                                          FunctionDescriptor::Scalar derivative = {},
                                          std::optional<double> beta = std::nullopt) {
  FunctionDescriptor::Traits t;
  t.beta = beta;
  t.f_at_zero = f0;
  t.d2_at_one = d2;
  t.derivative = std::move(derivative);
  t.regularity = (f0 && *f0 > 0.0) ? Regularity::regular : Regularity::non_regular;
  t.provenance = Provenance::catalog;
  return t;
}

}  // namespace

std::string_view to_string(Regularity r) {
  switch (r) {
    case Regularity::regular: return "regular";
    case Regularity::non_regular: return "non-regular";
    case Regularity::unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::catalog: return "catalog";
    case Provenance::tilde_transform: return "tilde-transform";
    case Provenance::check_transform: return "check-transform";
    case Provenance::sharp: return "sharp";
    case Provenance::measure_built: return "measure-built";
    case Provenance::user: return "user";
  }
  return "user";
}

BetaParameter::BetaParameter(double beta) : beta_(beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw PreconditionError("BetaParameter", "beta must lie in the open interval (0,1), got " +
                                                 format_number(beta));
  }
}

FunctionDescriptor::FunctionDescriptor(std::string name, Scalar eval, Traits traits)
    : name_(std::move(name)), eval_(std::move(eval)), traits_(std::move(traits)) {}

double FunctionDescriptor::operator()(double x) const {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw PreconditionError(name_, "evaluation point must be positive and finite");
  }
  return eval_(x);
}

std::string FunctionDescriptor::label() const {
  if (traits_.beta && traits_.provenance == Provenance::catalog) {
    return name_ + "(" + format_number(*traits_.beta) + ")";
  }
  return name_;
}

double FunctionDescriptor::derivative(double x) const {
  if (!traits_.derivative) {
    throw PreconditionError(name_, "no closed-form derivative");
  }
  return traits_.derivative(x);
}

// --- catalog ----------------------------------------------------------------

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"SLD", "RLD", "WY", "WYD", "KuboMori", "Sqrt", "GBeta"};
  return names;
}

bool catalog_requires_beta(std::string_view name) { return name == "WYD" || name == "GBeta"; }

FunctionDescriptor catalog(std::string_view name, std::optional<BetaParameter> beta) {
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw PreconditionError("catalog", "unknown function name '" + std::string(name) + "'");
  }
  if (catalog_requires_beta(name) && !beta) {
    throw PreconditionError("catalog", std::string(name) + " requires beta in (0,1)");
  }
  if (!catalog_requires_beta(name) && beta) {
    throw PreconditionError("catalog", std::string(name) + " takes no beta parameter");
  }

  const std::string n(name);
  if (name == "SLD") {
    return {n, [](double x) { return 0.5 * (1.0 + x); },
            catalog_traits(0.5, 0.0, [](double) { return 0.5; })};
  }
  if (name == "RLD") {
    return {n, [](double x) { return 2.0 * x / (x + 1.0); },
            catalog_traits(0.0, -0.5, [](double x) { return 2.0 / ((x + 1.0) * (x + 1.0)); })};
  }
  if (name == "WY") {
    return {n,
            [](double x) {
              const double h = 0.5 * (1.0 + std::sqrt(x));
              return h * h;
            },
            catalog_traits(0.25, -0.125, [](double x) {
              const double r = std::sqrt(x);
              return (1.0 + r) / (4.0 * r);
            })};
  }
  if (name == "Sqrt") {
    return {n, [](double x) { return std::sqrt(x); },
            catalog_traits(0.0, -0.25, [](double x) { return 0.5 / std::sqrt(x); })};
  }
  if (name == "KuboMori") {
    constexpr double d2 = -1.0 / 6.0;
    return {n,
            [](double x) {
              if (std::abs(x - 1.0) < kCatalogTaylorWindow) return taylor_at_one(x, d2);
              return (x - 1.0) / std::log(x);
            },
            catalog_traits(0.0, d2)};
  }

  const double b = beta->value();
  const double bb = b * (1.0 - b);
  if (name == "WYD") {
    // f''(1) from expanding e^{-t/2} f(e^t) = 1 + t^2 (1 + 2 b(1-b)) / 24.
    const double d2 = (bb - 1.0) / 6.0;
    return {n,
            [b, bb, d2](double x) {
              if (std::abs(x - 1.0) < kCatalogTaylorWindow) return taylor_at_one(x, d2);
              const double lx = std::log(x);
              const double u = x - 1.0;
              return bb * u * u / (std::expm1(b * lx) * std::expm1((1.0 - b) * lx));
            },
            catalog_traits(bb, d2, {}, b)};
  }
  // GBeta
  return {n, [b](double x) { return 0.5 * (std::pow(x, b) + std::pow(x, 1.0 - b)); },
          catalog_traits(0.0, -bb,
                         [b](double x) {
                           return 0.5 * (b * std::pow(x, b - 1.0) + (1.0 - b) * std::pow(x, -b));
                         },
                         b)};
}

std::vector<FunctionDescriptor> catalog_instances() {
  std::vector<FunctionDescriptor> out;
  for (const auto& name : catalog_names()) {
    if (!catalog_requires_beta(name)) out.push_back(catalog(name));
  }
  for (const char* name : {"WYD", "GBeta"}) {
    for (int k = 1; k <= 9; ++k) out.push_back(catalog(name, BetaParameter(k / 10.0)));
  }
  return out;
}

std::vector<FunctionDescriptor> regular_catalog_instances() {
  std::vector<FunctionDescriptor> out;
  for (auto& f : catalog_instances()) {
    if (f.regularity() == Regularity::regular) out.push_back(std::move(f));
  }
  return out;
}

std::vector<FunctionDescriptor> nonregular_catalog_instances() {
  std::vector<FunctionDescriptor> out;
  for (auto& f : catalog_instances()) {
    if (f.regularity() == Regularity::non_regular) out.push_back(std::move(f));
  }
  return out;
}

// --- limits and derivatives -------------------------------------------------

namespace {

// Entry of the highest even epsilon column that ends at s[n-1]. Stops early
// when an even column has stalled to rounding level.
double wynn_estimate(const double* s, std::size_t n) {
  std::vector<double> prev(n + 1, 0.0);
  std::vector<double> cur(s, s + n);
  double best = s[n - 1];
  for (std::size_t k = 1; cur.size() >= 2; ++k) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double d = cur[i + 1] - cur[i];
      const double scale = std::max(std::abs(cur[i]), std::abs(cur[i + 1]));
      if (k % 2 == 1 && std::abs(d) <= 4.0 * std::numeric_limits<double>::epsilon() * scale) return best;
      if (d == 0.0) return best;
      next[i] = prev[i + 1] + 1.0 / d;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0) best = cur.back();
  }
  return best;
}

}  // namespace

LimitEstimate estimate_limit_at_zero(const FunctionDescriptor& f) {
  std::array<double, 7> s{};
  for (int k = 4; k <= 10; ++k) s[k - 4] = f(std::pow(10.0, -k));
  if (!std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); })) {
    throw NumericalError("limit_at_zero: evaluation failure near zero for " + f.label());
  }

  // Best Wynn-epsilon estimate from the first 3, 4, ..., 7 samples.
  // f(x) - f(0) ~ sum c_i x^{p_i} makes s_k a sum of geometric terms in k,
  // which each even epsilon column removes one at a time.
  std::array<double, 5> est{};
  for (std::size_t i = 0; i < est.size(); ++i) est[i] = wynn_estimate(s.data(), i + 3);
  const auto tail_begin = est.end() - 3;
  const auto [lo, hi] = std::minmax_element(tail_begin, est.end());
  LimitEstimate out;
  out.value = std::max(0.0, est.back());
  out.spread = *hi - *lo;
  out.converged = out.spread <= 1e-8;
  return out;
}

double limit_at_zero(const FunctionDescriptor& f) {
  if (f.f_at_zero()) return *f.f_at_zero();
  const auto est = estimate_limit_at_zero(f);
  if (est.spread > 1e-6) {
    throw NumericalError("limit_at_zero: non-convergent sequence for " + f.label() +
                         " (spread " + format_number(est.spread) + "); regularity unknown");
  }
  return est.value;
}

Regularity classify_limit(double value) {
  if (value > 1e-6) return Regularity::regular;
  if (value <= 1e-12) return Regularity::non_regular;
  return Regularity::unknown;
}

Regularity resolve_regularity(const FunctionDescriptor& f) {
  if (f.regularity() != Regularity::unknown) return f.regularity();
  try {
    return classify_limit(limit_at_zero(f));
  } catch (const NumericalError&) {
    return Regularity::unknown;
  }
}

double estimate_first_derivative_at_one(const FunctionDescriptor& f) {
  const auto central = [&f](double h) { return (f(1.0 + h) - f(1.0 - h)) / (2.0 * h); };
  constexpr double h = 1e-3;
  return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

double first_derivative_at_one(const FunctionDescriptor& f) {
  if (f.has_derivative()) return f.derivative(1.0);
  return estimate_first_derivative_at_one(f);
}

double estimate_second_derivative_at_one(const FunctionDescriptor& f) {
  const double f1 = f(1.0);
  const auto central = [&](double h) { return (f(1.0 + h) - 2.0 * f1 + f(1.0 - h)) / (h * h); };
  constexpr double h = 1e-4;
  const double d = (4.0 * central(h / 2.0) - central(h)) / 3.0;
  if (!std::isfinite(d)) {
    throw NumericalError("second_derivative_at_one: non-finite estimate for " + f.label());
  }
  return d;
}

double second_derivative_at_one(const FunctionDescriptor& f) {
  if (f.d2_at_one()) return *f.d2_at_one();
  return estimate_second_derivative_at_one(f);
}

double derivative_at(const FunctionDescriptor& f, double x) {
  if (f.has_derivative()) return f.derivative(x);
  const double h = 1e-5 * x;
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// --- transforms -------------------------------------------------------------

FunctionDescriptor tilde_transform(const FunctionDescriptor& f) {
  if (resolve_regularity(f) != Regularity::regular) {
    throw PreconditionError("tilde_transform", "tilde requires regular f (f(0) > 0), got " +
                                                   f.label());
  }
  const double f0 = limit_at_zero(f);
  FunctionDescriptor::Traits t;
  t.beta = f.beta();
  t.f_at_zero = 0.0;
  t.d2_at_one = -f0;  // g''(1) = -f(0)
  t.regularity = Regularity::non_regular;
  t.provenance = Provenance::tilde_transform;
  // No cancellation here: the (x-1)^2 factor is multiplied, not divided.
  return {"tilde(" + f.label() + ")",
          [f, f0](double x) {
            if (x == 1.0) return 1.0;
            const double u = x - 1.0;
            return 0.5 * ((x + 1.0) - u * u * f0 / f(x));
          },
          std::move(t)};
}

FunctionDescriptor check_transform(const FunctionDescriptor& g) {
  if (resolve_regularity(g) != Regularity::non_regular) {
    throw PreconditionError("check_transform", "check requires non-regular g (g(0) = 0), got " +
                                                   g.label());
  }
  const double g2 = second_derivative_at_one(g);
  if (!(g2 < 0.0)) {
    throw PreconditionError("check_transform", "check requires g''(1) < 0, got " +
                                                   format_number(g2));
  }
  const auto direct = [g, g2](double x) {
    const double u = x - 1.0;
    return g2 * u * u / (2.0 * g(x) - (x + 1.0));
  };
  // Near 1 the denominator cancels to ~g''(1)(x-1)^2, so evaluate a second
  // order Taylor polynomial whose curvature comes from a wide-step central
  // difference of the direct formula.
  constexpr double h = 1e-2;
  const double f2 = (direct(1.0 + h) - 2.0 + direct(1.0 - h)) / (h * h);

  FunctionDescriptor::Traits t;
  t.beta = g.beta();
  t.f_at_zero = -g2;  // -f(0) = g''(1)
  t.regularity = Regularity::regular;
  t.provenance = Provenance::check_transform;
  return {"check(" + g.label() + ")",
          [direct, f2](double x) {
            if (std::abs(x - 1.0) < kCheckTaylorWindow) return taylor_at_one(x, f2);
            return direct(x);
          },
          std::move(t)};
}

FunctionDescriptor sharp_involution(const FunctionDescriptor& g) {
  FunctionDescriptor::Traits t;
  t.beta = g.beta();
  t.provenance = Provenance::sharp;
  // (t/g)''(1) = -g''(1) - 1/2 given g(1) = 1, g'(1) = 1/2.
  if (g.d2_at_one()) t.d2_at_one = -*g.d2_at_one() - 0.5;
  if (resolve_regularity(g) == Regularity::regular) {
    t.f_at_zero = 0.0;
    t.regularity = Regularity::non_regular;
  }
  if (g.has_derivative()) {
    t.derivative = [g](double x) {
      const double gx = g(x);
      return (gx - x * g.derivative(x)) / (gx * gx);
    };
  }
  return {"sharp(" + g.label() + ")", [g](double x) { return x / g(x); }, std::move(t)};
}

double scalar_mean(const FunctionDescriptor& f, double x, double y) {
  if (std::abs(x - y) <= 1e-12 * std::max(x, y)) return 0.5 * (x + y);
  return y * f(x / y);
}

}  // namespace omf
