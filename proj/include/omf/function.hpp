#pragma once

// Symmetric normalized operator monotone candidates on (0, inf).
//
// A FunctionDescriptor bundles a scalar evaluator with whatever closed-form
// metadata is known about it: the limit at zero, the second derivative at one,
// an analytic first derivative, and the regular / non-regular classification.
// Closed forms always take precedence over the numerical fallbacks below.
//
// The transforms between regular and non-regular functions:
//
//   tilde  (G):  g(x) = 1/2 [ (x+1) - (x-1)^2 f(0) / f(x) ]         f regular
//   check  (H):  f(x) = g''(1) (x-1)^2 / (2 g(x) - (x+1))            g non-regular
//   sharp:       g#(t) = t / g(t)                                    involution
//
// H and G are mutually inverse, and f(0) = -g''(1) whenever g = G(f).

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace omf {

enum class Regularity { regular, non_regular, unknown };
enum class Provenance { catalog, tilde_transform, check_transform, sharp, measure_built, user };

std::string_view to_string(Regularity r);
std::string_view to_string(Provenance p);

// Dyson exponent, strictly inside (0, 1).
class BetaParameter {
 public:
  explicit BetaParameter(double beta);
  double value() const noexcept { return beta_; }

 private:
  double beta_;
};

class FunctionDescriptor {
 public:
  using Scalar = std::function<double(double)>;

  struct Traits {
    std::optional<double> beta;
    std::optional<double> f_at_zero;
    std::optional<double> d2_at_one;
    Scalar derivative;  // empty when no closed form is available
    Regularity regularity = Regularity::unknown;
    Provenance provenance = Provenance::user;
  };

  FunctionDescriptor(std::string name, Scalar eval, Traits traits);

  // Evaluates f(x); x must be positive and finite.
  double operator()(double x) const;

  const std::string& name() const noexcept { return name_; }
  // Name with the beta argument appended, e.g. "WYD(0.3)".
  std::string label() const;

  std::optional<double> beta() const noexcept { return traits_.beta; }
  std::optional<double> f_at_zero() const noexcept { return traits_.f_at_zero; }
  std::optional<double> d2_at_one() const noexcept { return traits_.d2_at_one; }
  Regularity regularity() const noexcept { return traits_.regularity; }
  Provenance provenance() const noexcept { return traits_.provenance; }

  bool has_derivative() const noexcept { return static_cast<bool>(traits_.derivative); }
  double derivative(double x) const;

  const Scalar& evaluator() const noexcept { return eval_; }

 private:
  std::string name_;
  Scalar eval_;
  Traits traits_;
};

// --- catalog ----------------------------------------------------------------

// Names: SLD, RLD, WY, WYD, KuboMori, Sqrt, GBeta. WYD and GBeta require beta;
// the others reject it.
FunctionDescriptor catalog(std::string_view name, std::optional<BetaParameter> beta = std::nullopt);

const std::vector<std::string>& catalog_names();
bool catalog_requires_beta(std::string_view name);

// The fixed catalog instances used by the certification suites: the five
// beta-free entries plus WYD and GBeta at beta = 0.1, 0.2, ..., 0.9.
std::vector<FunctionDescriptor> catalog_instances();
std::vector<FunctionDescriptor> regular_catalog_instances();
std::vector<FunctionDescriptor> nonregular_catalog_instances();

// --- limits and derivatives -------------------------------------------------

struct LimitEstimate {
  double value = 0.0;
  double spread = 0.0;  // max - min of the last three extrapolants
  bool converged = false;
};

// Wynn-epsilon extrapolated limit of f(10^-k), k = 4..10. Always numeric.
LimitEstimate estimate_limit_at_zero(const FunctionDescriptor& f);

// Closed form if present, otherwise the extrapolated estimate. Throws
// NumericalError when the extrapolants spread by more than 1e-6.
double limit_at_zero(const FunctionDescriptor& f);

// regular iff value > 1e-6, non-regular iff value <= 1e-12, else unknown.
Regularity classify_limit(double value);

// The descriptor's own tag, or the classification of its estimated limit.
Regularity resolve_regularity(const FunctionDescriptor& f);

double estimate_first_derivative_at_one(const FunctionDescriptor& f);
double first_derivative_at_one(const FunctionDescriptor& f);

// Central second difference at h = 1e-4 with one Richardson step at h/2.
double estimate_second_derivative_at_one(const FunctionDescriptor& f);
double second_derivative_at_one(const FunctionDescriptor& f);

// Derivative at x: closed form if available, else a central difference with
// relative step h = 1e-5 x.
double derivative_at(const FunctionDescriptor& f, double x);

// --- transforms -------------------------------------------------------------

FunctionDescriptor tilde_transform(const FunctionDescriptor& f);
FunctionDescriptor check_transform(const FunctionDescriptor& g);
FunctionDescriptor sharp_involution(const FunctionDescriptor& g);

// Scalar mean m_f(x, y) = y f(x/y); returns the common value when x and y
// agree to 1e-12 relative.
double scalar_mean(const FunctionDescriptor& f, double x, double y);

}  // namespace omf
