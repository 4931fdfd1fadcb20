#include "omf/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "omf/error.hpp"

namespace omf {

namespace {

constexpr double kZeroLambda = 1e-12;
constexpr double kNegligibleWeight = 1e-12;

std::string describe(const AtomicMeasure& mu) {
  std::ostringstream os;
  os.precision(6);
  os << "measure(";
  bool first = true;
  for (const auto& a : mu.atoms()) {
    os << (first ? "" : ",") << "[" << a.lambda << "," << a.weight << "]";
    first = false;
  }
  os << ")";
  return os.str();
}

// sum_k w_k c_{lambda_k}(t, 1) and its first two t-derivatives.
double kernel_sum(std::span<const Atom> atoms, double t) {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight * c_lambda(a.lambda, t, 1.0);
  return s;
}

double kernel_sum_derivative(std::span<const Atom> atoms, double t) {
  double s = 0.0;
  for (const auto& a : atoms) {
    const double p = t + a.lambda;
    const double q = a.lambda * t + 1.0;
    s += a.weight * 0.5 * (1.0 + a.lambda) * (-1.0 / (p * p) - a.lambda / (q * q));
  }
  return s;
}

// S''(1) = sum_k w_k (1 + lambda_k^2) / (1 + lambda_k)^2.
double kernel_curvature_at_one(std::span<const Atom> atoms) {
  double s = 0.0;
  for (const auto& a : atoms) {
    const double p = 1.0 + a.lambda;
    s += a.weight * (1.0 + a.lambda * a.lambda) / (p * p);
  }
  return s;
}

}  // namespace

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw PreconditionError("AtomicMeasure", "measure needs at least one atom");
  for (const auto& a : atoms_) {
    if (!(a.lambda >= 0.0 && a.lambda <= 1.0)) {
      throw PreconditionError("AtomicMeasure", "atom location lambda must lie in [0,1]");
    }
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw PreconditionError("AtomicMeasure", "atom weights must be positive");
    }
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
      if (atoms_[i].lambda == atoms_[j].lambda) {
        throw PreconditionError("AtomicMeasure", "atom locations must be pairwise distinct");
      }
    }
  }
  const double total = std::accumulate(atoms_.begin(), atoms_.end(), 0.0,
                                       [](double s, const Atom& a) { return s + a.weight; });
  if (std::abs(total - 1.0) > 1e-9) {
    throw PreconditionError("AtomicMeasure", "weights must sum to 1 (probability measure)");
  }
  for (auto& a : atoms_) a.weight /= total;
}

AtomicMeasure AtomicMeasure::dirac(double lambda) { return AtomicMeasure({{lambda, 1.0}}); }

double AtomicMeasure::weight_at_zero() const noexcept {
  double w = 0.0;
  for (const auto& a : atoms_) {
    if (a.lambda < kZeroLambda) w += a.weight;
  }
  return w;
}

double AtomicMeasure::smallest_lambda() const noexcept {
  return std::min_element(atoms_.begin(), atoms_.end(),
                          [](const Atom& a, const Atom& b) { return a.lambda < b.lambda; })
      ->lambda;
}

double c_lambda(double lambda, double x, double y) {
  return 0.5 * (1.0 + lambda) * (1.0 / (x + lambda * y) + 1.0 / (lambda * x + y));
}

FunctionDescriptor f_from_measure(const AtomicMeasure& mu) {
  std::vector<Atom> atoms(mu.atoms().begin(), mu.atoms().end());

  // 1/f(0) = sum_k w_k (1+lambda_k)/2 (1/lambda_k + 1); an atom at zero
  // sends it to infinity.
  FunctionDescriptor::Traits t;
  if (mu.weight_at_zero() > kNegligibleWeight) {
    t.f_at_zero = 0.0;
    t.regularity = Regularity::non_regular;
  } else {
    double inv = 0.0;
    for (const auto& a : atoms) {
      if (a.lambda < kZeroLambda) continue;
      inv += a.weight * 0.5 * (1.0 + a.lambda) * (1.0 / a.lambda + 1.0);
    }
    t.f_at_zero = 1.0 / inv;
    t.regularity = Regularity::regular;
  }
  // f = 1/S with S(1) = 1, S'(1) = -1/2, so f''(1) = 1/2 - S''(1).
  t.d2_at_one = 0.5 - kernel_curvature_at_one(atoms);
  t.derivative = [atoms](double x) {
    const double s = kernel_sum(atoms, x);
    return -kernel_sum_derivative(atoms, x) / (s * s);
  };
  t.provenance = Provenance::measure_built;
  return {describe(mu), [atoms](double x) { return 1.0 / kernel_sum(atoms, x); }, std::move(t)};
}

FunctionDescriptor g_from_measure(const AtomicMeasure& mu) {
  std::vector<Atom> atoms(mu.atoms().begin(), mu.atoms().end());
  FunctionDescriptor::Traits t;
  // t c_0(t,1) -> 1/2 as t -> 0; every other atom contributes nothing.
  t.f_at_zero = 0.5 * mu.weight_at_zero();
  t.regularity = *t.f_at_zero > kNegligibleWeight ? Regularity::regular : Regularity::non_regular;
  // g = t S(t): g''(1) = 2 S'(1) + S''(1) = -1 + S''(1).
  t.d2_at_one = -1.0 + kernel_curvature_at_one(atoms);
  t.derivative = [atoms](double x) {
    return kernel_sum(atoms, x) + x * kernel_sum_derivative(atoms, x);
  };
  t.provenance = Provenance::measure_built;
  return {"t*" + describe(mu), [atoms](double x) { return x * kernel_sum(atoms, x); },
          std::move(t)};
}

double morozova_chentsov(const FunctionDescriptor& f, double x, double y) {
  if (!(x > 0.0 && y > 0.0)) {
    throw PreconditionError("morozova_chentsov", "arguments must be positive");
  }
  return 1.0 / scalar_mean(f, x, y);
}

double d_function(const FunctionDescriptor& f, double x, double y) {
  if (resolve_regularity(f) != Regularity::regular) {
    throw PreconditionError("d_function", "d_f requires regular f (f(0) > 0), got " + f.label());
  }
  const double f0 = limit_at_zero(f);
  const double diff = x - y;
  return (x + y) / f0 - diff * diff * morozova_chentsov(f, x, y);
}

double d_from_measure(const AtomicMeasure& nu, double x, double y) {
  if (nu.smallest_lambda() < kZeroLambda) {
    throw PreconditionError("d_from_measure",
                            "measure has an atom at zero; the 1/lambda integrand diverges");
  }
  double s = 0.0;
  for (const auto& a : nu.atoms()) {
    const double p = 1.0 + a.lambda;
    s += a.weight * x * y * c_lambda(a.lambda, x, y) * p * p / a.lambda;
  }
  return s;
}

RegularConstruction construct_regular_from_nonregular(const AtomicMeasure& mu_g) {
  if (mu_g.weight_at_zero() > kNegligibleWeight) {
    throw PreconditionError(
        "construct_regular_from_nonregular",
        "atom at zero: g(t) >= mu(0)(t+1)/2 would make g regular, contradicting the choice of g");
  }

  double C = 0.0;
  for (const auto& a : mu_g.atoms()) {
    const double p = 1.0 + a.lambda;
    C += a.weight * 2.0 * a.lambda / (p * p);
  }

  std::vector<Atom> nu_atoms;
  for (const auto& a : mu_g.atoms()) {
    if (a.lambda < kZeroLambda) continue;  // negligible weight, carries no mass into nu
    const double p = 1.0 + a.lambda;
    nu_atoms.push_back({a.lambda, a.weight * 2.0 * a.lambda / (p * p * C)});
  }
  AtomicMeasure nu(std::move(nu_atoms));

  const FunctionDescriptor built = f_from_measure(nu);
  FunctionDescriptor::Traits t;
  t.f_at_zero = C;
  t.d2_at_one = built.d2_at_one();
  t.derivative = [built](double x) { return built.derivative(x); };
  t.regularity = Regularity::regular;
  t.provenance = Provenance::measure_built;
  FunctionDescriptor f(built.name(), built.evaluator(), std::move(t));

  const bool ill = mu_g.smallest_lambda() < 1e-6;
  return {C, std::move(nu), std::move(f), g_from_measure(mu_g), ill};
}

}  // namespace omf
