#pragma once

// Atomic representing measures on [0, 1] and the integral formulas built on
// the kernel
//
//   c_lambda(x, y) = (1+lambda)/2 * ( 1/(x + lambda y) + 1/(lambda x + y) ).
//
// For f in the class with canonical measure mu:
//
//   1/f(t)   = sum_k w_k c_{lambda_k}(t, 1)
//   c_f(x,y) = sum_k w_k c_{lambda_k}(x, y)
//   d_f(x,y) = sum_k w_k x y c_{lambda_k}(x, y) (1+lambda_k)^2 / lambda_k

#include <span>
#include <vector>

#include "omf/function.hpp"

namespace omf {

struct Atom {
  double lambda;
  double weight;
};

// Probability measure with finitely many atoms. Weights within 1e-9 of a unit
// total are renormalized; anything further off is rejected.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(std::vector<Atom> atoms);

  static AtomicMeasure dirac(double lambda);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  // Total weight carried by atoms with lambda < 1e-12.
  double weight_at_zero() const noexcept;
  double smallest_lambda() const noexcept;

 private:
  std::vector<Atom> atoms_;
};

double c_lambda(double lambda, double x, double y);

// f(t) = 1 / sum_k w_k c_{lambda_k}(t, 1).
FunctionDescriptor f_from_measure(const AtomicMeasure& mu);

// g(t) = t sum_k w_k c_{lambda_k}(t, 1), i.e. g(t)/t is represented by mu.
FunctionDescriptor g_from_measure(const AtomicMeasure& mu);

// c_f(x, y) = 1 / m_f(x, y) with m_f(x, y) = y f(x/y).
double morozova_chentsov(const FunctionDescriptor& f, double x, double y);

// d_f(x, y) = (x+y)/f(0) - (x-y)^2 c_f(x, y); f must be regular.
double d_function(const FunctionDescriptor& f, double x, double y);

// Integral form of d_f against nu; nu may not have an atom at zero.
double d_from_measure(const AtomicMeasure& nu, double x, double y);

struct RegularConstruction {
  double C = 0.0;
  AtomicMeasure nu;
  FunctionDescriptor f;  // regular, f(0) = C
  FunctionDescriptor g;  // the non-regular target, tilde(f) = g
  bool ill_conditioned = false;  // some atom has lambda < 1e-6
};

// Given the measure representing h(t) = g(t)/t of a non-regular g, builds the
// regular f with tilde(f) = g:
//
//   C      = sum_k w_k 2 lambda_k / (1+lambda_k)^2
//   nu_k   = w_k 2 lambda_k / ((1+lambda_k)^2 C)
//   f      = f_from_measure(nu)
//
// An atom at zero (weight > 1e-12 at lambda < 1e-12) makes g regular and the
// construction impossible.
RegularConstruction construct_regular_from_nonregular(const AtomicMeasure& mu_g);

}  // namespace omf
