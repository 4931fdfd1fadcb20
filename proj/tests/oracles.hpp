#pragma once

// Closed forms written out independently of the library, used as test oracles.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline double sld(double x) { return (1.0 + x) / 2.0; }
inline double rld(double x) { return 2.0 * x / (x + 1.0); }
inline double wy(double x) {
  const double s = (1.0 + std::sqrt(x)) / 2.0;
  return s * s;
}
inline double sqrt_fn(double x) { return std::sqrt(x); }
inline double kubo_mori(double x) { return (x - 1.0) / std::log(x); }
inline double gbeta(double b, double x) { return (std::pow(x, b) + std::pow(x, 1.0 - b)) / 2.0; }
// Long double keeps the cancellation near x = 1 harmless for x at least 1e-3 away.
inline double wyd(double b, double x) {
  const long double lx = x, lb = b;
  const long double num = lb * (1 - lb) * (lx - 1) * (lx - 1);
  const long double den = (std::pow(lx, lb) - 1) * (std::pow(lx, 1 - lb) - 1);
  return static_cast<double>(num / den);
}

// 200 log-spaced points in [1e-2, 1e2].
inline std::vector<double> log_grid(double lo = 1e-2, double hi = 1e2, int n = 200) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return g;
}

template <class F, class G>
double sup_gap(F f, G g, const std::vector<double>& xs) {
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, std::abs(f(x) - g(x)));
  return worst;
}

using CM = Eigen::MatrixXcd;

// Functional calculus through Eigen's own eigensolver, independent of the
// library's Jacobi routine.
template <class F>
CM apply(const CM& a, F f) {
  Eigen::SelfAdjointEigenSolver<CM> es(a);
  Eigen::VectorXd d = es.eigenvalues().unaryExpr([&](double v) { return f(v); });
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

inline CM pauli(char c) {
  CM m(2, 2);
  using C = std::complex<double>;
  if (c == 'x') m << 0, 1, 1, 0;
  if (c == 'y') m << 0, C(0, -1), C(0, 1), 0;
  if (c == 'z') m << 1, 0, 0, -1;
  return m;
}

}  // namespace oracle
