#include "omf/random.hpp"

#include <cmath>

#include "omf/error.hpp"

namespace omf {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

DensityMatrix random_density(Index n, std::uint64_t seed, double floor) {
  if (n < 2) throw PreconditionError("random_density", "dimension must be at least 2");
  if (!(floor > 0.0 && floor < 1.0 / static_cast<double>(n))) {
    throw PreconditionError("random_density", "floor must lie in (0, 1/n)");
  }
  Rng rng(seed);
  CMatrix g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) g(j, k) = rng.complex_normal();
  }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();

  const double lmin = hermitian_eig(HermitianMatrix(rho)).values(0);
  // (1 - eps) lmin + eps / n >= floor; the small relative margin absorbs
  // rounding in the mixture and in the eigensolver.
  const double target = floor * (1.0 + 1e-9);
  const double uniform = 1.0 / static_cast<double>(n);
  if (lmin < target) {
    const double eps = (target - lmin) / (uniform - lmin);
    rho = (1.0 - eps) * rho + eps * uniform * CMatrix::Identity(n, n);
  }
  HermitianMatrix h(rho);
  const double tr = h.trace();
  return DensityMatrix(h * (1.0 / tr), floor);
}

HermitianMatrix random_observable(Index n, std::uint64_t seed, bool traceless) {
  if (n < 2) throw PreconditionError("random_observable", "dimension must be at least 2");
  Rng rng(seed);
  CMatrix g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) g(j, k) = rng.complex_normal();
  }
  HermitianMatrix h(g);
  if (!traceless) return h;
  CMatrix m = h.matrix();
  m.diagonal().array() -= h.trace() / static_cast<double>(n);
  return HermitianMatrix(m);
}

CMatrix random_unitary(Index n, std::uint64_t seed) {
  return hermitian_eig(random_observable(n, seed)).vectors;
}

HermitianMatrix random_positive(Index n, std::uint64_t seed, double lo, double hi) {
  Rng rng(seed);
  Eigen::VectorXcd d(n);
  for (Index i = 0; i < n; ++i) d(i) = rng.log_uniform(lo, hi);
  const CMatrix u = random_unitary(n, derive_seed(seed, 1));
  return HermitianMatrix(u * d.asDiagonal() * u.adjoint());
}

CMatrix random_conditioned(Index n, std::uint64_t seed, double smin, double smax) {
  Rng rng(seed);
  Eigen::VectorXcd s(n);
  for (Index i = 0; i < n; ++i) s(i) = rng.log_uniform(smin, smax);
  const CMatrix u = random_unitary(n, derive_seed(seed, 1));
  const CMatrix v = random_unitary(n, derive_seed(seed, 2));
  return u * s.asDiagonal() * v.adjoint();
}

}  // namespace omf
