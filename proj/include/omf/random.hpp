#pragma once

// Seeded generators for states, observables and test matrices. Every
// generator is a pure function of its arguments; per-trial streams are derived
// from a master seed with derive_seed so trials can run in any order.

#include <cstdint>
#include <random>

#include "omf/hermitian.hpp"

namespace omf {

// splitmix64 finalizer over (master, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(derive_seed(seed, 0x6f6d66ULL)) {}

  double normal() { return normal_(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double log_uniform(double lo, double hi);
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

// Ginibre state G G^* / Tr(G G^*), mixed towards I/n just enough that its
// smallest eigenvalue is at least floor. Requires n >= 2 and floor < 1/n.
DensityMatrix random_density(Index n, std::uint64_t seed,
                             double floor = DensityMatrix::kDefaultEigenFloor);

// (G + G^*)/2 with standard normal entries; trace removed when traceless.
HermitianMatrix random_observable(Index n, std::uint64_t seed, bool traceless = false);

// Eigenvectors of a random Hermitian matrix.
CMatrix random_unitary(Index n, std::uint64_t seed);

// U diag(e) U^* with eigenvalues log-uniform in [lo, hi].
HermitianMatrix random_positive(Index n, std::uint64_t seed, double lo = 0.1, double hi = 10.0);

// U diag(s) V^* with singular values log-uniform in [smin, smax].
CMatrix random_conditioned(Index n, std::uint64_t seed, double smin = 0.1, double smax = 10.0);

}  // namespace omf
