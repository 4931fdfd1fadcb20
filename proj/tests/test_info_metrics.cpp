#include <doctest.h>

#include <cmath>
#include <random>

#include "omf/error.hpp"
#include "omf/info_metrics.hpp"
#include "omf/random.hpp"
#include "oracles.hpp"

using namespace omf;

namespace {

const std::vector<double> kBetas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

DensityMatrix worked_state() { return DensityMatrix::diagonal({0.75, 0.25}); }

// SLD metric through an independent eigensolver: entries 2/(l_j + l_k).
double sld_metric_oracle(const CMatrix& rho, const CMatrix& a, const CMatrix& b) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  const CMatrix u = es.eigenvectors();
  const auto& l = es.eigenvalues();
  CMatrix bh = u.adjoint() * b * u;
  for (Index j = 0; j < bh.rows(); ++j)
    for (Index k = 0; k < bh.cols(); ++k) bh(j, k) *= 2.0 / (l(j) + l(k));
  return (a * (u * bh * u.adjoint())).trace().real();
}

}  // namespace

TEST_CASE("metric normalization for commuting arguments") {
  CHECK(monotone_metric(catalog("SLD"), worked_state(), pauli('z'), pauli('z')).real() ==
        doctest::Approx(16.0 / 3.0).epsilon(1e-12));
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.05, 1.0), v(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 4;
    std::vector<double> p(static_cast<std::size_t>(n)), d(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& x : p) total += (x = u(gen));
    for (auto& x : p) x /= total;
    for (auto& x : d) x = v(gen);
    const auto rho = DensityMatrix::diagonal(p, 1e-6);
    const auto a = HermitianMatrix::diagonal(d);
    double expect = 0.0;
    for (int i = 0; i < n; ++i) expect += d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)] / p[static_cast<std::size_t>(i)];
    for (const auto& f : catalog_instances()) {
      CAPTURE(f.label());
      CHECK(std::abs(monotone_metric(f, rho, a, a).real() - expect) <= 1e-10 * std::max(1.0, expect));
    }
  }
}

TEST_CASE("SLD and RLD metrics match their closed forms") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Index n = 2 + static_cast<Index>(s % 5);
    const auto rho = random_density(n, derive_seed(7, s));
    const auto a = random_observable(n, derive_seed(8, s));
    const auto b = random_observable(n, derive_seed(9, s));
    const double sld = monotone_metric(catalog("SLD"), rho, a, b).real();
    CHECK(sld == doctest::Approx(sld_metric_oracle(rho.matrix(), a.matrix(), b.matrix())).epsilon(1e-10));

    const CMatrix ri = rho.matrix().inverse();
    const Complex rld = 0.5 * (a.matrix() * ri * b.matrix()).trace() + 0.5 * (a.matrix() * b.matrix() * ri).trace();
    CHECK(std::abs(monotone_metric(catalog("RLD"), rho, a, b) - rld) <= 1e-9 * std::max(1.0, std::abs(rld)));
  }
}

TEST_CASE("metric is Hermitian-symmetric and positive") {
  const auto rho = random_density(4, 21);
  const auto a = random_observable(4, 22), b = random_observable(4, 23);
  for (const auto& f : catalog_instances()) {
    const Complex ab = monotone_metric(f, rho, a, b), ba = monotone_metric(f, rho, b, a);
    CHECK(std::abs(ab - std::conj(ba)) <= 1e-10 * std::max(1.0, std::abs(ab)));
    CHECK(monotone_metric(f, rho, a, a).real() > 0.0);
  }
}

TEST_CASE("SLD covariance is the symmetrized correlation") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Index n = 2 + static_cast<Index>(s % 5);
    const auto rho = random_density(n, derive_seed(10, s));
    const auto a = random_observable(n, derive_seed(11, s));
    const auto b = random_observable(n, derive_seed(12, s));
    const CMatrix r = rho.matrix(), id = CMatrix::Identity(n, n);
    const CMatrix a0 = a.matrix() - (r * a.matrix()).trace() * id;
    const CMatrix b0 = b.matrix() - (r * b.matrix()).trace() * id;
    const double expect = (r * a0 * b0).trace().real();
    CHECK(g_covariance(catalog("SLD"), rho, a, b) == doctest::Approx(expect).epsilon(1e-11));
  }
}

TEST_CASE("metric / covariance identity") {
  const auto sides = crucial_identity_sides(catalog("SLD"), worked_state(), pauli('x'), pauli('x'));
  CHECK(std::abs(sides.lhs - 0.25) <= 1e-12);
  CHECK(std::abs(sides.rhs - 0.25) <= 1e-12);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Index n = 2 + static_cast<Index>(s % 5);
    const auto rho = random_density(n, derive_seed(13, s));
    const auto a = random_observable(n, derive_seed(14, s));
    const auto b = random_observable(n, derive_seed(15, s));
    for (const auto& f : regular_catalog_instances()) {
      const auto sd = crucial_identity_sides(f, rho, a, b);
      CHECK(sd.residual() <= 1e-9 * std::max(1.0, std::abs(sd.lhs)));
    }
  }
  CHECK_THROWS_AS(crucial_identity_sides(catalog("RLD"), worked_state(), pauli('x'), pauli('x')),
                  PreconditionError);
}

TEST_CASE("skew information closed forms") {
  for (double p : {0.6, 0.75, 0.9}) {
    const auto rho = DensityMatrix::diagonal({p, 1.0 - p});
    const double expect = std::pow(std::sqrt(p) - std::sqrt(1.0 - p), 2);
    CHECK(std::abs(skew_information(rho, pauli('x')) - expect) <= 1e-12);
    CHECK(std::abs(wyd_information(BetaParameter(0.5), rho, pauli('x')) - expect) <= 1e-12);
  }
  CHECK(skew_information(worked_state(), pauli('x')) == doctest::Approx(0.1339745962).epsilon(1e-9));
  // Commuting observables carry no skew information.
  CHECK(std::abs(skew_information(worked_state(), pauli('z'))) <= 1e-15);
}

TEST_CASE("WYD information agrees with the covariance route") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Index n = 2 + static_cast<Index>(s % 5);
    const auto rho = random_density(n, derive_seed(16, s));
    const auto a = random_observable(n, derive_seed(17, s));
    for (double b : kBetas) {
      const BetaParameter beta(b);
      const double direct = wyd_information(beta, rho, a);
      const double via_cov =
          g_covariance(catalog("SLD"), rho, a, a) - g_covariance(catalog("GBeta", beta), rho, a, a);
      CHECK(std::abs(direct - via_cov) <= 1e-9 * std::max(1.0, std::abs(direct)));
      const double via_metric = crucial_identity_sides(catalog("WYD", beta), rho, a, a).lhs;
      CHECK(std::abs(direct - via_metric) <= 1e-9 * std::max(1.0, std::abs(direct)));
    }
    CHECK(std::abs(wyd_information(BetaParameter(0.5), rho, a) - skew_information(rho, a)) <= 1e-12);
  }
}

TEST_CASE("determinants against an independent route") {
  std::mt19937_64 gen(77);
  std::normal_distribution<double> nd;
  for (int n = 1; n <= 6; ++n) {
    RMatrix m(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m(j, k) = nd(gen);
    const RMatrix sym = m + m.transpose();
    const RMatrix anti = m - m.transpose();
    CHECK(det_symmetric(sym) == doctest::Approx(sym.determinant()).epsilon(1e-10));
    const double ad = anti.determinant();
    CHECK(std::abs(det_antisymmetric(anti) - ad) <= 1e-10 * std::max(1.0, std::abs(ad)));
    if (n % 2 == 1) CHECK(det_antisymmetric(anti) == 0.0);
  }
}

TEST_CASE("uncertainty worked instance") {
  const ObservableFamily fam({pauli('x'), pauli('y')});
  const auto st = uncertainty_check(worked_state(), fam, UncertaintyMode::standard);
  CHECK(std::abs(st.lhs_det - 1.0) <= 1e-12);
  CHECK(std::abs(st.rhs_det - 0.25) <= 1e-12);
  CHECK(st.satisfied);
  CHECK(st.count == 2);
  CHECK(st.dim == 2);
  const auto mt = uncertainty_check(worked_state(), fam, UncertaintyMode::metric, catalog("SLD"));
  CHECK(std::abs(mt.rhs_det - 0.0625) <= 1e-12);
  CHECK(mt.function == std::optional<std::string>("SLD"));
  CHECK_THROWS_AS(uncertainty_check(worked_state(), fam, UncertaintyMode::metric), PreconditionError);
  CHECK_THROWS_AS(uncertainty_check(worked_state(), fam, UncertaintyMode::metric, catalog("RLD")),
                  PreconditionError);
}

TEST_CASE("uncertainty margins over random families") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const Index n = 2 + static_cast<Index>(s % 3);
    const std::size_t count = 2 + (s / 3) % 2;
    const auto rho = random_density(n, derive_seed(30, s));
    std::vector<HermitianMatrix> members;
    for (std::size_t j = 0; j < count; ++j) members.push_back(random_observable(n, derive_seed(31 + j, s)));
    const ObservableFamily fam(members);
    const auto st = uncertainty_check(rho, fam, UncertaintyMode::standard);
    CHECK(st.margin >= -1e-9 * std::max(1.0, std::abs(st.lhs_det)));
    for (const auto& f : regular_catalog_instances()) {
      const auto mt = uncertainty_check(rho, fam, UncertaintyMode::metric, f);
      CHECK(mt.margin >= -1e-9 * std::max(1.0, std::abs(mt.lhs_det)));
    }
  }
}

TEST_CASE("observable family validation") {
  CHECK_THROWS_AS(ObservableFamily({}), PreconditionError);
  CHECK_THROWS_AS(ObservableFamily({pauli('x'), HermitianMatrix::identity(3)}), PreconditionError);
  const ObservableFamily fam({pauli('x'), pauli('z')});
  CHECK(fam.labels == std::vector<std::string>{"A1", "A2"});
}
