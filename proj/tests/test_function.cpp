#include <doctest.h>

#include <cmath>
#include <limits>

#include "omf/error.hpp"
#include "omf/function.hpp"
#include "oracles.hpp"

using namespace omf;

namespace {

const std::vector<double> kBetas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

}  // namespace

TEST_CASE("catalog values match their closed forms") {
  const auto grid = oracle::log_grid();
  CHECK(oracle::sup_gap(catalog("SLD"), oracle::sld, grid) <= 1e-14);
  CHECK(oracle::sup_gap(catalog("RLD"), oracle::rld, grid) <= 1e-14);
  CHECK(oracle::sup_gap(catalog("WY"), oracle::wy, grid) <= 1e-13);
  CHECK(oracle::sup_gap(catalog("Sqrt"), oracle::sqrt_fn, grid) <= 1e-14);
  for (double b : kBetas) {
    CAPTURE(b);
    const auto gb = catalog("GBeta", BetaParameter(b));
    CHECK(oracle::sup_gap(gb, [b](double x) { return oracle::gbeta(b, x); }, grid) <= 1e-13);
  }

  CHECK(catalog("WY")(4.0) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(catalog("RLD")(3.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(catalog("KuboMori")(std::exp(1.0)) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("WYD and KuboMori away from the removable singularity") {
  for (double x : oracle::log_grid()) {
    if (std::abs(x - 1.0) < 1e-3) continue;
    CHECK(catalog("KuboMori")(x) == doctest::Approx(oracle::kubo_mori(x)).epsilon(1e-12));
    for (double b : kBetas) {
      CHECK(catalog("WYD", BetaParameter(b))(x) == doctest::Approx(oracle::wyd(b, x)).epsilon(1e-11));
    }
  }
}

TEST_CASE("WYD at beta = 1/2 coincides with WY") {
  const auto w = catalog("WYD", BetaParameter(0.5));
  CHECK(oracle::sup_gap(w, oracle::wy, oracle::log_grid()) <= 1e-12);
}

TEST_CASE("Taylor window near x = 1 joins the direct formula") {
  for (const auto& f : catalog_instances()) {
    CAPTURE(f.label());
    CHECK(f(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    // Just inside and just outside the window agree to the size of the
    // neglected cubic term.
    for (double side : {-1.0, 1.0}) {
      const double inside = f(1.0 + side * 0.999e-4);
      const double outside = f(1.0 + side * 1.001e-4);
      CHECK(std::abs(outside - inside) <= 1.5e-7);
    }
  }
}

TEST_CASE("normalization and symmetry hold for every catalog instance") {
  for (const auto& f : catalog_instances()) {
    CAPTURE(f.label());
    for (double x : oracle::log_grid(1e-3, 1e3, 61)) {
      CHECK(x * f(1.0 / x) == doctest::Approx(f(x)).epsilon(1e-11));
    }
  }
}

TEST_CASE("declared f(0) agrees with the extrapolated limit") {
  for (const auto& f : catalog_instances()) {
    CAPTURE(f.label());
    REQUIRE(f.f_at_zero().has_value());
    const auto est = estimate_limit_at_zero(f);
    if (est.converged) CHECK(std::abs(est.value - *f.f_at_zero()) <= 1e-6);
    CHECK(classify_limit(*f.f_at_zero()) == f.regularity());
  }
  // Power-law approach is extrapolated exactly; the logarithmic approach of
  // KuboMori is out of reach at x >= 1e-10 and must be reported as such.
  for (const char* name : {"SLD", "RLD", "WY", "Sqrt"}) CHECK(estimate_limit_at_zero(catalog(name)).converged);
  for (double b : kBetas) CHECK(estimate_limit_at_zero(catalog("GBeta", BetaParameter(b))).converged);
  CHECK_FALSE(estimate_limit_at_zero(catalog("KuboMori")).converged);
  CHECK(std::abs(estimate_limit_at_zero(catalog("WYD", BetaParameter(0.3))).value - 0.21) <= 1e-8);
  CHECK(*catalog("WYD", BetaParameter(0.3)).f_at_zero() == doctest::Approx(0.21));
  CHECK(*catalog("WY").f_at_zero() == 0.25);
  CHECK(catalog("KuboMori").regularity() == Regularity::non_regular);
}

TEST_CASE("declared f''(1) agrees with the finite-difference estimate") {
  for (const auto& f : catalog_instances()) {
    CAPTURE(f.label());
    REQUIRE(f.d2_at_one().has_value());
    CHECK(std::abs(estimate_second_derivative_at_one(f) - *f.d2_at_one()) <= 1e-6);
  }
  CHECK(*catalog("SLD").d2_at_one() == 0.0);
  CHECK(*catalog("RLD").d2_at_one() == -0.5);
  CHECK(*catalog("WY").d2_at_one() == -0.125);
  CHECK(*catalog("KuboMori").d2_at_one() == doctest::Approx(-1.0 / 6.0));
  CHECK(*catalog("Sqrt").d2_at_one() == -0.25);
}

TEST_CASE("f'(1) = 1/2 for every catalog instance") {
  for (const auto& f : catalog_instances()) {
    CAPTURE(f.label());
    CHECK(std::abs(estimate_first_derivative_at_one(f) - 0.5) <= 1e-6);
  }
}

TEST_CASE("closed-form derivatives agree with central differences") {
  for (const auto& f : catalog_instances()) {
    if (!f.has_derivative()) continue;
    CAPTURE(f.label());
    for (double x : {0.01, 0.3, 2.0, 50.0}) {
      const double h = 1e-6 * x;
      const double fd = (f(x + h) - f(x - h)) / (2.0 * h);
      CHECK(f.derivative(x) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("tilde maps the golden pairs") {
  const auto grid = oracle::log_grid();
  CHECK(oracle::sup_gap(tilde_transform(catalog("SLD")), oracle::rld, grid) <= 1e-10);
  CHECK(oracle::sup_gap(tilde_transform(catalog("WY")), oracle::sqrt_fn, grid) <= 1e-10);
  for (double b : kBetas) {
    CAPTURE(b);
    const auto g = tilde_transform(catalog("WYD", BetaParameter(b)));
    CHECK(oracle::sup_gap(g, [b](double x) { return oracle::gbeta(b, x); }, grid) <= 1e-10);
  }
}

TEST_CASE("check inverts tilde on the golden pairs") {
  const auto grid = oracle::log_grid();
  CHECK(oracle::sup_gap(check_transform(catalog("RLD")), oracle::sld, grid) <= 1e-10);
  CHECK(oracle::sup_gap(check_transform(catalog("Sqrt")), oracle::wy, grid) <= 1e-10);
  CHECK(check_transform(catalog("Sqrt"))(4.0) == doctest::Approx(2.25).epsilon(1e-12));
}

TEST_CASE("round trips H(G(f)) = f and G(H(g)) = g") {
  const auto grid = oracle::log_grid();
  for (const auto& f : regular_catalog_instances()) {
    CAPTURE(f.label());
    const auto back = check_transform(tilde_transform(f));
    double dev = 0.0;
    for (double x : grid) dev = std::max(dev, std::abs(back(x) - f(x)) / std::max(1.0, std::abs(f(x))));
    CHECK(dev <= 1e-10);
  }
  for (const auto& g : nonregular_catalog_instances()) {
    CAPTURE(g.label());
    const auto back = tilde_transform(check_transform(g));
    double dev = 0.0;
    for (double x : grid) dev = std::max(dev, std::abs(back(x) - g(x)) / std::max(1.0, std::abs(g(x))));
    CHECK(dev <= 1e-10);
  }
}

TEST_CASE("tilde flips regularity and g''(1) = -f(0)") {
  for (const auto& f : regular_catalog_instances()) {
    CAPTURE(f.label());
    const auto g = tilde_transform(f);
    CHECK(g.provenance() == Provenance::tilde_transform);
    CHECK(std::abs(estimate_limit_at_zero(g).value) <= 1e-8);
    CHECK(std::abs(estimate_first_derivative_at_one(g) - 0.5) <= 1e-6);
    CHECK(std::abs(estimate_second_derivative_at_one(g) + *f.f_at_zero()) <= 1e-6);
    CHECK(g(1.0) == 1.0);
  }
  for (const auto& g : nonregular_catalog_instances()) {
    CAPTURE(g.label());
    const auto f = check_transform(g);
    CHECK(*f.f_at_zero() == doctest::Approx(-*g.d2_at_one()));
    const auto est = estimate_limit_at_zero(f);
    if (est.converged) CHECK(std::abs(est.value + *g.d2_at_one()) <= 1e-6);
    CHECK(resolve_regularity(f) == Regularity::regular);
  }
}

TEST_CASE("transform names compose") {
  CHECK(tilde_transform(catalog("WY")).name() == "tilde(WY)");
  CHECK(check_transform(tilde_transform(catalog("WY"))).name() == "check(tilde(WY))");
  CHECK(catalog("WYD", BetaParameter(0.3)).label() == "WYD(0.3)");
}

TEST_CASE("sharp is an involution exchanging RLD and SLD") {
  const auto grid = oracle::log_grid();
  CHECK(oracle::sup_gap(sharp_involution(catalog("RLD")), oracle::sld, grid) <= 1e-13);
  for (const auto& g : nonregular_catalog_instances()) {
    CAPTURE(g.label());
    const auto twice = sharp_involution(sharp_involution(g));
    CHECK(oracle::sup_gap(twice, g, grid) <= 1e-12);
  }
}

TEST_CASE("precondition failures name the violated rule") {
  CHECK_THROWS_WITH_AS(tilde_transform(catalog("RLD")), doctest::Contains("tilde requires regular f"),
                       PreconditionError);
  CHECK_THROWS_WITH_AS(check_transform(catalog("SLD")), doctest::Contains("check requires non-regular g"),
                       PreconditionError);
  CHECK_THROWS_AS(BetaParameter(0.0), PreconditionError);
  CHECK_THROWS_AS(BetaParameter(1.0), PreconditionError);
  CHECK_THROWS_AS(BetaParameter(std::nan("")), PreconditionError);
  CHECK_THROWS_AS(catalog("WYD"), PreconditionError);
  CHECK_THROWS_AS(catalog("SLD", BetaParameter(0.3)), PreconditionError);
  CHECK_THROWS_AS(catalog("nope"), PreconditionError);
  const auto f = catalog("SLD");
  CHECK_THROWS_AS(f(0.0), PreconditionError);
  CHECK_THROWS_AS(f(-1.0), PreconditionError);
  CHECK_THROWS_AS(f(std::numeric_limits<double>::infinity()), PreconditionError);
}

TEST_CASE("limit classification thresholds") {
  CHECK(classify_limit(0.25) == Regularity::regular);
  CHECK(classify_limit(2e-6) == Regularity::regular);
  CHECK(classify_limit(1e-9) == Regularity::unknown);
  CHECK(classify_limit(1e-13) == Regularity::non_regular);
  CHECK(classify_limit(0.0) == Regularity::non_regular);
}

TEST_CASE("scalar mean is y f(x/y), symmetric, and idempotent") {
  for (const auto& f : catalog_instances()) {
    CAPTURE(f.label());
    for (double x : {0.2, 1.0, 7.0}) {
      for (double y : {0.5, 3.0}) {
        CHECK(scalar_mean(f, x, y) == doctest::Approx(y * f(x / y)).epsilon(1e-14));
        CHECK(scalar_mean(f, x, y) == doctest::Approx(scalar_mean(f, y, x)).epsilon(1e-11));
      }
      CHECK(scalar_mean(f, x, x) == doctest::Approx(x).epsilon(1e-15));
    }
  }
  CHECK(scalar_mean(catalog("Sqrt"), 4.0, 9.0) == doctest::Approx(6.0));
}
