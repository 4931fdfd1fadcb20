#include "omf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "omf/error.hpp"
#include "omf/info_metrics.hpp"
#include "omf/measure.hpp"
#include "omf/random.hpp"

namespace omf::verify {

namespace {

constexpr double kPairShift = 0.05;
constexpr double kContinuityStep = 1e-6;
constexpr double kContinuityBound = 1e3;

double norm2(const HermitianMatrix& a) { return spectral_norm(a); }

std::string dim_tag(const char* check, Index dim) {
  return std::string(check) + " dim=" + std::to_string(dim);
}

VerificationReport start(std::string suite, std::optional<FunctionInfo> function, double tol) {
  VerificationReport r;
  r.suite = std::move(suite);
  r.function = std::move(function);
  r.tolerance = tol;
  r.min_margin = std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace

// --- GridSpec ----------------------------------------------------------------

GridSpec::GridSpec(std::vector<double> points, Source source)
    : points_(std::move(points)), source_(source) {
  if (points_.empty()) throw PreconditionError("GridSpec", "grid must contain at least one point");
  const double max = points_.back();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i] > 0.0) || !std::isfinite(points_[i])) {
      throw PreconditionError("GridSpec", "grid points must be positive and finite");
    }
    if (i > 0 && !(points_[i] - points_[i - 1] > 1e-10 * max)) {
      throw PreconditionError("GridSpec", "grid points must be strictly ascending and separated");
    }
  }
}

GridSpec GridSpec::fixed(std::vector<double> points) { return {std::move(points), Source::fixed}; }

GridSpec GridSpec::log_random(std::uint64_t seed, std::size_t count, double lo, double hi) {
  if (count == 0 || !(lo > 0.0) || !(hi > lo)) {
    throw PreconditionError("GridSpec::log_random", "need count >= 1 and 0 < lo < hi");
  }
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    std::vector<double> pts(count);
    for (auto& p : pts) p = rng.log_uniform(lo, hi);
    std::sort(pts.begin(), pts.end());
    bool separated = true;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      separated = separated && pts[i] - pts[i - 1] > 1e-10 * pts.back();
    }
    if (separated) return {std::move(pts), Source::log_random};
  }
}

GridSpec GridSpec::log_spaced(double lo, double hi, std::size_t count) {
  if (count < 2 || !(lo > 0.0) || !(hi > lo)) {
    throw PreconditionError("GridSpec::log_spaced", "need count >= 2 and 0 < lo < hi");
  }
  std::vector<double> pts(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) pts[i] = lo * std::exp(step * static_cast<double>(i));
  pts.back() = hi;
  return {std::move(pts), Source::fixed};
}

// --- reports -------------------------------------------------------------------

FunctionInfo FunctionInfo::of(const FunctionDescriptor& f) {
  return {f.name(), f.beta(), std::string(omf::to_string(f.provenance()))};
}

std::string FunctionInfo::label() const {
  if (!beta || provenance != "catalog") return name;
  std::ostringstream os;
  os << name << "(" << *beta << ")";
  return os.str();
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

void VerificationReport::record(double statistic, double threshold, std::uint64_t seed,
                                std::string check, std::vector<double> grid) {
  min_margin = std::min(min_margin, statistic);
  // NaN statistics fail.
  if (!(statistic >= threshold)) {
    failures.push_back({seed, std::move(check), statistic, threshold, std::move(grid)});
  }
}

void VerificationReport::finalize() {
  verdict = Verdict::certified;
  for (const auto& w : failures) {
    const double hard = w.threshold - (slack - 1.0) * std::abs(w.threshold);
    if (!(w.statistic >= hard)) {
      verdict = Verdict::refuted;
      return;
    }
    verdict = Verdict::inconclusive;
  }
}

VerificationReport merge(const VerificationReport& a, const VerificationReport& b) {
  if (a.suite != b.suite || a.function != b.function) {
    throw PreconditionError("merge", "reports must come from the same suite and function");
  }
  VerificationReport r = a;
  r.trials += b.trials;
  r.min_margin = std::min(a.min_margin, b.min_margin);
  r.failures.insert(r.failures.end(), b.failures.begin(), b.failures.end());
  r.finalize();
  return r;
}

// --- Loewner -------------------------------------------------------------------

RMatrix loewner_matrix(const FunctionDescriptor& f, const GridSpec& grid) {
  const auto& x = grid.points();
  const auto n = static_cast<Index>(x.size());
  std::vector<double> fx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) fx[i] = f(x[i]);
  RMatrix l(n, n);
  for (Index j = 0; j < n; ++j) {
    const double d = derivative_at(f, x[j]);
    if (!std::isfinite(d)) {
      throw NumericalError("loewner_matrix: non-finite derivative of " + f.label());
    }
    l(j, j) = d;
    for (Index k = j + 1; k < n; ++k) {
      l(j, k) = l(k, j) = (fx[j] - fx[k]) / (x[j] - x[k]);
    }
  }
  return l;
}

SymmetricSpectrum symmetric_spectrum(const RMatrix& m) {
  const auto es = hermitian_eig(HermitianMatrix::from_real(m));
  const double lo = es.values(0);
  const double hi = es.values(es.values.size() - 1);
  return {lo, std::max(std::abs(lo), std::abs(hi))};
}

VerificationReport loewner_check(const FunctionDescriptor& f, const GridSpec& grid, double tol) {
  auto r = start("loewner", FunctionInfo::of(f), tol);
  const auto s = symmetric_spectrum(loewner_matrix(f, grid));
  r.trials = 1;
  r.record(s.min, -tol * s.norm, 0, "loewner psd", grid.points());
  r.finalize();
  return r;
}

GridSpec loewner_trial_grid(std::uint64_t trial_seed, std::size_t max_grid) {
  Rng rng(trial_seed);
  const int count = rng.integer(2, static_cast<int>(std::max<std::size_t>(max_grid, 2)));
  return GridSpec::log_random(derive_seed(trial_seed, 1), static_cast<std::size_t>(count), 1e-3, 1e3);
}

VerificationReport loewner_suite(const FunctionDescriptor& f, std::size_t trials,
                                 std::size_t max_grid, std::uint64_t seed, double tol,
                                 std::size_t first_trial) {
  auto r = start("loewner", FunctionInfo::of(f), tol);
  for (std::size_t t = first_trial; t < first_trial + trials; ++t) {
    const auto ts = derive_seed(seed, t);
    const auto grid = loewner_trial_grid(ts, max_grid);
    const auto s = symmetric_spectrum(loewner_matrix(f, grid));
    r.record(s.min, -tol * s.norm, ts, "loewner psd", grid.points());
  }
  r.trials = trials;
  r.finalize();
  return r;
}

// --- operator pairs ------------------------------------------------------------------

PairSample operator_pair_trial(const FunctionDescriptor& f, Index dim, std::uint64_t trial_seed,
                               double tol) {
  const HermitianMatrix h1 = random_observable(dim, derive_seed(trial_seed, 1));
  const HermitianMatrix h2 = random_observable(dim, derive_seed(trial_seed, 2));
  const HermitianMatrix a(h1.matrix() * h1.matrix() +
                          kPairShift * CMatrix::Identity(dim, dim));
  const HermitianMatrix b(a.matrix() + h2.matrix() * h2.matrix());
  const HermitianMatrix fa = apply_function(f, a);
  const HermitianMatrix fb = apply_function(f, b);
  return {min_eigenvalue(fb - fa), -tol * (1.0 + norm2(fb))};
}

VerificationReport operator_pair_suite(const FunctionDescriptor& f, const std::vector<Index>& dims,
                                       std::size_t trials, std::uint64_t seed, double tol,
                                       std::size_t first_trial) {
  if (dims.empty()) throw PreconditionError("operator_pair_suite", "dims must be nonempty");
  for (Index d : dims) {
    if (d < 2 || d > 8) throw PreconditionError("operator_pair_suite", "dims must lie in 2..8");
  }
  auto r = start("pairs", FunctionInfo::of(f), tol);
  for (std::size_t t = first_trial; t < first_trial + trials; ++t) {
    const auto ts = derive_seed(seed, t);
    const Index dim = dims[ts % dims.size()];
    const auto s = operator_pair_trial(f, dim, ts, tol);
    r.record(s.min_eig, s.threshold, ts, dim_tag("f(B)-f(A) psd", dim));
  }
  r.trials = trials;
  r.finalize();
  return r;
}

// --- mean axioms ---------------------------------------------------------------------

VerificationReport mean_axiom_suite(const FunctionDescriptor& f, std::size_t trials,
                                    std::uint64_t seed, double tol, std::size_t first_trial) {
  auto r = start("means", FunctionInfo::of(f), tol);
  for (std::size_t t = first_trial; t < first_trial + trials; ++t) {
    const auto ts = derive_seed(seed, t);
    const Index dim = 2 + static_cast<Index>(ts % 3);
    const auto a = random_positive(dim, derive_seed(ts, 1));
    const auto b = random_positive(dim, derive_seed(ts, 2));
    const auto m = matrix_mean(f, a, b);
    const auto tag = [dim](const char* c) { return dim_tag(c, dim); };

    // (i) m(A, A) = A
    r.record(-norm2(matrix_mean(f, a, a) - a), -tol * (1.0 + norm2(a)), ts, tag("(i) idempotence"));

    // (ii) m(A, B) = m(B, A)
    r.record(-norm2(matrix_mean(f, b, a) - m), -tol * (1.0 + norm2(m)), ts, tag("(ii) symmetry"));

    // (iii) A < B  =>  A <= m(A, B) <= B
    {
      const auto upper = a + random_positive(dim, derive_seed(ts, 3));
      const auto mid = matrix_mean(f, a, upper);
      const double thr = -tol * (1.0 + norm2(upper));
      r.record(min_eigenvalue(mid - a), thr, ts, tag("(iii) lower bound"));
      r.record(min_eigenvalue(upper - mid), thr, ts, tag("(iii) upper bound"));
    }

    // (iv) monotone in both arguments
    {
      const auto a2 = a + random_positive(dim, derive_seed(ts, 4));
      const auto b2 = b + random_positive(dim, derive_seed(ts, 5));
      const auto m2 = matrix_mean(f, a2, b2);
      r.record(min_eigenvalue(m2 - m), -tol * (1.0 + norm2(m2)), ts, tag("(iv) monotonicity"));
    }

    // (v) continuity: ||m(A + eps E, B) - m(A, B)|| <= K eps
    {
      const auto e = random_observable(dim, derive_seed(ts, 6));
      const auto unit = e * (1.0 / norm2(e));
      const auto moved = matrix_mean(f, a + unit * kContinuityStep, b);
      r.record(-norm2(moved - m) / kContinuityStep, -kContinuityBound, ts, tag("(v) continuity"));
    }

    // (vi) transformer inequality C m(A,B) C^* <= m(C A C^*, C B C^*)
    {
      const CMatrix c = random_conditioned(dim, derive_seed(ts, 7));
      auto congruence = [&c, dim](const HermitianMatrix& x) {
        HermitianMatrix y(c * x.matrix() * c.adjoint());
        const double lo = min_eigenvalue(y);
        if (lo <= 0.0) {
          y = HermitianMatrix(y.matrix() + (1e-12 * norm2(y) - lo) * CMatrix::Identity(dim, dim));
        }
        return y;
      };
      const HermitianMatrix lhs(c * m.matrix() * c.adjoint());
      const auto rhs = matrix_mean(f, congruence(a), congruence(b));
      r.record(min_eigenvalue(rhs - lhs), -tol * (1.0 + norm2(rhs)), ts, tag("(vi) transformer"));
    }
  }
  r.trials = trials;
  r.finalize();
  return r;
}

// --- concavity -----------------------------------------------------------------------

namespace {

// d_f(X, Y) for commuting positive X, Y through the matrix mean.
HermitianMatrix d_matrix(const FunctionDescriptor& f, double f0, const HermitianMatrix& x,
                         const HermitianMatrix& y) {
  const CMatrix diff = x.matrix() - y.matrix();
  const auto inv_mean = spectral_map(hermitian_eig(matrix_mean(f, x, y)),
                                     [](double v) { return 1.0 / v; });
  return HermitianMatrix((x.matrix() + y.matrix()) / f0 - diff * inv_mean.matrix() * diff);
}

}  // namespace

VerificationReport concavity_probe_d(const FunctionDescriptor& f, std::size_t trials,
                                     std::uint64_t seed, double tol, std::size_t first_trial) {
  if (resolve_regularity(f) != Regularity::regular) {
    throw PreconditionError("concavity_probe_d", "requires regular f (f(0) > 0), got " + f.label());
  }
  const double f0 = limit_at_zero(f);
  const auto ft = tilde_transform(f);
  auto r = start("concavity", FunctionInfo::of(f), tol);
  for (std::size_t t = first_trial; t < first_trial + trials; ++t) {
    const auto ts = derive_seed(seed, t);
    Rng rng(ts);
    const double x1 = rng.log_uniform(1e-2, 1e2), y1 = rng.log_uniform(1e-2, 1e2);
    const double x2 = rng.log_uniform(1e-2, 1e2), y2 = rng.log_uniform(1e-2, 1e2);

    {
      const double d1 = d_function(f, x1, y1);
      const double d2 = d_function(f, x2, y2);
      const double dm = d_function(f, 0.5 * (x1 + x2), 0.5 * (y1 + y2));
      const double scale = std::max({1.0, std::abs(d1), std::abs(d2), std::abs(dm)});
      r.record(dm - 0.5 * (d1 + d2), -tol * scale, ts, "d_f midpoint");
    }
    {
      const double g1 = ft(x1), g2 = ft(x2), gm = ft(0.5 * (x1 + x2));
      const double scale = std::max({1.0, std::abs(g1), std::abs(g2), std::abs(gm)});
      r.record(gm - 0.5 * (g1 + g2), -tol * scale, ts, "tilde f midpoint");
    }
    {
      const Index dim = 2 + static_cast<Index>(ts % 3);
      const CMatrix u = random_unitary(dim, derive_seed(ts, 1));
      auto pencil = [&u, &rng, dim] {
        Eigen::VectorXcd d(dim);
        for (Index i = 0; i < dim; ++i) d(i) = rng.log_uniform(1e-1, 1e1);
        return HermitianMatrix(u * d.asDiagonal() * u.adjoint());
      };
      const auto px1 = pencil(), py1 = pencil(), px2 = pencil(), py2 = pencil();
      const auto dm1 = d_matrix(f, f0, px1, py1);
      const auto dm2 = d_matrix(f, f0, px2, py2);
      const auto dmid = d_matrix(f, f0, (px1 + px2) * 0.5, (py1 + py2) * 0.5);
      const double scale = std::max({1.0, norm2(dm1), norm2(dm2), norm2(dmid)});
      r.record(min_eigenvalue(dmid - (dm1 + dm2) * 0.5), -tol * scale, ts,
               dim_tag("d_f commuting pencil", dim));
    }
  }
  r.trials = trials;
  r.finalize();
  return r;
}

// --- round trips -------------------------------------------------------------------

namespace {

double sup_relative_deviation(const FunctionDescriptor& lhs, const FunctionDescriptor& rhs,
                              const GridSpec& grid) {
  double dev = 0.0;
  for (double x : grid.points()) {
    const double want = rhs(x);
    dev = std::max(dev, std::abs(lhs(x) - want) / std::max(1.0, std::abs(want)));
  }
  return dev;
}

}  // namespace

VerificationReport roundtrip_suite(const std::vector<FunctionDescriptor>& regular,
                                   const std::vector<FunctionDescriptor>& nonregular,
                                   const GridSpec& grid, double tol) {
  auto r = start("roundtrip", std::nullopt, tol);
  for (const auto& f : regular) {
    if (resolve_regularity(f) != Regularity::regular) {
      r.record(-1.0, 0.0, 0, "precondition: " + f.label() + " is not regular");
      continue;
    }
    const auto g = tilde_transform(f);
    r.record(-sup_relative_deviation(check_transform(g), f, grid), -tol, 0,
             "H(G(" + f.label() + "))=f");
    r.record(-limit_at_zero(g), -1e-8, 0, "G(" + f.label() + ") non-regular");
  }
  for (const auto& g : nonregular) {
    if (resolve_regularity(g) != Regularity::non_regular) {
      r.record(-1.0, 0.0, 0, "precondition: " + g.label() + " is not non-regular");
      continue;
    }
    const auto f = check_transform(g);
    r.record(-sup_relative_deviation(tilde_transform(f), g, grid), -tol, 0,
             "G(H(" + g.label() + "))=g");
    r.record(limit_at_zero(f) - 1e-6, 0.0, 0, "H(" + g.label() + ") regular");
  }
  r.trials = regular.size() + nonregular.size();
  r.finalize();
  return r;
}

// --- info-metric identities ------------------------------------------------------------

VerificationReport identity_suite(const FunctionDescriptor& f, std::size_t trials, std::uint64_t seed,
                             double tol, std::size_t first_trial) {
  auto r = start("eq4", FunctionInfo::of(f), tol);
  for (std::size_t t = first_trial; t < first_trial + trials; ++t) {
    const auto ts = derive_seed(seed, t);
    const Index dim = 2 + static_cast<Index>(ts % 5);
    const auto rho = random_density(dim, derive_seed(ts, 1));
    const auto a = random_observable(dim, derive_seed(ts, 2));
    const auto b = random_observable(dim, derive_seed(ts, 3));
    const auto sides = crucial_identity_sides(f, rho, a, b);
    r.record(-sides.residual(), -tol * std::max(1.0, std::abs(sides.lhs)), ts,
             dim_tag("metric-covariance identity", dim));
  }
  r.trials = trials;
  r.finalize();
  return r;
}

VerificationReport wyd_suite(BetaParameter beta, std::size_t trials, std::uint64_t seed, double tol,
                             std::size_t first_trial) {
  const auto sld = catalog("SLD");
  const auto gb = catalog("GBeta", beta);
  const auto fb = catalog("WYD", beta);
  auto r = start("wyd", FunctionInfo::of(fb), tol);
  for (std::size_t t = first_trial; t < first_trial + trials; ++t) {
    const auto ts = derive_seed(seed, t);
    const Index dim = 2 + static_cast<Index>(ts % 5);
    const auto rho = random_density(dim, derive_seed(ts, 1));
    const auto a = random_observable(dim, derive_seed(ts, 2));
    const double direct = wyd_information(beta, rho, a);
    const double via_cov = g_covariance(sld, rho, a, a) - g_covariance(gb, rho, a, a);
    r.record(-std::abs(direct - via_cov), -tol * std::max(1.0, std::abs(direct)), ts,
             dim_tag("wyd vs covariance difference", dim));
  }
  r.trials = trials;
  r.finalize();
  return r;
}

VerificationReport uncertainty_suite(const std::optional<FunctionDescriptor>& f, std::size_t trials,
                                     std::uint64_t seed, double tol, std::size_t first_trial) {
  auto r = start("uncertainty", f ? std::optional(FunctionInfo::of(*f)) : std::nullopt, tol);
  const auto mode = f ? UncertaintyMode::metric : UncertaintyMode::standard;
  for (std::size_t t = first_trial; t < first_trial + trials; ++t) {
    const auto ts = derive_seed(seed, t);
    const Index dim = 2 + static_cast<Index>(ts % 3);
    const std::size_t count = 2 + static_cast<std::size_t>((ts / 3) % 2);
    const auto rho = random_density(dim, derive_seed(ts, 1));
    std::vector<HermitianMatrix> members;
    for (std::size_t j = 0; j < count; ++j) {
      members.push_back(random_observable(dim, derive_seed(ts, 2 + j)));
    }
    const auto rep = uncertainty_check(rho, ObservableFamily(std::move(members)), mode, f, ts);
    r.record(rep.margin, -tol * std::max(1.0, std::abs(rep.lhs_det)), ts,
             dim_tag(count == 2 ? "N=2 determinant margin" : "N=3 determinant margin", dim));
  }
  r.trials = trials;
  r.finalize();
  return r;
}

// --- probes ----------------------------------------------------------------------

FunctionDescriptor square_probe() {
  FunctionDescriptor::Traits t;
  t.derivative = [](double x) { return 2.0 * x; };
  t.provenance = Provenance::user;
  return {"x^2-probe", [](double x) { return x * x; }, std::move(t)};
}

FunctionDescriptor cube_probe() {
  FunctionDescriptor::Traits t;
  t.derivative = [](double x) { return 3.0 * x * x; };
  t.provenance = Provenance::user;
  return {"x^3-probe", [](double x) { return x * x * x; }, std::move(t)};
}

}  // namespace omf::verify
