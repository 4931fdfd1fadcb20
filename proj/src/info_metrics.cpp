#include "omf/info_metrics.hpp"

#include <algorithm>
#include <cmath>

#include "omf/error.hpp"

namespace omf {

namespace {

void require_conformable(const char* op, const DensityMatrix& rho, const HermitianMatrix& a) {
  if (a.dim() != rho.dim()) throw PreconditionError(op, "dimension mismatch between state and observable");
}

void require_regular(const char* op, const FunctionDescriptor& f) {
  if (resolve_regularity(f) != Regularity::regular) {
    throw PreconditionError(op, "requires regular f (f(0) > 0), got " + f.label());
  }
}

CMatrix centered(const DensityMatrix& rho, const HermitianMatrix& a) {
  const double mean = (rho.matrix() * a.matrix()).trace().real();
  CMatrix a0 = a.matrix();
  a0.diagonal().array() -= mean;
  return a0;
}

void require_family(const char* op, const DensityMatrix& rho, const ObservableFamily& family) {
  for (const auto& m : family.members) require_conformable(op, rho, m);
}

}  // namespace

ObservableFamily::ObservableFamily(std::vector<HermitianMatrix> m, std::vector<std::string> l)
    : members(std::move(m)), labels(std::move(l)) {
  if (members.empty()) throw PreconditionError("ObservableFamily", "family must be nonempty");
  for (const auto& a : members) {
    if (a.dim() != members.front().dim()) {
      throw PreconditionError("ObservableFamily", "all members must share one dimension");
    }
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < members.size(); ++i) labels.push_back("A" + std::to_string(i + 1));
  }
  if (labels.size() != members.size()) {
    throw PreconditionError("ObservableFamily", "one label per member");
  }
}

Complex monotone_metric(const FunctionDescriptor& f, const DensityMatrix& rho,
                        const HermitianMatrix& a, const HermitianMatrix& b) {
  require_conformable("monotone_metric", rho, a);
  require_conformable("monotone_metric", rho, b);
  return (a.matrix() * mean_superop_inverse_apply(f, rho, b.matrix())).trace();
}

double g_covariance(const FunctionDescriptor& g, const DensityMatrix& rho, const HermitianMatrix& a,
                    const HermitianMatrix& b) {
  require_conformable("g_covariance", rho, a);
  require_conformable("g_covariance", rho, b);
  const CMatrix a0 = centered(rho, a);
  const CMatrix b0 = centered(rho, b);
  return (mean_superop_apply(g, rho, a0) * b0).trace().real();
}

double IdentitySides::residual() const { return std::abs(lhs - rhs); }

IdentitySides crucial_identity_sides(const FunctionDescriptor& f, const DensityMatrix& rho,
                                     const HermitianMatrix& a, const HermitianMatrix& b) {
  require_regular("crucial_identity_sides", f);
  const double f0 = limit_at_zero(f);
  const double lhs =
      0.5 * f0 * monotone_metric(f, rho, i_commutator(rho, a), i_commutator(rho, b)).real();
  static const FunctionDescriptor sld = catalog("SLD");
  const double rhs = g_covariance(sld, rho, a, b) - g_covariance(tilde_transform(f), rho, a, b);
  return {lhs, rhs};
}

double skew_information(const DensityMatrix& rho, const HermitianMatrix& a) {
  require_conformable("skew_information", rho, a);
  const CMatrix c = commutator(matrix_power(rho, 0.5), a);
  return -0.5 * (c * c).trace().real();
}

double wyd_information(BetaParameter beta, const DensityMatrix& rho, const HermitianMatrix& a) {
  require_conformable("wyd_information", rho, a);
  const double b = beta.value();
  const CMatrix c1 = commutator(matrix_power(rho, b), a);
  const CMatrix c2 = commutator(matrix_power(rho, 1.0 - b), a);
  return -0.5 * (c1 * c2).trace().real();
}

RMatrix covariance_matrix(const DensityMatrix& rho, const ObservableFamily& family) {
  require_family("covariance_matrix", rho, family);
  static const FunctionDescriptor sld = catalog("SLD");
  const auto n = static_cast<Index>(family.size());
  RMatrix m(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = j; k < n; ++k) {
      m(j, k) = m(k, j) = g_covariance(sld, rho, family.members[j], family.members[k]);
    }
  }
  return m;
}

RMatrix commutator_bound_matrix(const DensityMatrix& rho, const ObservableFamily& family) {
  require_family("commutator_bound_matrix", rho, family);
  const auto n = static_cast<Index>(family.size());
  RMatrix m = RMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = j + 1; k < n; ++k) {
      // Tr(rho [A_j, A_k]) is purely imaginary; -(i/2) of it is real.
      const Complex t = (rho.matrix() * commutator(family.members[j], family.members[k])).trace();
      const double v = (Complex(0.0, -0.5) * t).real();
      m(j, k) = v;
      m(k, j) = -v;
    }
  }
  return m;
}

RMatrix metric_bound_matrix(const FunctionDescriptor& f, const DensityMatrix& rho,
                            const ObservableFamily& family) {
  require_regular("metric_bound_matrix", f);
  require_family("metric_bound_matrix", rho, family);
  const double half_f0 = 0.5 * limit_at_zero(f);
  const auto n = static_cast<Index>(family.size());
  std::vector<HermitianMatrix> tangents;
  for (const auto& a : family.members) tangents.push_back(i_commutator(rho, a));
  RMatrix m(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = j; k < n; ++k) {
      m(j, k) = m(k, j) = half_f0 * monotone_metric(f, rho, tangents[j], tangents[k]).real();
    }
  }
  return m;
}

double det_symmetric(const RMatrix& m) {
  const auto es = hermitian_eig(HermitianMatrix::from_real(m));
  return es.values.prod();
}

double det_antisymmetric(const RMatrix& m) {
  const Index n = m.rows();
  // Odd antisymmetric matrices are singular.
  if (n % 2 == 1) return 0.0;
  // det M = (-i)^n det(iM) and iM is Hermitian.
  const auto es = hermitian_eig(HermitianMatrix(Complex(0.0, 1.0) * m.cast<Complex>()));
  const double sign = (n / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * es.values.prod();
}

InequalityReport uncertainty_check(const DensityMatrix& rho, const ObservableFamily& family,
                                   UncertaintyMode mode, const std::optional<FunctionDescriptor>& f,
                                   std::uint64_t seed) {
  InequalityReport r;
  r.seed = seed;
  r.dim = rho.dim();
  r.count = family.size();
  r.lhs_det = det_symmetric(covariance_matrix(rho, family));
  if (mode == UncertaintyMode::standard) {
    r.mode = "standard";
    r.rhs_det = family.size() % 2 == 1 ? 0.0 : det_antisymmetric(commutator_bound_matrix(rho, family));
  } else {
    if (!f) throw PreconditionError("uncertainty_check", "metric mode requires a regular f");
    r.mode = "metric";
    r.function = f->label();
    r.rhs_det = det_symmetric(metric_bound_matrix(*f, rho, family));
  }
  r.margin = r.lhs_det - r.rhs_det;
  r.tolerance = 1e-9 * std::max(1.0, std::abs(r.lhs_det));
  r.satisfied = r.margin >= -r.tolerance;
  return r;
}

}  // namespace omf
