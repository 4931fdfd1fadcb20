#include "omf/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "omf/error.hpp"

namespace omf {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-14;

void require_same_dim(const char* op, Index a, Index b) {
  if (a != b) throw PreconditionError(op, "dimension mismatch");
}

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (Index q = 1; q < a.cols(); ++q) {
    for (Index p = 0; p < q; ++p) s += std::norm(a(p, q));
  }
  return std::sqrt(2.0 * s);
}

// One complex Jacobi rotation annihilating a(p, q). The phase factor turns
// a(p, q) real, then a real Givens rotation diagonalizes the 2x2 block.
void rotate(CMatrix& a, CMatrix& v, Index p, Index q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = std::conj(apq / mag);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex vpp = c, vpq = s, vqp = -s * phase, vqq = c * phase;

  const auto update_columns = [&](CMatrix& m) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex mp = m(i, p), mq = m(i, q);
      m(i, p) = mp * vpp + mq * vqp;
      m(i, q) = mp * vpq + mq * vqq;
    }
  };
  update_columns(a);
  for (Index j = 0; j < a.cols(); ++j) {
    const Complex ap = a(p, j), aq = a(q, j);
    a(p, j) = std::conj(vpp) * ap + std::conj(vqp) * aq;
    a(q, j) = std::conj(vpq) * ap + std::conj(vqq) * aq;
  }
  a(p, q) = a(q, p) = 0.0;
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
  update_columns(v);
}

}  // namespace

// --- HermitianMatrix ---------------------------------------------------------

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw PreconditionError("HermitianMatrix", "matrix must be square and non-empty");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(CMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  CMatrix m = CMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::from_real(const RMatrix& m) {
  return HermitianMatrix(m.cast<Complex>());
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  require_same_dim("HermitianMatrix::operator+", dim(), o.dim());
  return HermitianMatrix(m_ + o.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  require_same_dim("HermitianMatrix::operator-", dim(), o.dim());
  return HermitianMatrix(m_ - o.m_);
}

HermitianMatrix HermitianMatrix::operator*(double s) const { return HermitianMatrix(m_ * s); }

// --- eigen ------------------------------------------------------------------

CMatrix EigenSystem::reconstruct() const {
  return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

EigenSystem hermitian_eig(const HermitianMatrix& h) {
  CMatrix a = h.matrix();
  const Index n = a.rows();
  CMatrix v = CMatrix::Identity(n, n);
  const double target = kOffDiagonalTol * a.norm();

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) break;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
  }
  if (sweep == kMaxSweeps && off_diagonal_norm(a) > target) {
    std::ostringstream os;
    os << "hermitian_eig: no convergence after " << kMaxSweeps << " sweeps (||A||_F = "
       << h.matrix().norm() << ", off-diagonal residual " << off_diagonal_norm(a) << ")";
    throw NumericalError(os.str());
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](Index i, Index j) { return a(i, i).real() < a(j, j).real(); });
  EigenSystem es{RVector(n), CMatrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    es.values(k) = a(order[k], order[k]).real();
    es.vectors.col(k) = v.col(order[k]);
  }
  return es;
}

HermitianMatrix spectral_map(const EigenSystem& es, const std::function<double(double)>& fn) {
  Eigen::VectorXcd d(es.values.size());
  for (Index i = 0; i < d.size(); ++i) d(i) = fn(es.values(i));
  return HermitianMatrix(es.vectors * d.asDiagonal() * es.vectors.adjoint());
}

double min_eigenvalue(const HermitianMatrix& a) { return hermitian_eig(a).values(0); }

double spectral_norm(const HermitianMatrix& a) {
  const auto es = hermitian_eig(a);
  return std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
}

// --- states -----------------------------------------------------------------

DensityMatrix::DensityMatrix(HermitianMatrix base, double eigen_floor)
    : base_(std::move(base)), floor_(eigen_floor), eigen_(hermitian_eig(base_)) {
  if (!(eigen_floor > 0.0)) {
    throw PreconditionError("DensityMatrix", "eigen_floor must be positive");
  }
  if (std::abs(base_.trace() - 1.0) > 1e-12) {
    throw PreconditionError("DensityMatrix", "trace must equal 1 within 1e-12");
  }
  if (eigen_.values(0) < eigen_floor) {
    std::ostringstream os;
    os << "state must be faithful: minimum eigenvalue " << eigen_.values(0)
       << " is below the floor " << eigen_floor;
    throw PreconditionError("DensityMatrix", os.str());
  }
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& p, double eigen_floor) {
  return DensityMatrix(HermitianMatrix::diagonal(p), eigen_floor);
}

TangentVector::TangentVector(HermitianMatrix base) : base_(std::move(base)) {
  if (std::abs(base_.trace()) > 1e-12) {
    throw PreconditionError("TangentVector", "tangent vectors must be traceless within 1e-12");
  }
}

// --- functional calculus ------------------------------------------------------

HermitianMatrix apply_function(const FunctionDescriptor& f, const HermitianMatrix& a) {
  const auto es = hermitian_eig(a);
  if (!(es.values(0) > 0.0)) {
    std::ostringstream os;
    os << "nonpositive eigenvalue " << es.values(0) << " outside the domain of " << f.label();
    throw PreconditionError("apply_function", os.str());
  }
  return spectral_map(es, [&f](double x) { return f(x); });
}

HermitianMatrix matrix_mean(const FunctionDescriptor& f, const HermitianMatrix& a,
                            const HermitianMatrix& b) {
  require_same_dim("matrix_mean", a.dim(), b.dim());
  const auto ea = hermitian_eig(a);
  if (!(ea.values(0) > 0.0) || !(min_eigenvalue(b) > 0.0)) {
    throw PreconditionError("matrix_mean", "both arguments must be positive definite");
  }
  static const FunctionDescriptor sqrt_f = catalog("Sqrt");
  const CMatrix root = spectral_map(ea, [](double x) { return sqrt_f(x); }).matrix();
  const CMatrix inv_root = spectral_map(ea, [](double x) { return 1.0 / sqrt_f(x); }).matrix();
  const HermitianMatrix inner(inv_root * b.matrix() * inv_root);
  return HermitianMatrix(root * apply_function(f, inner).matrix() * root);
}

namespace {

template <typename Weight>
CMatrix eigenbasis_scale(const DensityMatrix& rho, const CMatrix& x, const char* op, Weight w) {
  if (x.rows() != rho.dim() || x.cols() != rho.dim()) throw PreconditionError(op, "dimension mismatch");
  const auto& es = rho.eigen();
  CMatrix y = es.vectors.adjoint() * x * es.vectors;
  for (Index j = 0; j < y.rows(); ++j) {
    for (Index k = 0; k < y.cols(); ++k) y(j, k) *= w(es.values(j), es.values(k));
  }
  return es.vectors * y * es.vectors.adjoint();
}

}  // namespace

CMatrix mean_superop_apply(const FunctionDescriptor& f, const DensityMatrix& rho, const CMatrix& x) {
  return eigenbasis_scale(rho, x, "mean_superop_apply",
                          [&f](double lj, double lk) { return scalar_mean(f, lj, lk); });
}

CMatrix mean_superop_inverse_apply(const FunctionDescriptor& f, const DensityMatrix& rho,
                                   const CMatrix& x) {
  return eigenbasis_scale(rho, x, "mean_superop_inverse_apply",
                          [&f](double lj, double lk) { return 1.0 / scalar_mean(f, lj, lk); });
}

HermitianMatrix mean_superop_apply(const FunctionDescriptor& f, const DensityMatrix& rho,
                                   const HermitianMatrix& x) {
  return HermitianMatrix(mean_superop_apply(f, rho, x.matrix()));
}

HermitianMatrix mean_superop_inverse_apply(const FunctionDescriptor& f, const DensityMatrix& rho,
                                           const HermitianMatrix& x) {
  return HermitianMatrix(mean_superop_inverse_apply(f, rho, x.matrix()));
}

HermitianMatrix matrix_power(const DensityMatrix& rho, double s) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw PreconditionError("matrix_power", "exponent must lie in (0,1]");
  }
  return spectral_map(rho.eigen(), [s](double x) { return std::pow(x, s); });
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw PreconditionError("commutator", "dimension mismatch");
  }
  return a * b - b * a;
}

CMatrix commutator(const HermitianMatrix& a, const HermitianMatrix& b) {
  return commutator(a.matrix(), b.matrix());
}

HermitianMatrix i_commutator(const HermitianMatrix& rho, const HermitianMatrix& a) {
  return HermitianMatrix(Complex(0.0, 1.0) * commutator(rho, a));
}

HermitianMatrix i_commutator(const DensityMatrix& rho, const HermitianMatrix& a) {
  return i_commutator(rho.hermitian(), a);
}

HermitianMatrix pauli(char axis) {
  CMatrix m = CMatrix::Zero(2, 2);
  switch (axis) {
    case 'x':
      m(0, 1) = m(1, 0) = 1.0;
      break;
    case 'y':
      m(0, 1) = Complex(0.0, -1.0);
      m(1, 0) = Complex(0.0, 1.0);
      break;
    case 'z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw PreconditionError("pauli", std::string("unknown axis '") + axis + "'");
  }
  return HermitianMatrix(m);
}

}  // namespace omf
