#pragma once

// Dense Hermitian linear algebra for desk-scale dimensions (n <= ~16).
//
// Everything spectral goes through a cyclic complex Jacobi eigensolver so that
// results are deterministic for a fixed input. Superoperators of the form
// m_f(L_rho, R_rho) act entrywise in the eigenbasis of rho:
//
//   rho = U diag(l) U^*,   X^ = U^* X U,   Y^_jk = m_f(l_j, l_k) X^_jk.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "omf/function.hpp"

namespace omf {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

class HermitianMatrix {
 public:
  // Symmetrizes: stores (M + M^*) / 2.
  explicit HermitianMatrix(const CMatrix& m);

  static HermitianMatrix identity(Index n);
  static HermitianMatrix diagonal(const std::vector<double>& d);
  static HermitianMatrix from_real(const RMatrix& m);

  Index dim() const noexcept { return m_.rows(); }
  const CMatrix& matrix() const noexcept { return m_; }
  Complex operator()(Index j, Index k) const { return m_(j, k); }
  double trace() const { return m_.trace().real(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;

 private:
  CMatrix m_;
};

struct EigenSystem {
  RVector values;   // ascending
  CMatrix vectors;  // unitary, columns are eigenvectors

  CMatrix reconstruct() const;
};

// Cyclic Jacobi; at most 100 sweeps, stops once the off-diagonal Frobenius
// norm drops to 1e-14 ||A||_F. Throws NumericalError on non-convergence.
EigenSystem hermitian_eig(const HermitianMatrix& a);

// Applies a scalar map on the spectrum: U diag(fn(l_i)) U^*.
HermitianMatrix spectral_map(const EigenSystem& es, const std::function<double(double)>& fn);

double min_eigenvalue(const HermitianMatrix& a);
// Spectral norm of a Hermitian matrix, max |l_i|.
double spectral_norm(const HermitianMatrix& a);

class DensityMatrix {
 public:
  static constexpr double kDefaultEigenFloor = 1e-4;

  // Requires trace 1 within 1e-12 and min eigenvalue >= eigen_floor > 0.
  explicit DensityMatrix(HermitianMatrix base, double eigen_floor = kDefaultEigenFloor);

  static DensityMatrix diagonal(const std::vector<double>& p,
                                double eigen_floor = kDefaultEigenFloor);

  Index dim() const noexcept { return base_.dim(); }
  const HermitianMatrix& hermitian() const noexcept { return base_; }
  const CMatrix& matrix() const noexcept { return base_.matrix(); }
  const EigenSystem& eigen() const noexcept { return eigen_; }
  double eigen_floor() const noexcept { return floor_; }

 private:
  HermitianMatrix base_;
  double floor_;
  EigenSystem eigen_;
};

// Traceless Hermitian matrix, an element of the tangent space at a state.
class TangentVector {
 public:
  explicit TangentVector(HermitianMatrix base);
  const HermitianMatrix& hermitian() const noexcept { return base_; }

 private:
  HermitianMatrix base_;
};

// f(A) = U diag(f(l_i)) U^*; every eigenvalue must be positive.
HermitianMatrix apply_function(const FunctionDescriptor& f, const HermitianMatrix& a);

// Kubo-Ando mean A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}; A, B positive definite.
HermitianMatrix matrix_mean(const FunctionDescriptor& f, const HermitianMatrix& a,
                            const HermitianMatrix& b);

// m_f(L_rho, R_rho)(X) and its inverse. Accept any square X; the output is
// Hermitian whenever X is.
CMatrix mean_superop_apply(const FunctionDescriptor& f, const DensityMatrix& rho, const CMatrix& x);
CMatrix mean_superop_inverse_apply(const FunctionDescriptor& f, const DensityMatrix& rho,
                                   const CMatrix& x);
HermitianMatrix mean_superop_apply(const FunctionDescriptor& f, const DensityMatrix& rho,
                                   const HermitianMatrix& x);
HermitianMatrix mean_superop_inverse_apply(const FunctionDescriptor& f, const DensityMatrix& rho,
                                           const HermitianMatrix& x);

// rho^s for s in (0, 1].
HermitianMatrix matrix_power(const DensityMatrix& rho, double s);

// [A, B] = AB - BA.
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix commutator(const HermitianMatrix& a, const HermitianMatrix& b);
// i[rho, A], Hermitian and traceless.
HermitianMatrix i_commutator(const HermitianMatrix& rho, const HermitianMatrix& a);
HermitianMatrix i_commutator(const DensityMatrix& rho, const HermitianMatrix& a);

// Pauli matrices, 2x2.
HermitianMatrix pauli(char axis);

}  // namespace omf
