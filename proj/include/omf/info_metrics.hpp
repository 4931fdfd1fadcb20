#pragma once

// Monotone metrics, quantum g-covariances, skew informations and the
// determinant uncertainty relations built on them.
//
//   <A, B>_{rho,f}  = Tr( A m_f(L_rho, R_rho)^{-1}(B) )
//   Cov^g_rho(A, B) = Tr( m_g(L_rho, R_rho)(A_0) B_0 ),   A_0 = A - Tr(rho A) I
//
// For regular f the two are tied together by
//
//   f(0)/2 <i[rho,A], i[rho,B]>_{rho,f} = Cov^{SLD}_rho(A,B) - Cov^{tilde f}_rho(A,B).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omf/function.hpp"
#include "omf/hermitian.hpp"

namespace omf {

struct ObservableFamily {
  std::vector<HermitianMatrix> members;
  std::vector<std::string> labels;

  ObservableFamily(std::vector<HermitianMatrix> members, std::vector<std::string> labels = {});
  std::size_t size() const noexcept { return members.size(); }
  Index dim() const { return members.front().dim(); }
};

Complex monotone_metric(const FunctionDescriptor& f, const DensityMatrix& rho,
                        const HermitianMatrix& a, const HermitianMatrix& b);

double g_covariance(const FunctionDescriptor& g, const DensityMatrix& rho, const HermitianMatrix& a,
                    const HermitianMatrix& b);

struct IdentitySides {
  double lhs;
  double rhs;
  double residual() const;
};

// Both sides of the metric / covariance identity above; f must be regular.
IdentitySides crucial_identity_sides(const FunctionDescriptor& f, const DensityMatrix& rho,
                                     const HermitianMatrix& a, const HermitianMatrix& b);

// -1/2 Tr([rho^{1/2}, A]^2)
double skew_information(const DensityMatrix& rho, const HermitianMatrix& a);
// -1/2 Tr([rho^beta, A][rho^{1-beta}, A])
double wyd_information(BetaParameter beta, const DensityMatrix& rho, const HermitianMatrix& a);

// Cov^{SLD}(A_j, A_k).
RMatrix covariance_matrix(const DensityMatrix& rho, const ObservableFamily& family);
// -(i/2) Tr(rho [A_j, A_k]), real antisymmetric.
RMatrix commutator_bound_matrix(const DensityMatrix& rho, const ObservableFamily& family);
// f(0)/2 <i[rho,A_j], i[rho,A_k]>_{rho,f}; f must be regular.
RMatrix metric_bound_matrix(const FunctionDescriptor& f, const DensityMatrix& rho,
                            const ObservableFamily& family);

// Determinants through eigenvalues of the Hermitian embedding.
double det_symmetric(const RMatrix& m);
double det_antisymmetric(const RMatrix& m);

enum class UncertaintyMode { standard, metric };

struct InequalityReport {
  std::string mode;
  std::optional<std::string> function;  // label of f in metric mode
  double lhs_det = 0.0;
  double rhs_det = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool satisfied = false;
  std::uint64_t seed = 0;
  Index dim = 0;
  std::size_t count = 0;  // N
};

// standard: det Cov >= det(commutator bound) for even N, >= 0 for odd N.
// metric:   det Cov >= det(metric bound for f).
InequalityReport uncertainty_check(const DensityMatrix& rho, const ObservableFamily& family,
                                   UncertaintyMode mode,
                                   const std::optional<FunctionDescriptor>& f = std::nullopt,
                                   std::uint64_t seed = 0);

}  // namespace omf
