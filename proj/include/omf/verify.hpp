#pragma once

// Numerical certification suites.
//
// "certified" means no counterexample was found at the declared tolerance;
// only the refutation direction is conclusive. Every sample compares a
// statistic against a (negative) threshold and passes when
// statistic >= threshold. A failing sample is a witness; the suite is refuted
// when some witness misses its threshold by more than the slack factor
// (statistic < threshold - (slack - 1) |threshold|, slack = 10), and
// inconclusive when every witness is within that band.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "omf/function.hpp"
#include "omf/hermitian.hpp"

namespace omf::verify {

class GridSpec {
 public:
  enum class Source { fixed, log_random };

  // Points must be positive, strictly ascending, with gaps > 1e-10 * max.
  static GridSpec fixed(std::vector<double> points);
  static GridSpec log_random(std::uint64_t seed, std::size_t count, double lo, double hi);
  static GridSpec log_spaced(double lo, double hi, std::size_t count);

  const std::vector<double>& points() const noexcept { return points_; }
  Source source() const noexcept { return source_; }

 private:
  GridSpec(std::vector<double> points, Source source);
  std::vector<double> points_;
  Source source_;
};

enum class Verdict { certified, refuted, inconclusive };
std::string_view to_string(Verdict v);

struct Witness {
  std::uint64_t seed = 0;           // trial seed; replaying it reproduces the sample
  std::string check;                // which property failed
  double statistic = 0.0;
  double threshold = 0.0;
  std::vector<double> grid;         // Loewner witnesses only
};

// Identity of the function a report is about, as serialized.
struct FunctionInfo {
  std::string name;
  std::optional<double> beta;
  std::string provenance;

  static FunctionInfo of(const FunctionDescriptor& f);
  std::string label() const;
  bool operator==(const FunctionInfo&) const = default;
};

struct VerificationReport {
  std::string suite;
  std::optional<FunctionInfo> function;
  std::size_t trials = 0;
  double tolerance = 0.0;
  double slack = 10.0;
  double min_margin = std::numeric_limits<double>::infinity();  // smallest statistic seen
  std::vector<Witness> failures;
  Verdict verdict = Verdict::certified;

  // Accounts one sample; records a witness when it fails.
  void record(double statistic, double threshold, std::uint64_t seed, std::string check,
              std::vector<double> grid = {});
  void finalize();
};

// Union of two reports over disjoint trial ranges of the same suite.
VerificationReport merge(const VerificationReport& a, const VerificationReport& b);

// L_jk = (f(x_j) - f(x_k)) / (x_j - x_k), L_jj = f'(x_j).
RMatrix loewner_matrix(const FunctionDescriptor& f, const GridSpec& grid);

// Minimum eigenvalue of a real symmetric matrix and its spectral norm.
struct SymmetricSpectrum {
  double min;
  double norm;
};
SymmetricSpectrum symmetric_spectrum(const RMatrix& m);

// Single fixed-grid Loewner check.
VerificationReport loewner_check(const FunctionDescriptor& f, const GridSpec& grid, double tol);

// Grid of one trial: size uniform in [2, max_grid], log-uniform in [1e-3, 1e3].
GridSpec loewner_trial_grid(std::uint64_t trial_seed, std::size_t max_grid);

VerificationReport loewner_suite(const FunctionDescriptor& f, std::size_t trials,
                                 std::size_t max_grid, std::uint64_t seed, double tol,
                                 std::size_t first_trial = 0);

// Per trial: A = H1^2 + 0.05 I, B = A + H2^2; checks f(B) - f(A) >= 0.
struct PairSample {
  double min_eig;
  double threshold;
};
PairSample operator_pair_trial(const FunctionDescriptor& f, Index dim, std::uint64_t trial_seed,
                               double tol);

VerificationReport operator_pair_suite(const FunctionDescriptor& f, const std::vector<Index>& dims,
                                       std::size_t trials, std::uint64_t seed, double tol,
                                       std::size_t first_trial = 0);

// Axioms (i)-(vi) of a matrix mean on random positive pairs, dims 2..4.
VerificationReport mean_axiom_suite(const FunctionDescriptor& f, std::size_t trials,
                                    std::uint64_t seed, double tol, std::size_t first_trial = 0);

// Midpoint concavity of d_f (scalar and along commuting matrix pencils) and of
// tilde f on the half-line.
VerificationReport concavity_probe_d(const FunctionDescriptor& f, std::size_t trials,
                                     std::uint64_t seed, double tol = 1e-9,
                                     std::size_t first_trial = 0);

// Sup-grid deviations of H(G(f)) from f and G(H(g)) from g, relative to
// max(1, |f|), plus the regular / non-regular flip under each map.
VerificationReport roundtrip_suite(const std::vector<FunctionDescriptor>& regular,
                                   const std::vector<FunctionDescriptor>& nonregular,
                                   const GridSpec& grid, double tol);

// Metric / covariance identity residual on random states and observables,
// dims 2..6, relative to max(1, |lhs|).
VerificationReport identity_suite(const FunctionDescriptor& f, std::size_t trials, std::uint64_t seed,
                             double tol = 1e-9, std::size_t first_trial = 0);

// WYD information against Cov^{SLD} - Cov^{GBeta(beta)}.
VerificationReport wyd_suite(BetaParameter beta, std::size_t trials, std::uint64_t seed,
                             double tol = 1e-9, std::size_t first_trial = 0);

// Determinant uncertainty margins, N in {2,3}, dims 2..4. Metric mode needs f.
VerificationReport uncertainty_suite(const std::optional<FunctionDescriptor>& f, std::size_t trials,
                                     std::uint64_t seed, double tol = 1e-9,
                                     std::size_t first_trial = 0);

// Probes that are not operator monotone.
FunctionDescriptor square_probe();
FunctionDescriptor cube_probe();

}  // namespace omf::verify
