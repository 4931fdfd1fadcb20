// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "omf/error.hpp"
#include "omf/info_metrics.hpp"
#include "omf/measure.hpp"
#include "omf/random.hpp"
#include "omf/verify.hpp"
#include "oracles.hpp"

#ifndef OMF_BINARY
#error "OMF_BINARY must name the command-line executable"
#endif

using namespace omf;
using verify::Verdict;

namespace {

const std::vector<double> kBetas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
constexpr std::uint64_t kSeed = 42;

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " | " << detail << std::endl;
}

std::string sci(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << v;
  return ss.str();
}

// Runs one criterion; an exception is a failure with its message as detail.
void criterion(int id, const std::string& title, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [pass, detail] = body();
    report(id, title, pass, detail);
  } catch (const std::exception& e) {
    report(id, title, false, std::string("exception: ") + e.what());
  }
}

double sup_rel(const FunctionDescriptor& a, const FunctionDescriptor& b, const std::vector<double>& xs) {
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, std::abs(a(x) - b(x)) / std::max(1.0, std::abs(b(x))));
  return worst;
}

// Tracks the worst report of a batch of suite runs.
struct SuiteTally {
  bool all_certified = true;
  double min_margin = std::numeric_limits<double>::infinity();
  std::string first_bad;

  void add(const verify::VerificationReport& r) {
    min_margin = std::min(min_margin, r.min_margin);
    if (r.verdict != Verdict::certified) {
      if (all_certified) first_bad = (r.function ? r.function->label() : r.suite) + " " + std::string(verify::to_string(r.verdict));
      all_certified = false;
    }
  }
  std::string summary(std::size_t reports) const {
    return std::to_string(reports) + " reports, " + (all_certified ? "all certified" : "first failure " + first_bad) +
           ", min statistic " + sci(min_margin);
  }
};

std::string run_command(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot start " + cmd);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

}  // namespace

int main() {
  const auto grid = oracle::log_grid();  // 200 points, [1e-2, 1e2]
  const auto catalog_all = catalog_instances();
  const auto regular = regular_catalog_instances();
  const auto nonregular = nonregular_catalog_instances();
  const DensityMatrix worked = DensityMatrix::diagonal({0.75, 0.25});

  criterion(1, "bijection golden pairs, sup-deviation <= 1e-10", [&] {
    double worst = oracle::sup_gap(tilde_transform(catalog("SLD")), oracle::rld, grid);
    worst = std::max(worst, oracle::sup_gap(tilde_transform(catalog("WY")), oracle::sqrt_fn, grid));
    for (double b : kBetas) {
      const auto g = tilde_transform(catalog("WYD", BetaParameter(b)));
      worst = std::max(worst, oracle::sup_gap(g, [b](double x) { return oracle::gbeta(b, x); }, grid));
    }
    return std::pair{worst <= 1e-10, "max deviation " + sci(worst) + " over 11 pairs"};
  });

  criterion(2, "round trips H(G(f)) = f and G(H(g)) = g, sup-deviation <= 1e-10", [&] {
    double worst = 0.0;
    for (const auto& f : regular) worst = std::max(worst, sup_rel(check_transform(tilde_transform(f)), f, grid));
    for (const auto& g : nonregular) worst = std::max(worst, sup_rel(tilde_transform(check_transform(g)), g, grid));
    const auto rep = verify::roundtrip_suite(regular, nonregular, verify::GridSpec::fixed(grid), 1e-10);
    const bool pass = worst <= 1e-10 && rep.verdict == Verdict::certified;
    return std::pair{pass, std::to_string(catalog_all.size()) + " catalog members, max relative deviation " + sci(worst) +
                               ", suite " + std::string(verify::to_string(rep.verdict))};
  });

  criterion(3, "g'(1) = 1/2 and -f(0) = g''(1) within 1e-6", [&] {
    double d1 = 0.0, d2 = 0.0;
    for (const auto& f : catalog_all) d1 = std::max(d1, std::abs(estimate_first_derivative_at_one(f) - 0.5));
    for (const auto& f : regular) {
      const auto g = tilde_transform(f);
      d1 = std::max(d1, std::abs(estimate_first_derivative_at_one(g) - 0.5));
      d2 = std::max(d2, std::abs(estimate_second_derivative_at_one(g) + limit_at_zero(f)));
    }
    return std::pair{d1 <= 1e-6 && d2 <= 1e-6, "max |g'(1) - 1/2| " + sci(d1) + ", max |g''(1) + f(0)| " + sci(d2)};
  });

  criterion(4, "operator monotonicity: Loewner and operator-pair suites", [&] {
    SuiteTally tally;
    for (const auto& f : catalog_all) {
      tally.add(verify::loewner_suite(f, 200, 12, kSeed, 1e-8));
      tally.add(verify::operator_pair_suite(f, {2, 3, 4, 5, 6}, 500, kSeed, 1e-8));
    }
    const auto probe = verify::square_probe();
    const bool loewner_refutes = verify::loewner_suite(probe, 200, 12, kSeed, 1e-8).verdict == Verdict::refuted;
    const bool pairs_refute =
        verify::operator_pair_suite(probe, {2, 3, 4, 5, 6}, 500, kSeed, 1e-8).verdict == Verdict::refuted;
    const auto fixed = verify::loewner_check(probe, verify::GridSpec::fixed({1.0, 2.0, 3.0}), 1e-8);
    const double witness = fixed.failures.empty() ? 0.0 : fixed.failures[0].statistic;
    const double gap = std::abs(witness - (6.0 - std::sqrt(42.0)));
    const bool pass = tally.all_certified && loewner_refutes && pairs_refute && fixed.verdict == Verdict::refuted &&
                      gap <= 1e-6;
    return std::pair{pass, tally.summary(2 * catalog_all.size()) + "; x^2 probe refuted by Loewner " +
                               (loewner_refutes ? "yes" : "no") + ", pairs " + (pairs_refute ? "yes" : "no") +
                               "; fixed-grid eigenvalue " + std::to_string(witness) + " (|diff| " + sci(gap) + ")"};
  });

  criterion(5, "metric / covariance identity, residual <= 1e-9 max(1,|lhs|)", [&] {
    SuiteTally tally;
    for (const auto& f : regular) tally.add(verify::identity_suite(f, 200, kSeed, 1e-9));
    const auto sides = crucial_identity_sides(catalog("SLD"), worked, pauli('x'), pauli('x'));
    const double inst = std::max(std::abs(sides.lhs - 0.25), std::abs(sides.rhs - 0.25));
    return std::pair{tally.all_certified && inst <= 1e-12,
                     tally.summary(regular.size()) + "; worked instance deviation " + sci(inst)};
  });

  criterion(6, "skew and WYD information", [&] {
    double closed = 0.0;
    for (double p : {0.6, 0.75, 0.9}) {
      const auto rho = DensityMatrix::diagonal({p, 1.0 - p});
      closed = std::max(closed, std::abs(skew_information(rho, pauli('x')) - std::pow(std::sqrt(p) - std::sqrt(1.0 - p), 2)));
    }
    double half = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
      const Index n = 2 + static_cast<Index>(s % 5);
      const auto rho = random_density(n, derive_seed(kSeed, s));
      const auto a = random_observable(n, derive_seed(kSeed + 1, s));
      half = std::max(half, std::abs(wyd_information(BetaParameter(0.5), rho, a) - skew_information(rho, a)));
    }
    SuiteTally tally;
    for (double b : kBetas) tally.add(verify::wyd_suite(BetaParameter(b), 200, kSeed, 1e-9));
    return std::pair{closed <= 1e-12 && half <= 1e-12 && tally.all_certified,
                     "closed-form deviation " + sci(closed) + ", beta=1/2 vs WY " + sci(half) + "; " +
                         tally.summary(kBetas.size())};
  });

  criterion(7, "determinant uncertainty inequalities, margins >= -1e-9", [&] {
    SuiteTally tally;
    tally.add(verify::uncertainty_suite(std::nullopt, 1000, kSeed, 1e-9));
    for (const auto& f : regular) tally.add(verify::uncertainty_suite(f, 1000, kSeed, 1e-9));
    const ObservableFamily fam({pauli('x'), pauli('y')});
    const auto st = uncertainty_check(worked, fam, UncertaintyMode::standard);
    const auto mt = uncertainty_check(worked, fam, UncertaintyMode::metric, catalog("SLD"));
    const double inst = std::max({std::abs(st.lhs_det - 1.0), std::abs(st.rhs_det - 0.25), std::abs(mt.rhs_det - 0.0625)});
    return std::pair{tally.all_certified && tally.min_margin >= -1e-9 && inst <= 1e-12,
                     tally.summary(1 + regular.size()) + "; worked instance deviation " + sci(inst)};
  });

  criterion(8, "measure machinery", [&] {
    const double sld = oracle::sup_gap(f_from_measure(AtomicMeasure::dirac(1.0)), oracle::sld, grid);
    const double rld = oracle::sup_gap(f_from_measure(AtomicMeasure::dirac(0.0)), oracle::rld, grid);
    const auto rc = construct_regular_from_nonregular(AtomicMeasure::dirac(1.0));
    const bool nu_ok = rc.nu.size() == 1 && rc.nu.atoms()[0].lambda == 1.0 && std::abs(rc.nu.atoms()[0].weight - 1.0) <= 1e-15;
    const double f_dev = oracle::sup_gap(rc.f, oracle::sld, grid);
    const double residual = sup_rel(tilde_transform(rc.f), rc.g, grid);
    bool rejected = false;
    try {
      construct_regular_from_nonregular(AtomicMeasure({{0.0, 0.3}, {1.0, 0.7}}));
    } catch (const PreconditionError& e) {
      rejected = std::string(e.what()).find("atom at zero") != std::string::npos;
    }
    const bool pass = sld <= 1e-14 && rld <= 1e-14 && std::abs(rc.C - 0.5) <= 1e-15 && nu_ok && f_dev <= 1e-14 &&
                      residual <= 1e-12 && rejected;
    return std::pair{pass, "delta_1 " + sci(sld) + ", delta_0 " + sci(rld) + ", C " + std::to_string(rc.C) +
                               ", f vs SLD " + sci(f_dev) + ", tilde residual " + sci(residual) +
                               ", atom at zero rejected " + (rejected ? "yes" : "no")};
  });

  criterion(9, "metric normalization Tr(rho^-1 A^2) for commuting A, rho", [&] {
    std::mt19937_64 gen(kSeed);
    std::uniform_real_distribution<double> u(0.05, 1.0), v(-2.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
      std::vector<double> p(n), d(n);
      double total = 0.0;
      for (auto& x : p) total += (x = u(gen));
      for (auto& x : p) x /= total;
      for (auto& x : d) x = v(gen);
      double expect = 0.0;
      for (std::size_t i = 0; i < n; ++i) expect += d[i] * d[i] / p[i];
      const auto rho = DensityMatrix::diagonal(p, 1e-6);
      const auto a = HermitianMatrix::diagonal(d);
      for (const auto& f : catalog_all) {
        worst = std::max(worst, std::abs(monotone_metric(f, rho, a, a).real() - expect) / std::max(1.0, expect));
      }
    }
    const double inst = std::abs(monotone_metric(catalog("SLD"), worked, pauli('z'), pauli('z')).real() - 16.0 / 3.0);
    return std::pair{worst <= 1e-10 && inst <= 1e-12,
                     "max relative deviation " + sci(worst) + " over 20 states x " + std::to_string(catalog_all.size()) +
                         " functions; 16/3 instance deviation " + sci(inst)};
  });

  criterion(10, "matrix mean axioms incl. transformer inequality", [&] {
    SuiteTally tally;
    for (const auto& f : catalog_all) tally.add(verify::mean_axiom_suite(f, 200, kSeed, 1e-8));
    // The continuity sample is a Lipschitz ratio against -1e3, so the minimum is not a tolerance.
    return std::pair{tally.all_certified, tally.summary(catalog_all.size()) + " (continuity ratio bound 1e3)"};
  });

  criterion(11, "concavity of d_f and tilde f, 500 probes per regular f", [&] {
    SuiteTally tally;
    for (const auto& f : regular) tally.add(verify::concavity_probe_d(f, 500, kSeed, 1e-9));
    return std::pair{tally.all_certified, tally.summary(regular.size())};
  });

  criterion(12, "determinism of 'verify all --seed 42 --json'", [&] {
    const std::string cmd = std::string("\"") + OMF_BINARY + "\" verify all --seed 42 --json";
    int s1 = 0, s2 = 0;
    const auto first = run_command(cmd, s1);
    const auto second = run_command(cmd, s2);
    std::size_t lines = 0;
    for (char c : first) lines += c == '\n';
    const bool pass = !first.empty() && first == second && s1 == 0 && s2 == 0 && lines >= 7;
    return std::pair{pass, std::to_string(first.size()) + " bytes, " + std::to_string(lines) + " reports, identical " +
                               (first == second ? "yes" : "no") + ", exit " + std::to_string(s1) + "/" +
                               std::to_string(s2)};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
