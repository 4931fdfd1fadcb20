#include "omf/serialize.hpp"

#include <cmath>

#include "omf/error.hpp"

namespace omf {

namespace {

Json beta_json(std::optional<double> beta) { return beta ? Json(*beta) : Json(nullptr); }

// Infinite margins (suites with no samples) serialize as null.
Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const FunctionDescriptor& f) {
  return Json{{"name", f.name()}, {"beta", beta_json(f.beta())},
              {"provenance", std::string(to_string(f.provenance()))}};
}

Json to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) atoms.push_back(Json::array({a.lambda, a.weight}));
  return Json{{"atoms", atoms}};
}

AtomicMeasure measure_from_json(const Json& j) {
  const Json& atoms = j.is_object() ? j.at("atoms") : j;
  if (!atoms.is_array()) {
    throw PreconditionError("measure_from_json", "expected {\"atoms\": [[lambda, weight], ...]}");
  }
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    if (!a.is_array() || a.size() != 2) {
      throw PreconditionError("measure_from_json", "each atom must be a [lambda, weight] pair");
    }
    out.push_back({a[0].get<double>(), a[1].get<double>()});
  }
  return AtomicMeasure(std::move(out));
}

Json to_json(const HermitianMatrix& m) {
  Json rows = Json::array();
  for (Index j = 0; j < m.dim(); ++j) {
    Json row = Json::array();
    for (Index k = 0; k < m.dim(); ++k) row.push_back(Json::array({m(j, k).real(), m(j, k).imag()}));
    rows.push_back(std::move(row));
  }
  return Json{{"dim", m.dim()}, {"entries", rows}};
}

Json to_json(const DensityMatrix& rho) {
  Json j = to_json(rho.hermitian());
  j["trace_tol"] = 1e-12;
  return j;
}

HermitianMatrix hermitian_from_json(const Json& j) {
  const auto n = j.at("dim").get<Index>();
  const Json& rows = j.at("entries");
  if (n < 1 || !rows.is_array() || static_cast<Index>(rows.size()) != n) {
    throw PreconditionError("hermitian_from_json", "entries must have dim rows");
  }
  CMatrix m(n, n);
  for (Index r = 0; r < n; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw PreconditionError("hermitian_from_json", "entries must have dim columns");
    }
    for (Index c = 0; c < n; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw PreconditionError("hermitian_from_json", "entries must be numbers or [re, im] pairs");
      }
    }
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw PreconditionError("hermitian_from_json", "matrix is not Hermitian within 1e-12");
  }
  return HermitianMatrix(m);
}

DensityMatrix density_from_json(const Json& j, double eigen_floor) {
  return DensityMatrix(hermitian_from_json(j), eigen_floor);
}

Json to_json(const InequalityReport& r) {
  return Json{{"mode", r.mode},
              {"f", r.function ? Json(*r.function) : Json(nullptr)},
              {"lhs_det", r.lhs_det},
              {"rhs_det", r.rhs_det},
              {"margin", r.margin},
              {"satisfied", r.satisfied},
              {"seed", r.seed},
              {"dim", r.dim},
              {"N", r.count}};
}

Json to_json(const verify::VerificationReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.failures) {
    Json wj{{"seed", w.seed}, {"statistic", w.statistic}, {"threshold", w.threshold},
            {"check", w.check}};
    if (!w.grid.empty()) wj["grid"] = w.grid;
    witnesses.push_back(std::move(wj));
  }
  Json fn = nullptr;
  if (r.function) {
    fn = Json{{"name", r.function->name}, {"beta", beta_json(r.function->beta)},
              {"provenance", r.function->provenance}};
  }
  return Json{{"suite", r.suite},
              {"function", fn},
              {"trials", r.trials},
              {"verdict", std::string(verify::to_string(r.verdict))},
              {"min_margin", number_or_null(r.min_margin)},
              {"tolerance", r.tolerance},
              {"witnesses", witnesses}};
}

}  // namespace omf
