#pragma once

// JSON wire formats.
//
//   descriptor  {"name": s, "beta": x|null, "provenance": s}
//   measure     {"atoms": [[lambda, weight], ...]}
//   matrix      {"dim": n, "entries": [[[re, im], ...], ...]}   row-major
//   density     matrix + {"trace_tol": 1e-12}
//   inequality  {"mode", "f", "lhs_det", "rhs_det", "margin", "satisfied", "seed", "dim", "N"}
//   report      {"suite", "function", "trials", "verdict", "min_margin", "witnesses"}

#include <json.hpp>

#include "omf/function.hpp"
#include "omf/hermitian.hpp"
#include "omf/info_metrics.hpp"
#include "omf/measure.hpp"
#include "omf/verify.hpp"

namespace omf {

using Json = nlohmann::ordered_json;

Json to_json(const FunctionDescriptor& f);

Json to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const Json& j);

Json to_json(const HermitianMatrix& m);
Json to_json(const DensityMatrix& rho);
// Accepts {"dim", "entries"}; entries may be [re, im] pairs or plain reals.
// Rejects non-Hermitian input beyond 1e-12.
HermitianMatrix hermitian_from_json(const Json& j);
DensityMatrix density_from_json(const Json& j, double eigen_floor = DensityMatrix::kDefaultEigenFloor);

Json to_json(const InequalityReport& r);
Json to_json(const verify::VerificationReport& r);

}  // namespace omf
