#pragma once

// Command-line front end. Exit codes: 0 success / certified, 1 refuted,
// 2 inconclusive, 64 usage or precondition error.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omf/function.hpp"
#include "omf/hermitian.hpp"
#include "omf/measure.hpp"

namespace omf::cli {

constexpr int kExitCertified = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Function specs: catalog names ("SLD", "WYD(0.3)"), transform chains
// ("tilde(WY)", "check(sharp(SLD))"), the probes "x^2-probe" / "x^3-probe",
// and user expressions "expr:<expression>". `beta` fills in WYD / GBeta when
// no argument is given and substitutes 'beta' in expressions.
FunctionDescriptor parse_function_spec(std::string_view spec,
                                       std::optional<double> beta = std::nullopt);

// Matrix literals: "diag:a,b,...", "pauli:x|y|z", "identity:n", inline JSON
// starting with '{', or a path to a JSON file.
HermitianMatrix parse_matrix(std::string_view literal);
DensityMatrix parse_density(std::string_view literal, double eigen_floor);
// Inline JSON ({"atoms": ...} or a bare [[lambda, weight], ...]) or a file path.
AtomicMeasure parse_measure(std::string_view inline_or_path);
// Splits comma-joined literals, keeping "diag:a,b" together.
std::vector<HermitianMatrix> parse_family(const std::vector<std::string>& items);

}  // namespace omf::cli
