#pragma once

// JSON and CSV formats used by the command-line tool. Reports use ordered
// keys so that serialization is byte-for-byte reproducible.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "equidist/discrepancy.hpp"
#include "equidist/exact_numbers.hpp"
#include "equidist/experiments.hpp"
#include "equidist/lp_norm.hpp"
#include "equidist/measures.hpp"
#include "equidist/polynomial.hpp"
#include "equidist/reduction.hpp"

namespace equidist {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

/// Parses JSON text; ParseError names `source` and the byte offset.
Json parse_json(const std::string& text, const std::string& source = "<input>");

/// Optional top-level {"generators": {...}}; the built-in set otherwise.
GeneratorSetPtr generators_from_json(const Json& document, int precision);

/// {"rat": "p/q", "irr": {"sqrt2": "p/q"}}. A bare string or integer is read
/// as a rational. Errors report the JSON path, e.g. $.terms[0].coef.rat.
ExactScalar scalar_from_json(const Json& value, const GeneratorSetPtr& set,
                             const std::string& path = "$");
Json to_json(const ExactScalar& value);

/// {"n": 2, "terms": [{"exp": [1, 1], "coef": {...}}], "generators": {...}}.
Polynomial polynomial_from_json(const Json& document, int precision);
Json to_json(const Polynomial& f);

/// {"p": 2.0, "n": 3}.
LpNormSpec lp_spec_from_json(const Json& document);

/// {"bins": [...], "total": N}.
Json to_json(const EmpiricalCircleMeasure& measure);
EmpiricalCircleMeasure histogram_from_json(const Json& document);

Json to_json(const DiscrepancyReport& report);
Json to_json(const UniformDistances& distances);
Json to_json(const EquidistributionTrend& trend);
Json to_json(const ReductionNode& node);
Json to_json(const PushforwardGate& gate);
Json to_json(const FiberProbe& probe);
Json to_json(const GridSupremum& sup);

/// One value per line; blank lines and lines starting with '#' are skipped.
std::vector<double> read_sequence_csv(std::istream& in, const std::string& source);
void write_sequence_csv(std::ostream& out, const std::vector<double>& values);

/// One comma-separated integer point per line.
std::vector<IntVector> read_points_csv(std::istream& in, const std::string& source);
void write_points_csv(std::ostream& out, const std::vector<IntVector>& points);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

}  // namespace equidist
