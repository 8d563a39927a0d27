#include "equidist/json_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "equidist/errors.hpp"

namespace equidist {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ParseError(path + ": " + message);
}

const Json& require(const Json& object, const std::string& key, const std::string& path) {
  if (!object.is_object()) fail(path, "expected an object");
  const auto it = object.find(key);
  if (it == object.end()) fail(path + "." + key, "missing field");
  return *it;
}

std::string require_string(const Json& value, const std::string& path) {
  if (!value.is_string()) fail(path, "expected a string");
  return value.get<std::string>();
}

Rational rational_field(const Json& value, const std::string& path) {
  if (value.is_number_integer()) return Rational(value.get<long>());
  const std::string text = require_string(value, path);
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

double number_field(const Json& value, const std::string& path) {
  if (!value.is_number()) fail(path, "expected a number");
  return value.get<double>();
}

std::size_t count_field(const Json& value, const std::string& path) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
    fail(path, "expected a non-negative integer");
  return value.get<std::size_t>();
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::string kind_name(ReductionNode::Kind kind) {
  switch (kind) {
    case ReductionNode::Kind::kIrrationalDirection:
      return "irrational_direction";
    case ReductionNode::Kind::kResidueSplit:
      return "residue_split";
    case ReductionNode::Kind::kRationalConstant:
      return "rational_constant";
  }
  return "rational_constant";
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ": malformed JSON at byte " + std::to_string(e.byte) +
                     ": " + e.what());
  }
}

GeneratorSetPtr generators_from_json(const Json& document, int precision) {
  std::map<std::string, std::string> declarations;
  for (const auto& name : GeneratorSet::builtin_names()) declarations[name] = "builtin";
  if (document.is_object() && document.contains("generators")) {
    const Json& generators = document.at("generators");
    if (!generators.is_object()) fail("$.generators", "expected an object");
    for (const auto& [name, value] : generators.items())
      declarations[name] = require_string(value, "$.generators." + name);
  }
  try {
    return GeneratorSet::from_declarations(declarations, precision);
  } catch (const InvalidGenerator& e) {
    fail("$.generators", e.what());
  }
}

ExactScalar scalar_from_json(const Json& value, const GeneratorSetPtr& set,
                             const std::string& path) {
  if (value.is_string() || value.is_number_integer()) return rational_field(value, path);
  if (!value.is_object()) fail(path, "expected a scalar object {\"rat\", \"irr\"}");
  Rational rational = 0;
  if (value.contains("rat")) rational = rational_field(value.at("rat"), path + ".rat");
  ExactScalar::IrrationalParts parts;
  if (value.contains("irr")) {
    const Json& irr = value.at("irr");
    if (!irr.is_object()) fail(path + ".irr", "expected an object");
    for (const auto& [name, coefficient] : irr.items()) {
      const std::string field = path + ".irr." + name;
      if (!set->contains(name)) fail(field, "undeclared generator '" + name + "'");
      parts[name] = rational_field(coefficient, field);
    }
  }
  for (const auto& [key, unused] : value.items())
    if (key != "rat" && key != "irr") fail(path + "." + key, "unknown field");
  return ExactScalar::make(set, rational, parts);
}

Json to_json(const ExactScalar& value) {
  Json out;
  out["rat"] = to_string(value.rational_part());
  Json irr = Json::object();
  for (const auto& [name, coefficient] : value.irrational_parts())
    irr[name] = to_string(coefficient);
  out["irr"] = std::move(irr);
  return out;
}

Polynomial polynomial_from_json(const Json& document, int precision) {
  const GeneratorSetPtr set = generators_from_json(document, precision);
  const std::size_t n = count_field(require(document, "n", "$"), "$.n");
  if (n == 0) fail("$.n", "dimension must be at least 1");
  const Json& terms = require(document, "terms", "$");
  if (!terms.is_array()) fail("$.terms", "expected an array");
  Polynomial f(n);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string path = "$.terms[" + std::to_string(t) + "]";
    const Json& exp = require(terms[t], "exp", path);
    if (!exp.is_array()) fail(path + ".exp", "expected an array");
    if (exp.size() != n)
      fail(path + ".exp", "expected " + std::to_string(n) + " exponents, got " +
                              std::to_string(exp.size()));
    std::vector<unsigned> exponents;
    for (std::size_t i = 0; i < exp.size(); ++i)
      exponents.push_back(static_cast<unsigned>(
          count_field(exp[i], path + ".exp[" + std::to_string(i) + "]")));
    const ExactScalar coef =
        scalar_from_json(require(terms[t], "coef", path), set, path + ".coef");
    f.add_term(MultiIndex(std::move(exponents)), coef);
  }
  return f;
}

Json to_json(const Polynomial& f) {
  Json out;
  out["n"] = f.dimension();
  Json terms = Json::array();
  for (const auto& [index, coefficient] : f.terms()) {
    Json term;
    term["exp"] = index.exponents();
    term["coef"] = to_json(coefficient);
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

LpNormSpec lp_spec_from_json(const Json& document) {
  const double p = number_field(require(document, "p", "$"), "$.p");
  const std::size_t n = count_field(require(document, "n", "$"), "$.n");
  try {
    return LpNormSpec(p, n);
  } catch (const DomainError& e) {
    fail("$", e.what());
  }
}

Json to_json(const EmpiricalCircleMeasure& measure) {
  Json out;
  out["bins"] = measure.bins();
  out["total"] = measure.total();
  return out;
}

EmpiricalCircleMeasure histogram_from_json(const Json& document) {
  const Json& bins = require(document, "bins", "$");
  if (!bins.is_array()) fail("$.bins", "expected an array");
  std::vector<std::uint64_t> counts;
  for (std::size_t i = 0; i < bins.size(); ++i)
    counts.push_back(count_field(bins[i], "$.bins[" + std::to_string(i) + "]"));
  if (counts.size() < 2) fail("$.bins", "need at least 2 bins");
  auto measure = EmpiricalCircleMeasure::from_counts(std::move(counts));
  if (document.contains("total") &&
      count_field(document.at("total"), "$.total") != measure.total())
    fail("$.total", "does not equal the sum of the bins");
  return measure;
}

Json to_json(const DiscrepancyReport& report) {
  Json out;
  out["extreme"] = report.extreme;
  out["star"] = report.star;
  out["count"] = report.count;
  return out;
}

Json to_json(const UniformDistances& distances) {
  Json out;
  out["tv"] = distances.tv;
  out["ks"] = distances.ks;
  out["disc"] = distances.disc;
  return out;
}

Json to_json(const EquidistributionTrend& trend) {
  Json out;
  out["radii"] = trend.radii;
  out["discrepancies"] = trend.discrepancies;
  out["star_discrepancies"] = trend.star_discrepancies;
  out["counts"] = trend.counts;
  return out;
}

Json to_json(const ReductionNode& node) {
  Json out;
  out["kind"] = kind_name(node.kind);
  if (!node.residue.empty()) out["residue"] = node.residue;
  switch (node.kind) {
    case ReductionNode::Kind::kIrrationalDirection:
      out["direction"] = node.direction;
      out["leading_value"] = to_json(node.leading_value);
      break;
    case ReductionNode::Kind::kResidueSplit: {
      out["modulus"] = node.modulus;
      Json children = Json::array();
      for (const auto& child : node.children) children.push_back(to_json(child));
      out["children"] = std::move(children);
      break;
    }
    case ReductionNode::Kind::kRationalConstant:
      out["value"] = to_json(node.polynomial.constant_term());
      break;
  }
  return out;
}

Json to_json(const PushforwardGate& gate) {
  Json out;
  out["classification"] = to_string(gate.classification);
  out["max_density_ratio"] = gate.max_density_ratio;
  out["distances"] = to_json(gate.distances);
  out["histogram"] = to_json(gate.measure);
  return out;
}

Json to_json(const FiberProbe& probe) {
  Json out;
  out["base"] = probe.base;
  out["direction"] = probe.direction;
  out["length"] = probe.length;
  out["taylor"] = probe.taylor;
  out["max_error"] = probe.max_error;
  out["max_second_derivative"] = probe.max_second_derivative;
  return out;
}

Json to_json(const GridSupremum& sup) {
  Json out;
  out["value"] = sup.value;
  out["grid"] = sup.grid;
  out["argmax"] = sup.argmax;
  return out;
}

std::vector<double> read_sequence_csv(std::istream& in, const std::string& source) {
  std::vector<double> values;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string field = trim(line);
    if (!field.empty() && field.back() == ',') field.pop_back();
    if (field.empty() || field.front() == '#') continue;
    double value = 0.0;
    const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
    if (result.ec != std::errc() || result.ptr != field.data() + field.size() ||
        !std::isfinite(value))
      throw ParseError(source + ":" + std::to_string(number) + ": not a finite number: '" +
                       field + "'");
    values.push_back(value);
  }
  return values;
}

void write_sequence_csv(std::ostream& out, const std::vector<double>& values) {
  for (double v : values) out << format_double(v) << '\n';
}

std::vector<IntVector> read_points_csv(std::istream& in, const std::string& source) {
  std::vector<IntVector> points;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    IntVector point;
    std::stringstream fields(text);
    std::string field;
    while (std::getline(fields, field, ',')) {
      field = trim(field);
      std::int64_t value = 0;
      const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
      if (result.ec != std::errc() || result.ptr != field.data() + field.size())
        throw ParseError(source + ":" + std::to_string(number) +
                         ": not an integer: '" + field + "'");
      point.push_back(value);
    }
    if (!points.empty() && points.front().size() != point.size())
      throw ParseError(source + ":" + std::to_string(number) +
                       ": inconsistent number of coordinates");
    points.push_back(std::move(point));
  }
  return points;
}

void write_points_csv(std::ostream& out, const std::vector<IntVector>& points) {
  for (const auto& point : points) {
    for (std::size_t i = 0; i < point.size(); ++i) out << (i ? "," : "") << point[i];
    out << '\n';
  }
}

}  // namespace equidist
