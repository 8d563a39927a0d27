#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "equidist/errors.hpp"
#include "equidist/json_io.hpp"
#include "support/helpers.hpp"

using namespace equidist;
using testing::gen;
using testing::poly;
using testing::q;

namespace {

std::string error_of(const std::function<void()>& action) {
  try {
    action();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse_json reports the byte offset") {
  CHECK(parse_json("{\"a\": 1}")["a"] == 1);
  const auto message = error_of([] { parse_json("{\"a\": }", "spec.json"); });
  CHECK(message.rfind("spec.json: malformed JSON at byte 7", 0) == 0);
}

TEST_CASE("polynomial specs") {
  const auto doc = parse_json(R"({"n": 2, "terms": [{"exp": [1,1], "coef": {"rat":"0/1","irr":{"sqrt2":"1/1"}}}]})");
  const auto f = polynomial_from_json(doc, 64);
  CHECK(f == poly(2, {{{1, 1}, gen("sqrt2")}}));
  CHECK(polynomial_from_json(to_json(f), 64) == f);
  const auto g = poly(3, {{{2, 0, 1}, ExactScalar(q(-3, 4)) + gen("pi", q(1, 5))}, {{0, 0, 0}, ExactScalar(7)}});
  CHECK(polynomial_from_json(to_json(g), 64) == g);
  CHECK(to_json(ExactScalar(q(1, 2)) + gen("e", -2)).dump() ==
        R"({"rat":"1/2","irr":{"e":"-2/1"}})");
}

TEST_CASE("scalar parsing") {
  const auto set = testing::builtins();
  CHECK(scalar_from_json(Json("3/6"), set, "$") == ExactScalar(q(1, 2)));
  CHECK(scalar_from_json(Json(4), set, "$") == ExactScalar(4));
  CHECK(scalar_from_json(parse_json(R"({"irr": {"sqrt3": "2"}})"), set, "$") == gen("sqrt3", 2));
}

TEST_CASE("malformed specs name the path and field") {
  const auto bad = [](const std::string& text) {
    return error_of([&] { polynomial_from_json(parse_json(text), 64); });
  };
  CHECK(bad(R"({"n": 2, "terms": [{"exp": [1,1], "coef": {"rat": "x/2"}}]})")
            .rfind("$.terms[0].coef.rat:", 0) == 0);
  CHECK(bad(R"({"n": 2, "terms": [{"exp": [1], "coef": 1}]})").rfind("$.terms[0].exp:", 0) == 0);
  CHECK(bad(R"({"n": 2, "terms": [{"exp": [1,0], "coef": {"irr": {"kappa": "1"}}}]})")
            .rfind("$.terms[0].coef.irr.kappa:", 0) == 0);
  CHECK(bad(R"({"n": 2, "terms": [{"exp": [1,0], "coef": {"rat": "1", "im": "2"}}]})")
            .rfind("$.terms[0].coef.im:", 0) == 0);
  CHECK(bad(R"({"terms": []})").rfind("$.n:", 0) == 0);
  CHECK(bad(R"({"n": 1, "terms": [{"coef": 1}]})").rfind("$.terms[0].exp:", 0) == 0);
  CHECK(bad(R"({"n": 1, "terms": [], "generators": {"kappa": "0.5"}})").rfind("$.generators:", 0) == 0);
}

TEST_CASE("declared generators") {
  const auto doc = parse_json(R"({"n": 1, "generators": {"sqrt7": "2.6457513110645905905016157536392604257102591830824501803683344592010688232302836277603928864745436106"},
                                  "terms": [{"exp": [1], "coef": {"irr": {"sqrt7": "1"}}}]})");
  const auto f = polynomial_from_json(doc, 64);
  CHECK(f.degree() == 1);
  CHECK_FALSE(f.terms().begin()->second.is_rational());
}

TEST_CASE("lp specs and histograms") {
  const auto spec = lp_spec_from_json(parse_json(R"({"p": 2.5, "n": 3})"));
  CHECK(spec.p() == 2.5);
  CHECK(spec.dimension() == 3);
  CHECK(error_of([] { lp_spec_from_json(parse_json(R"({"p": 1.0, "n": 3})")); }) != "");
  CHECK(error_of([] { lp_spec_from_json(parse_json(R"({"p": "two", "n": 3})")); })
            .rfind("$.p:", 0) == 0);
  const auto m = EmpiricalCircleMeasure::from_counts({3, 0, 5, 1});
  CHECK(to_json(m).dump() == R"({"bins":[3,0,5,1],"total":9})");
  CHECK(histogram_from_json(to_json(m)) == m);
  CHECK(error_of([] { histogram_from_json(parse_json(R"({"bins": [1, 2], "total": 4})")); })
            .rfind("$.total:", 0) == 0);
}

TEST_CASE("reduction trees serialize") {
  const auto node = reduce_for_equidistribution(poly(1, {{{2}, q(1, 2)}}));
  const auto json = to_json(node);
  CHECK(json["kind"] == "residue_split");
  CHECK(json["modulus"] == 2);
  CHECK(json["children"].size() == 2);
  CHECK(json["children"][1]["residue"] == Json::array({1}));
  CHECK(json["children"][1]["value"]["rat"] == "1/2");
}

TEST_CASE("csv") {
  std::istringstream in("# values\n0.25\n\n0.5\n1e-3\n");
  CHECK(read_sequence_csv(in, "seq.csv") == std::vector<double>{0.25, 0.5, 0.001});
  std::istringstream bad("0.25\nnope\n");
  CHECK(error_of([&] { read_sequence_csv(bad, "seq.csv"); }).rfind("seq.csv:2:", 0) == 0);
  std::ostringstream out;
  const std::vector<double> values{0.1, 1.0 / 3.0, 0.0};
  write_sequence_csv(out, values);
  std::istringstream back(out.str());
  CHECK(read_sequence_csv(back, "x") == values);

  const std::vector<IntVector> points{{1, -2}, {0, 0}, {30, 4}};
  std::ostringstream pout;
  write_points_csv(pout, points);
  CHECK(pout.str() == "1,-2\n0,0\n30,4\n");
  std::istringstream pin(pout.str());
  CHECK(read_points_csv(pin, "p") == points);
  std::istringstream ragged("1,2\n3\n");
  CHECK(error_of([&] { read_points_csv(ragged, "p.csv"); }).rfind("p.csv:2:", 0) == 0);
}

TEST_CASE("format_double round-trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.5) == "0.5");
  for (double v : {1.0 / 3.0, std::sqrt(2.0), 1e-300, 12345.678})
    CHECK(std::stod(format_double(v)) == v);
}
