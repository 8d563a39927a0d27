#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "equidist/discrepancy.hpp"
#include "equidist/errors.hpp"
#include "equidist/experiments.hpp"
#include "equidist/json_io.hpp"
#include "equidist/lattice_geometry.hpp"
#include "equidist/lp_norm.hpp"
#include "equidist/measures.hpp"
#include "equidist/run_config.hpp"

namespace equidist::cli {

namespace {

// Thrown for argument combinations CLI11 cannot validate by itself.
class UsageError : public std::runtime_error {
 public:
  UsageError(const CLI::App* app, const std::string& message)
      : std::runtime_error(message), app(app) {}
  const CLI::App* app;
};

struct Options {
  RunConfig config = RunConfig::from_environment();
  std::string out;
  std::string in;
  std::string spec;
  std::string svg;
  std::string csv;
  std::string point;
  std::int64_t h = 1;
  std::int64_t K = 16;
  std::string a = "sqrt2";
  unsigned d = 1;
  std::size_t N = 1000;
  std::vector<std::size_t> ladder;
  double eps = 0.1;
  std::size_t dim = 2;
  double radius = 10.0;
  std::vector<double> cap_center;
  double cap_angle = 0.0;
  std::vector<double> radii;
  double p = 2.0;
  std::size_t j = 1;
  std::size_t samples = kDefaultGateSamples;
  std::size_t probes = 32;
  double T = 1000.0;
  std::size_t N0 = 10;
  std::string fn = "lp";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

Json read_json_file(const std::string& path) {
  const Json document = parse_json(read_file(path), path);
  return document;
}

std::vector<double> read_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_sequence_csv(in, path);
}

Json report_header(const std::string& command, const RunConfig& config) {
  Json report;
  report["schema"] = kReportSchema;
  report["command"] = command;
  report["seed"] = config.seed;
  return report;
}

Json thresholds_json(const ExperimentThresholds& t) {
  Json out;
  out["version"] = ExperimentThresholds::kVersion;
  out["poly_final"] = t.poly_final;
  out["lp_final"] = t.lp_final;
  out["weyl1d_final"] = t.weyl1d_final;
  out["a_set_final"] = t.a_set_final;
  out["trend_slack"] = t.trend_slack;
  return out;
}

std::optional<SphericalCap> cap_from(const Options& o, const CLI::App* app,
                                     std::size_t n) {
  if (o.cap_center.empty()) {
    if (o.cap_angle != 0.0) throw UsageError(app, "--cap-angle needs --cap-center");
    return std::nullopt;
  }
  if (o.cap_center.size() != n)
    throw UsageError(app, "--cap-center has " + std::to_string(o.cap_center.size()) +
                              " coordinates, expected " + std::to_string(n));
  if (!(o.cap_angle > 0.0)) throw UsageError(app, "--cap-angle must be positive");
  return SphericalCap::from_direction(o.cap_center, o.cap_angle);
}

ExactScalar parse_scalar_argument(const std::string& text, int precision) {
  const GeneratorSetPtr set = GeneratorSet::builtin(precision);
  if (!text.empty() && text.front() == '{')
    return scalar_from_json(parse_json(text, "--a"), set, "--a");
  if (set->contains(text)) return ExactScalar::generator(set, text);
  return ExactScalar(parse_rational(text));
}

std::size_t coordinate_index(const Options& o, const CLI::App* app, std::size_t n) {
  if (o.j < 1 || o.j > n)
    throw UsageError(app, "--j must lie in 1.." + std::to_string(n));
  return o.j - 1;
}

// ---------------------------------------------------------------------------

struct Outcome {
  Json report;
  int code = kExitSuccess;
};

Outcome run_eval(const Options& o, const CLI::App* app) {
  if (o.spec.empty()) throw UsageError(app, "--spec is required");
  const Json document = read_json_file(o.spec);
  std::vector<IntVector> points;
  if (!o.in.empty()) {
    std::ifstream in(o.in);
    if (!in) throw Error("cannot open '" + o.in + "'");
    points = read_points_csv(in, o.in);
  } else if (!o.point.empty()) {
    std::istringstream line(o.point);
    points = read_points_csv(line, "--point");
  } else {
    throw UsageError(app, "give --point or --in");
  }
  Outcome outcome{report_header("eval", o.config)};
  Json results = Json::array();
  const bool is_lp = document.is_object() && document.contains("p");
  if (is_lp) {
    const LpNormSpec spec = [&] {
      try {
        return lp_spec_from_json(document);
      } catch (const ParseError& e) {
        throw ParseError(o.spec + ": " + e.what());
      }
    }();
    for (const auto& point : points) {
      if (point.size() != spec.dimension())
        throw DimensionMismatch("point has " + std::to_string(point.size()) +
                                " coordinates, spec has n = " +
                                std::to_string(spec.dimension()));
      std::vector<double> x(point.begin(), point.end());
      const double value = lp_eval(spec, x);
      Json entry;
      entry["point"] = point;
      entry["value"] = value;
      entry["mod1"] = value - std::floor(value) >= 1.0 ? 0.0 : value - std::floor(value);
      results.push_back(std::move(entry));
    }
  } else {
    const Polynomial f = [&] {
      try {
        return polynomial_from_json(document, o.config.precision);
      } catch (const ParseError& e) {
        throw ParseError(o.spec + ": " + e.what());
      }
    }();
    for (const auto& point : points) {
      const ExactScalar value = f.evaluate(point);
      Json entry;
      entry["point"] = point;
      entry["value"] = to_json(value);
      entry["mod1"] = mod_one(value);
      results.push_back(std::move(entry));
    }
  }
  outcome.report["results"] = std::move(results);
  return outcome;
}

Outcome run_discrepancy(const Options& o, const CLI::App* app) {
  if (o.in.empty()) throw UsageError(app, "--in is required");
  const auto sequence = ModOneSequence::from_reals(read_sequence(o.in));
  Outcome outcome{report_header("discrepancy", o.config)};
  const DiscrepancyReport report = extreme_discrepancy(sequence);
  outcome.report["extreme"] = report.extreme;
  outcome.report["star"] = report.star;
  outcome.report["count"] = report.count;
  return outcome;
}

Outcome run_weyl_sum(const Options& o, const CLI::App* app) {
  if (o.in.empty()) throw UsageError(app, "--in is required");
  if (o.h == 0) throw UsageError(app, "--h must be nonzero");
  const auto sequence = ModOneSequence::from_reals(read_sequence(o.in));
  Outcome outcome{report_header("weyl-sum", o.config)};
  outcome.report["h"] = o.h;
  outcome.report["count"] = sequence.size();
  outcome.report["weyl_sum"] = weyl_sum(sequence, o.h);
  return outcome;
}

Outcome run_et_bound(const Options& o, const CLI::App* app) {
  if (o.in.empty()) throw UsageError(app, "--in is required");
  if (o.K < 1) throw UsageError(app, "--K must be at least 1");
  const auto sequence = ModOneSequence::from_reals(read_sequence(o.in));
  Outcome outcome{report_header("et-bound", o.config)};
  outcome.report["K"] = o.K;
  outcome.report["constant"] = kErdosTuranConstant;
  outcome.report["bound"] = erdos_turan_bound(sequence, o.K);
  outcome.report["extreme"] = extreme_discrepancy(sequence).extreme;
  return outcome;
}

Outcome run_a_set(const Options& o, const CLI::App* app) {
  if (o.N < 1) throw UsageError(app, "--N must be at least 1");
  if (o.d < 1) throw UsageError(app, "--d must be at least 1");
  const ExactScalar a = parse_scalar_argument(o.a, o.config.precision);
  const double a_value = mod_one(a);
  const std::size_t exit =
      a_set_exit_step(a_value, o.d, o.N, o.eps, o.config.grid, kDefaultGridBudget,
                      o.config.threads);
  const RefinedSupremum last = g_k_sup_refined(a_value, o.d, o.N, o.config.grid,
                                               kDefaultGridBudget, o.config.threads);
  Outcome outcome{report_header("a-set", o.config)};
  outcome.report["a"] = to_json(a);
  outcome.report["d"] = o.d;
  outcome.report["N"] = o.N;
  outcome.report["eps"] = o.eps;
  outcome.report["grid"] = o.config.grid;
  outcome.report["in_A"] = exit > o.N;
  if (exit <= o.N)
    outcome.report["exit_step"] = exit;
  else
    outcome.report["exit_step"] = nullptr;
  outcome.report["g_N_sup"] = to_json(last.coarse);
  outcome.report["g_N_sup_refined"] = to_json(last.fine);
  return outcome;
}

Outcome run_enumerate(const Options& o, const CLI::App* app) {
  if (o.dim < 1) throw UsageError(app, "--dim must be at least 1");
  const auto cap = cap_from(o, app, o.dim);
  const LatticeRegion region =
      cap ? LatticeRegion::cone(ConeRegion{*cap, o.radius}, o.config.budget)
          : LatticeRegion::ball(o.dim, o.radius, o.config.budget);
  std::vector<IntVector> points = region.stream().collect();
  if (!o.csv.empty()) {
    std::ostringstream csv;
    write_points_csv(csv, points);
    write_file(o.csv, csv.str());
  }
  Outcome outcome{report_header("enumerate", o.config)};
  outcome.report["dim"] = o.dim;
  outcome.report["radius"] = o.radius;
  outcome.report["region"] = cap ? "cone" : "ball";
  if (cap) {
    outcome.report["cap_center"] = cap->center();
    outcome.report["cap_angle"] = cap->angle();
  }
  outcome.report["count"] = points.size();
  if (cap && o.dim == 2 && !points.empty()) {
    const ProjectionCheck projection =
        projection_histogram(*cap, o.radius, o.config.bins, o.config);
    Json angular = to_json(projection.histogram);
    angular["distances"] = to_json(projection.distances);
    outcome.report["angular_histogram"] = std::move(angular);
  }
  if (o.csv.empty()) outcome.report["points"] = points;
  return outcome;
}

Outcome run_pushforward(const Options& o, const CLI::App* app) {
  if (o.fn != "lp") throw UsageError(app, "--fn supports 'lp' only");
  const LpNormSpec spec(o.p, o.dim);
  const std::size_t j = coordinate_index(o, app, o.dim);
  const auto cap = cap_from(o, app, o.dim);
  PushforwardGate gate;
  if (!cap) {
    gate = lp_derivative_gate(spec, j, o.samples, o.config);
  } else {
    auto points = sample_cap(*cap, o.samples, o.config.seed);
    std::erase_if(points, [](const std::vector<double>& s) {
      return std::any_of(s.begin(), s.end(), [](double x) { return !(x > 0.0); });
    });
    if (points.empty())
      throw DomainError("the cap has no samples with all coordinates positive");
    gate.measure = pushforward_mod1(
        [&](std::span<const double> s) { return lp_directional_derivative(spec, s, j); },
        points, o.config.bins);
    gate.distances = distance_to_uniform(gate.measure);
    gate.max_density_ratio = max_density_ratio(gate.measure);
    gate.classification = classify(gate.measure);
  }
  if (!o.svg.empty())
    write_file(o.svg, histogram_svg(gate.measure, "d||x||_p/dx_j mod 1"));
  Outcome outcome{to_json(gate.measure)};
  Json header = report_header("pushforward", o.config);
  header.update(outcome.report);
  outcome.report = std::move(header);
  outcome.report["p"] = o.p;
  outcome.report["n"] = o.dim;
  outcome.report["j"] = o.j;
  outcome.report["classification"] = to_string(gate.classification);
  outcome.report["max_density_ratio"] = gate.max_density_ratio;
  outcome.report["distances"] = to_json(gate.distances);
  return outcome;
}

// ---------------------------------------------------------------------------

void maybe_write_values(const Options& o, const std::vector<double>& values) {
  if (o.csv.empty()) return;
  std::ostringstream csv;
  write_sequence_csv(csv, values);
  write_file(o.csv, csv.str());
}

Outcome experiment_outcome(const std::string& name, const Options& o, bool pass,
                           Json trend, Json trace) {
  Outcome outcome{report_header("experiment " + name, o.config)};
  outcome.report["thresholds"] = thresholds_json(ExperimentThresholds{});
  outcome.report["trend"] = std::move(trend);
  outcome.report["pass"] = pass;
  outcome.report["trace"] = std::move(trace);
  outcome.code = pass ? kExitSuccess : kExitExperimentFailed;
  return outcome;
}

Outcome run_experiment_poly(const Options& o, const CLI::App* app) {
  if (o.spec.empty()) throw UsageError(app, "--spec is required");
  if (o.radii.empty()) throw UsageError(app, "--radii is required");
  const Json document = read_json_file(o.spec);
  const Polynomial f = [&] {
    try {
      return polynomial_from_json(document, o.config.precision);
    } catch (const ParseError& e) {
      throw ParseError(o.spec + ": " + e.what());
    }
  }();
  const auto cap = cap_from(o, app, f.dimension());
  const PolyResult result = verify_poly_equidist(f, o.radii, o.config, {}, cap);
  maybe_write_values(o, result.values);
  Json trace;
  trace["polynomial"] = to_json(f);
  trace["certified"] = result.certified;
  trace["reduction"] = to_json(result.reduction);
  return experiment_outcome("poly", o, result.pass, to_json(result.trend),
                            std::move(trace));
}

Outcome run_experiment_lp(const Options& o, const CLI::App* app) {
  if (o.radii.empty()) throw UsageError(app, "--radii is required");
  const LpResult result = verify_lp_norm(o.p, o.dim, o.radii, o.config, {}, o.samples);
  maybe_write_values(o, result.values);
  Json trace;
  trace["p"] = result.p;
  trace["n"] = result.dimension;
  trace["control"] = result.control;
  if (result.gate) trace["gate"] = to_json(*result.gate);
  return experiment_outcome("lp", o, result.pass, to_json(result.trend),
                            std::move(trace));
}

Outcome run_experiment_weyl1d(const Options& o, const CLI::App* app) {
  if (o.N < 1) throw UsageError(app, "--N must be at least 1");
  if (o.d < 1) throw UsageError(app, "--d must be at least 1");
  const ExactScalar a = parse_scalar_argument(o.a, o.config.precision);
  const Weyl1dResult result = verify_weyl_1d(a, o.d, o.N, o.config);
  maybe_write_values(o, result.values);
  Json trace;
  trace["a"] = to_json(a);
  trace["d"] = o.d;
  trace["irrational"] = result.irrational;
  return experiment_outcome("weyl1d", o, result.pass, to_json(result.trend),
                            std::move(trace));
}

Outcome run_experiment_a_set(const Options& o, const CLI::App* app) {
  if (o.d < 1) throw UsageError(app, "--d must be at least 1");
  std::vector<std::size_t> ladder = o.ladder;
  if (ladder.empty()) ladder = dyadic_ladder(o.N);
  const ASetShrinkage result = a_set_shrinkage(o.d, o.eps, ladder, o.probes, o.config);
  const ExperimentThresholds thresholds;
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < result.fractions.size(); ++i)
    monotone = monotone && result.fractions[i + 1] <= result.fractions[i];
  const bool pass = monotone && result.fractions.back() <= thresholds.a_set_final;
  Json trend;
  trend["N"] = result.ladder;
  trend["fractions"] = result.fractions;
  Json trace;
  trace["d"] = o.d;
  trace["eps"] = o.eps;
  trace["grid"] = o.config.grid;
  trace["samples"] = result.samples.size();
  trace["exit_steps"] = result.exit_steps;
  return experiment_outcome("a-set", o, pass, std::move(trend), std::move(trace));
}

Outcome run_experiment_taylor(const Options& o, const CLI::App* app) {
  const LpNormSpec spec(o.p, o.dim);
  const std::size_t j = coordinate_index(o, app, o.dim);
  std::optional<SphericalCap> cap = cap_from(o, app, o.dim);
  if (!cap) {
    cap = o.dim == 2 ? SphericalCap::positive_quarter_circle()
                     : SphericalCap::from_direction(std::vector<double>(o.dim, 1.0),
                                                    std::acos(1.0 / std::sqrt(
                                                        static_cast<double>(o.dim))));
  }
  const TaylorCheckResult result =
      taylor_fiber_check(spec, *cap, j, o.T, o.N0, o.probes, o.config);
  Json trend;
  trend["T"] = o.T;
  trend["N0"] = o.N0;
  trend["max_fiber_error"] = result.max_fiber_error;
  trend["epsilon"] = result.epsilon;
  trend["bound"] = result.bound;
  Json trace;
  Json probes = Json::array();
  for (const auto& probe : result.probes) probes.push_back(to_json(probe));
  trace["probes"] = std::move(probes);
  return experiment_outcome("taylor", o, result.pass, std::move(trend), std::move(trace));
}

// ---------------------------------------------------------------------------

void add_run_options(CLI::App* app, Options& o) {
  app->add_option("--seed", o.config.seed, "Random seed")->capture_default_str();
  app->add_option("--threads", o.config.threads, "Worker threads (results do not depend on it)")
      ->capture_default_str();
  app->add_option("--out", o.out, "Write the JSON report here instead of stdout");
}

void add_cap_options(CLI::App* app, Options& o) {
  app->add_option("--cap-center", o.cap_center, "Cap center, comma-separated floats")
      ->delimiter(',');
  app->add_option("--cap-angle", o.cap_angle, "Cap angular radius in radians");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    (void)RunConfig::from_environment();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  Options o;
  CLI::App app("Equidistribution mod 1 of lattice evaluations", "equidist");
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this synopsis and exit");
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::map<const CLI::App*, std::function<Outcome(const Options&, const CLI::App*)>> handlers;
  auto command = [&](CLI::App* parent, const std::string& name, const std::string& text,
                     auto handler) {
    CLI::App* sub = parent->add_subcommand(name, text);
    add_run_options(sub, o);
    handlers[sub] = handler;
    return sub;
  };

  CLI::App* eval = command(&app, "eval", "Evaluate a polynomial or l^p spec at integer points",
                           run_eval);
  eval->add_option("--spec", o.spec, "Function spec JSON (polynomial or {\"p\", \"n\"})");
  eval->add_option("--point", o.point, "One point, comma-separated integers");
  eval->add_option("--in", o.in, "CSV of integer points");
  eval->add_option("--precision", o.config.precision, "Generator precision in digits")
      ->capture_default_str();

  CLI::App* disc = command(&app, "discrepancy", "Extreme and star discrepancy of a sequence",
                           run_discrepancy);
  disc->add_option("--in", o.in, "CSV, one value per line (reduced mod 1)");

  CLI::App* wsum = command(&app, "weyl-sum", "Normalized Weyl sum |(1/N) sum e(h x_n)|",
                           run_weyl_sum);
  wsum->add_option("--in", o.in, "CSV, one value per line");
  wsum->add_option("--h", o.h, "Nonzero frequency")->capture_default_str();

  CLI::App* et = command(&app, "et-bound", "Erdos-Turan upper bound with C = 3", run_et_bound);
  et->add_option("--in", o.in, "CSV, one value per line");
  et->add_option("--K", o.K, "Frequency cutoff")->capture_default_str();

  CLI::App* aset = command(&app, "a-set", "Membership of a in A^d(N, eps)", run_a_set);
  aset->add_option("--a", o.a, "Generator name, rational p/q or scalar JSON")
      ->capture_default_str();
  aset->add_option("--d", o.d, "Degree")->capture_default_str();
  aset->add_option("--N", o.N, "Window length")->capture_default_str();
  aset->add_option("--eps", o.eps, "Threshold")->capture_default_str();
  aset->add_option("--grid", o.config.grid, "Grid resolution for the sup over P")
      ->capture_default_str();

  CLI::App* en = command(&app, "enumerate", "Integer points in a ball or cone", run_enumerate);
  en->add_option("--dim", o.dim, "Dimension n")->capture_default_str();
  en->add_option("--radius", o.radius, "Radius R or T")->capture_default_str();
  add_cap_options(en, o);
  en->add_option("--csv", o.csv, "Write the points as CSV here");
  en->add_option("--bins", o.config.bins, "Angular histogram bins (cones in 2-d)")
      ->capture_default_str();
  en->add_option("--budget", o.config.budget, "Maximum number of lattice points")
      ->capture_default_str();

  CLI::App* push = command(&app, "pushforward", "Histogram of d||s||_p/ds_j mod 1 on a cap",
                           run_pushforward);
  push->add_option("--fn", o.fn, "Function family")->capture_default_str();
  push->add_option("--p", o.p, "Exponent p in (1, inf)")->capture_default_str();
  push->add_option("--n", o.dim, "Dimension")->capture_default_str();
  push->add_option("--j", o.j, "Coordinate index, 1-based")->capture_default_str();
  add_cap_options(push, o);
  push->add_option("--samples", o.samples, "Number of cap samples")->capture_default_str();
  push->add_option("--bins", o.config.bins, "Histogram bins")->capture_default_str();
  push->add_option("--svg", o.svg, "Write an SVG bar chart here");

  CLI::App* experiment = app.add_subcommand("experiment", "End-to-end experiments");
  experiment->require_subcommand(1);

  CLI::App* poly = command(experiment, "poly", "F mod 1 over lattice balls",
                           run_experiment_poly);
  poly->add_option("--spec", o.spec, "Polynomial spec JSON");
  poly->add_option("--radii", o.radii, "Increasing radii, comma-separated")->delimiter(',');
  add_cap_options(poly, o);
  poly->add_option("--csv", o.csv, "Write the last rung's values mod 1 here");
  poly->add_option("--precision", o.config.precision, "Generator precision in digits")
      ->capture_default_str();
  poly->add_option("--budget", o.config.budget, "Maximum number of lattice points")
      ->capture_default_str();

  CLI::App* lp = command(experiment, "lp", "||x||_p mod 1 over lattice balls",
                         run_experiment_lp);
  lp->add_option("--p", o.p, "Exponent; 1 runs the integer-valued control")
      ->capture_default_str();
  lp->add_option("--n", o.dim, "Dimension")->capture_default_str();
  lp->add_option("--radii", o.radii, "Increasing radii, comma-separated")->delimiter(',');
  lp->add_option("--samples", o.samples, "Cap samples for the pushforward gate")
      ->capture_default_str();
  lp->add_option("--bins", o.config.bins, "Histogram bins")->capture_default_str();
  lp->add_option("--csv", o.csv, "Write the last rung's values mod 1 here");
  lp->add_option("--budget", o.config.budget, "Maximum number of lattice points")
      ->capture_default_str();

  CLI::App* weyl = command(experiment, "weyl1d", "a n^d mod 1 for n <= N",
                           run_experiment_weyl1d);
  weyl->add_option("--a", o.a, "Generator name, rational p/q or scalar JSON")
      ->capture_default_str();
  weyl->add_option("--d", o.d, "Degree")->capture_default_str();
  weyl->add_option("--N", o.N, "Number of terms")->capture_default_str();
  weyl->add_option("--csv", o.csv, "Write the values mod 1 here");
  weyl->add_option("--precision", o.config.precision, "Generator precision in digits")
      ->capture_default_str();

  CLI::App* shrink = command(experiment, "a-set", "Fraction of a in A^d(N, eps) along a ladder",
                             run_experiment_a_set);
  shrink->add_option("--d", o.d, "Degree")->capture_default_str();
  shrink->add_option("--eps", o.eps, "Threshold in (0, 1)")->capture_default_str();
  shrink->add_option("--N", o.N, "Largest N; the ladder is N/4, N/2, N")
      ->capture_default_str();
  shrink->add_option("--ladder", o.ladder, "Explicit increasing N ladder")->delimiter(',');
  shrink->add_option("--samples", o.probes, "Number of sampled a")->capture_default_str();
  shrink->add_option("--grid", o.config.grid, "Grid resolution for the sup over P")
      ->capture_default_str();

  CLI::App* taylor = command(experiment, "taylor", "Taylor fiber error of ||x||_p",
                             run_experiment_taylor);
  taylor->add_option("--p", o.p, "Exponent p in (1, inf)")->capture_default_str();
  taylor->add_option("--n", o.dim, "Dimension")->capture_default_str();
  taylor->add_option("--j", o.j, "Fiber direction e_j, 1-based")->capture_default_str();
  taylor->add_option("--T", o.T, "Base radius")->capture_default_str();
  taylor->add_option("--N0", o.N0, "Fiber length")->capture_default_str();
  taylor->add_option("--samples", o.probes, "Number of base points")->capture_default_str();
  add_cap_options(taylor, o);
  taylor->add_option("--budget", o.config.budget, "Maximum number of lattice points")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // help() descends into the selected subcommand.
      out << app.help();
      return kExitSuccess;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const CLI::App* chosen = &app;
  while (!chosen->get_subcommands().empty()) chosen = chosen->get_subcommands().front();
  const auto handler = handlers.find(chosen);
  if (handler == handlers.end()) {
    err << app.help();
    return kExitUsage;
  }
  try {
    o.config.validate();
    Outcome outcome = handler->second(o, chosen);
    const std::string text = outcome.report.dump(2) + "\n";
    if (o.out.empty())
      out << text;
    else
      write_file(o.out, text);
    return outcome.code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << e.app->help();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace equidist::cli
