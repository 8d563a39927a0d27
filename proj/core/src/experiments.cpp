#include "equidist/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "equidist/errors.hpp"

namespace equidist {

double EquidistributionTrend::final_discrepancy() const {
  if (discrepancies.empty()) throw EmptySequence("trend has no rungs");
  return discrepancies.back();
}

bool EquidistributionTrend::non_increasing(double slack) const {
  for (std::size_t i = 0; i + 1 < discrepancies.size(); ++i)
    if (discrepancies[i + 1] > discrepancies[i] + slack) return false;
  return true;
}

std::vector<double> evaluate_over_region(const LatticeRegion& region,
                                         const LatticeFunction& fn, unsigned threads) {
  auto chunks = region.chunks(kLatticeChunks);
  std::vector<std::vector<double>> partial(chunks.size());
  auto work = [&](std::size_t c) {
    while (auto point = chunks[c].next()) partial[c].push_back(fn(*point));
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, chunks.size());
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks.size(); ++c) work(c);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks.size(); c += workers) work(c);
      });
    for (auto& t : pool) t.join();
  }
  std::vector<double> values;
  for (auto& part : partial) values.insert(values.end(), part.begin(), part.end());
  return values;
}

std::vector<std::size_t> dyadic_ladder(std::size_t max, std::size_t rungs) {
  std::vector<std::size_t> ladder;
  for (std::size_t j = rungs; j-- > 0;) {
    const std::size_t value = max >> j;
    if (value > 0 && (ladder.empty() || ladder.back() != value)) ladder.push_back(value);
  }
  return ladder;
}

double uniform_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

namespace {

void append_rung(EquidistributionTrend& trend, double radius,
                 std::span<const double> values) {
  const DiscrepancyReport report = extreme_discrepancy(values);
  trend.radii.push_back(radius);
  trend.discrepancies.push_back(report.extreme);
  trend.star_discrepancies.push_back(report.star);
  trend.counts.push_back(report.count);
}

void check_radii(const std::vector<double>& radii) {
  if (radii.empty()) throw DomainError("the radius ladder is empty");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] < radii[i + 1]))
      throw DomainError("radii must be strictly increasing");
}

}  // namespace

// ---------------------------------------------------------------------------

Weyl1dResult verify_weyl_1d(const ExactScalar& a, unsigned degree, std::size_t steps,
                            const RunConfig& config,
                            const ExperimentThresholds& thresholds) {
  config.validate();
  if (degree == 0) throw DomainError("degree must be at least 1");
  if (steps == 0) throw DomainError("N must be at least 1");
  Weyl1dResult result;
  result.irrational = !a.is_rational();
  result.values.reserve(steps);
  Integer power;
  for (std::size_t n = 1; n <= steps; ++n) {
    mpz_ui_pow_ui(power.get_mpz_t(), n, degree);
    result.values.push_back(mod_one(scale(a, Rational(power))));
  }
  for (std::size_t rung : dyadic_ladder(steps)) {
    append_rung(result.trend, static_cast<double>(rung),
                std::span<const double>(result.values).first(rung));
  }
  result.pass = result.irrational &&
                result.trend.final_discrepancy() <= thresholds.weyl1d_final &&
                result.trend.non_increasing(thresholds.trend_slack);
  return result;
}

PolyResult verify_poly_equidist(const Polynomial& f, const std::vector<double>& radii,
                                const RunConfig& config,
                                const ExperimentThresholds& thresholds,
                                const std::optional<SphericalCap>& cap) {
  config.validate();
  check_radii(radii);
  if (cap && cap->dimension() != f.dimension())
    throw DimensionMismatch("cap and polynomial have different dimensions");
  PolyResult result;
  result.reduction = reduce_for_equidistribution(f);
  result.certified = certifies_equidistribution(result.reduction);
  const LatticeFunction fn = [&f](std::span<const std::int64_t> x) {
    return evaluate_mod1(f, x);
  };
  for (double radius : radii) {
    const LatticeRegion region =
        cap ? LatticeRegion::cone(ConeRegion{*cap, radius}, config.budget)
            : LatticeRegion::ball(f.dimension(), radius, config.budget);
    result.values = evaluate_over_region(region, fn, config.threads);
    if (result.values.empty())
      throw EmptySequence("no lattice points at radius " + std::to_string(radius));
    append_rung(result.trend, radius, result.values);
  }
  result.pass = result.certified &&
                result.trend.final_discrepancy() <= thresholds.poly_final &&
                result.trend.non_increasing(thresholds.trend_slack);
  return result;
}

std::set<Rational> rational_values_mod_one(const Polynomial& f, double radius,
                                           std::uint64_t budget) {
  for (const auto& [index, coefficient] : f.terms())
    if (!coefficient.is_rational())
      throw DomainError("exact value sets need rational coefficients");
  std::set<Rational> values;
  LatticeStream stream = enumerate_ball(f.dimension(), radius, budget);
  while (auto point = stream.next())
    values.insert(f.evaluate(*point).reduced_mod_one().rational_part());
  return values;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<double>> sample_positive_orthant(std::size_t n, std::size_t count,
                                                         std::uint64_t seed) {
  if (n == 2) return sample_cap(SphericalCap::positive_quarter_circle(), count, seed);
  // Reflecting the uniform sphere measure into the orthant keeps it uniform
  // there, for any n.
  auto samples = sample_cap(SphericalCap::full_sphere(n), count, seed);
  for (auto& s : samples)
    for (double& x : s) x = std::abs(x);
  return samples;
}

PushforwardGate lp_derivative_gate(const LpNormSpec& spec, std::size_t j,
                                   std::size_t samples, const RunConfig& config) {
  config.validate();
  if (j >= spec.dimension()) throw DomainError("coordinate index out of range");
  auto points = sample_positive_orthant(spec.dimension(), samples, config.seed);
  // Boundary directions (a zero coordinate) have measure zero and are skipped.
  std::erase_if(points, [](const std::vector<double>& s) {
    return std::any_of(s.begin(), s.end(), [](double x) { return !(x > 0.0); });
  });
  PushforwardGate gate;
  gate.measure = pushforward_mod1(
      [&](std::span<const double> s) { return lp_directional_derivative(spec, s, j); },
      points, config.bins);
  gate.distances = distance_to_uniform(gate.measure);
  gate.max_density_ratio = max_density_ratio(gate.measure);
  gate.classification = classify(gate.measure);
  return gate;
}

LpResult verify_lp_norm(double p, std::size_t n, const std::vector<double>& radii,
                        const RunConfig& config, const ExperimentThresholds& thresholds,
                        std::size_t gate_samples) {
  config.validate();
  check_radii(radii);
  LpResult result;
  result.p = p;
  result.dimension = n;
  result.control = p == 1.0;
  LatticeFunction fn;
  std::optional<LpNormSpec> spec;
  if (result.control) {
    if (n == 0) throw DomainError("dimension must be at least 1");
    fn = [](std::span<const std::int64_t> x) {
      double sum = 0.0;
      for (auto xi : x) sum += std::abs(static_cast<double>(xi));
      return sum - std::floor(sum);
    };
  } else {
    spec.emplace(p, n);
    result.gate = lp_derivative_gate(*spec, 0, gate_samples, config);
    fn = [&spec](std::span<const std::int64_t> x) {
      double buffer[16];
      std::vector<double> heap;
      std::span<double> coords;
      if (x.size() <= 16) {
        coords = std::span<double>(buffer, x.size());
      } else {
        heap.resize(x.size());
        coords = heap;
      }
      for (std::size_t i = 0; i < x.size(); ++i) coords[i] = static_cast<double>(x[i]);
      const double value = lp_eval(*spec, coords);
      const double reduced = value - std::floor(value);
      return reduced >= 1.0 ? 0.0 : reduced;
    };
  }
  for (double radius : radii) {
    const LatticeRegion region = LatticeRegion::ball(n, radius, config.budget);
    result.values = evaluate_over_region(region, fn, config.threads);
    append_rung(result.trend, radius, result.values);
  }
  result.pass = !result.control && result.gate &&
                result.gate->classification == MeasureClass::kAcLike &&
                result.trend.final_discrepancy() <= thresholds.lp_final &&
                result.trend.non_increasing(thresholds.trend_slack);
  return result;
}

ProjectionCheck projection_histogram(const SphericalCap& cap, double radius,
                                     std::size_t bins, const RunConfig& config) {
  config.validate();
  if (cap.dimension() != 2) throw DimensionMismatch("angular histograms need n = 2");
  if (bins < 2) throw DomainError("a histogram needs at least 2 bins");
  std::vector<std::uint64_t> counts(bins, 0);
  const double width = 2.0 * cap.angle();
  std::uint64_t total = 0;
  LatticeStream stream = enumerate_cone(ConeRegion{cap, radius}, config.budget);
  std::vector<double> x(2);
  while (auto point = stream.next()) {
    x[0] = static_cast<double>((*point)[0]);
    x[1] = static_cast<double>((*point)[1]);
    const double t = (angle_from_center(cap, x) + cap.angle()) / width;
    // Closed caps put boundary points at t = 0 or t = 1 (up to rounding).
    const double clamped = std::clamp(t, 0.0, 1.0);
    const auto b = std::min(static_cast<std::size_t>(clamped * static_cast<double>(bins)),
                            bins - 1);
    ++counts[b];
    ++total;
  }
  if (total == 0) throw EmptySequence("the cone has no lattice points");
  ProjectionCheck result;
  result.histogram = EmpiricalCircleMeasure::from_counts(std::move(counts));
  result.distances = distance_to_uniform(result.histogram);
  result.count = total;
  return result;
}

// ---------------------------------------------------------------------------

TaylorCheckResult taylor_fiber_check(const LpNormSpec& spec, const SphericalCap& cap,
                                     std::size_t j, double base_radius,
                                     std::size_t fiber_length, std::size_t count,
                                     const RunConfig& config) {
  config.validate();
  const std::size_t n = spec.dimension();
  if (cap.dimension() != n) throw DimensionMismatch("cap and norm dimensions differ");
  if (j >= n) throw DomainError("coordinate index out of range");
  if (fiber_length == 0) throw DomainError("fiber length N0 must be at least 1");
  if (count == 0) throw DomainError("probe count must be at least 1");

  const double outer = base_radius + static_cast<double>(fiber_length);
  const std::int64_t inner_squared =
      static_cast<std::int64_t>(std::ceil(base_radius * base_radius));
  std::vector<IntVector> candidates;
  LatticeStream stream = enumerate_cone(ConeRegion{cap, outer}, config.budget);
  while (auto point = stream.next()) {
    std::int64_t squares = 0;
    bool positive = true;
    for (auto xi : *point) {
      squares += xi * xi;
      positive = positive && xi > 0;
    }
    if (positive && squares >= inner_squared) candidates.push_back(std::move(*point));
  }
  if (candidates.empty())
    throw NoLatticePointsBeyondT("no positive cone lattice points with norm in [" +
                                 std::to_string(base_radius) + ", " +
                                 std::to_string(outer) + "]");

  std::vector<IntVector> bases;
  std::mt19937_64 engine(config.seed);
  std::sample(candidates.begin(), candidates.end(), std::back_inserter(bases),
              std::min(count, candidates.size()), engine);

  TaylorCheckResult result;
  std::vector<double> x(n);
  for (const auto& base : bases) {
    FiberProbe probe;
    probe.base = base;
    probe.direction = IntVector(n, 0);
    probe.direction[j] = 1;
    probe.length = fiber_length;
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(base[i]);
    const double value0 = lp_eval(spec, x);
    const double slope = lp_directional_derivative(spec, x, j);
    probe.taylor = {value0, slope};
    probe.max_second_derivative = std::abs(lp_second_directional_derivative(spec, x, j));
    for (std::size_t k = 1; k <= fiber_length; ++k) {
      x[j] = static_cast<double>(base[j]) + static_cast<double>(k);
      const double value = lp_eval(spec, x);
      probe.values.push_back(value);
      probe.max_error = std::max(
          probe.max_error, std::abs(value - (value0 + slope * static_cast<double>(k))));
      probe.max_second_derivative = std::max(
          probe.max_second_derivative, std::abs(lp_second_directional_derivative(spec, x, j)));
    }
    x[j] = static_cast<double>(base[j]);
    result.max_fiber_error = std::max(result.max_fiber_error, probe.max_error);
    result.epsilon = std::max(result.epsilon, probe.max_second_derivative);
    result.probes.push_back(std::move(probe));
  }
  const double length = static_cast<double>(fiber_length);
  result.bound = result.epsilon * length * length / 2.0;
  result.pass = result.max_fiber_error <= result.bound;
  return result;
}

FiberProbe polynomial_fiber_probe(const Polynomial& f, std::span<const std::int64_t> base,
                                  std::span<const std::int64_t> direction,
                                  std::size_t fiber_length, unsigned taylor_degree) {
  if (base.size() != f.dimension() || direction.size() != f.dimension())
    throw DimensionMismatch("base point, direction and polynomial dimensions differ");
  FiberProbe probe;
  probe.base.assign(base.begin(), base.end());
  probe.direction.assign(direction.begin(), direction.end());
  probe.length = fiber_length;

  // c_i = (d^i F / dv^i)(p) / i!
  std::vector<ExactScalar> coefficients{f.evaluate(base)};
  Integer factorial = 1;
  for (unsigned i = 1; i <= taylor_degree; ++i) {
    factorial *= i;
    const ExactScalar derivative = directional_derivative(f, direction, i).evaluate(base);
    coefficients.push_back(scale(derivative, Rational(1) / Rational(factorial)));
  }
  for (const auto& c : coefficients) probe.taylor.push_back(static_cast<double>(c.approx()));

  IntVector point(base.begin(), base.end());
  for (std::size_t k = 1; k <= fiber_length; ++k) {
    for (std::size_t i = 0; i < point.size(); ++i)
      point[i] = base[i] + static_cast<std::int64_t>(k) * direction[i];
    const ExactScalar value = f.evaluate(point);
    probe.values.push_back(static_cast<double>(value.approx()));
    ExactScalar model;
    Rational t_power = 1;
    for (const auto& c : coefficients) {
      model += scale(c, t_power);
      t_power *= static_cast<long>(k);
    }
    const ExactScalar error = value - model;
    if (!error.is_zero())
      probe.max_error = std::max(
          probe.max_error, std::abs(static_cast<double>(error.approx())));
  }
  return probe;
}

// ---------------------------------------------------------------------------

ASetShrinkage a_set_shrinkage(unsigned degree, double eps,
                              const std::vector<std::size_t>& ladder,
                              std::size_t sample_count, const RunConfig& config) {
  config.validate();
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
  if (ladder.empty()) throw DomainError("the N ladder is empty");
  if (sample_count == 0) throw DomainError("sample count must be at least 1");
  for (std::size_t i = 0; i + 1 < ladder.size(); ++i)
    if (!(ladder[i] < ladder[i + 1])) throw DomainError("ladder must be increasing");
  if (ladder.front() == 0) throw DomainError("ladder entries must be positive");

  ASetShrinkage result;
  result.ladder = ladder;
  std::mt19937_64 engine(config.seed);
  for (std::size_t i = 0; i < sample_count; ++i)
    result.samples.push_back(uniform_unit(engine()));
  result.exit_steps.assign(sample_count, 0);
  const std::size_t max_steps = ladder.back();

  auto work = [&](std::size_t i) {
    result.exit_steps[i] = a_set_exit_step(result.samples[i], degree, max_steps, eps,
                                           config.grid);
  };
  const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, sample_count);
  if (workers == 1) {
    for (std::size_t i = 0; i < sample_count; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < sample_count; i += workers) work(i);
      });
    for (auto& t : pool) t.join();
  }
  for (std::size_t n : ladder) {
    const auto inside = std::count_if(result.exit_steps.begin(), result.exit_steps.end(),
                                      [n](std::size_t exit) { return exit > n; });
    result.fractions.push_back(static_cast<double>(inside) /
                               static_cast<double>(sample_count));
  }
  return result;
}

}  // namespace equidist
