#pragma once

// End-to-end pipelines: evaluate a function mod 1 over growing lattice
// regions and track the extreme discrepancy, together with the hypothesis
// checks (reduction certificate, pushforward gate, Taylor fiber estimate,
// A-set shrinkage) that explain why the trend should go to zero.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "equidist/discrepancy.hpp"
#include "equidist/exact_numbers.hpp"
#include "equidist/lattice_geometry.hpp"
#include "equidist/lp_norm.hpp"
#include "equidist/measures.hpp"
#include "equidist/polynomial.hpp"
#include "equidist/reduction.hpp"
#include "equidist/run_config.hpp"

namespace equidist {

struct EquidistributionTrend {
  std::vector<double> radii;
  std::vector<double> discrepancies;
  std::vector<double> star_discrepancies;
  std::vector<std::uint64_t> counts;

  double final_discrepancy() const;
  /// discrepancies[i + 1] <= discrepancies[i] + slack for every rung.
  bool non_increasing(double slack) const;
};

/// Number of chunks lattice work is split into. Fixed so that the merge order
/// is the same for every thread count.
inline constexpr std::size_t kLatticeChunks = 16;

using LatticeFunction = std::function<double(std::span<const std::int64_t>)>;

/// Values of `fn` (expected in [0, 1)) at every point of `region`, in
/// enumeration order, computed on up to `threads` workers.
std::vector<double> evaluate_over_region(const LatticeRegion& region,
                                         const LatticeFunction& fn, unsigned threads);

/// Dyadic ladder max/2^j, j = rungs-1..0, dropping duplicates and zeros.
std::vector<std::size_t> dyadic_ladder(std::size_t max, std::size_t rungs = 3);

// ---------------------------------------------------------------------------

struct Weyl1dResult {
  EquidistributionTrend trend;
  bool irrational = false;
  bool pass = false;
  std::vector<double> values;
};

/// {a n^d mod 1}_{n <= N'} over a dyadic ladder of N' up to N. Rational `a`
/// runs as a negative control and never passes.
Weyl1dResult verify_weyl_1d(const ExactScalar& a, unsigned degree, std::size_t steps,
                            const RunConfig& config = {},
                            const ExperimentThresholds& thresholds = {});

struct PolyResult {
  EquidistributionTrend trend;
  ReductionNode reduction;
  bool certified = false;
  bool pass = false;
  /// Values on the last rung.
  std::vector<double> values;
};

/// F mod 1 over Z^n within B_R for each R (or within the cone [0,R]*S when
/// `cap` is given), plus the reduction certificate.
PolyResult verify_poly_equidist(const Polynomial& f, const std::vector<double>& radii,
                                const RunConfig& config = {},
                                const ExperimentThresholds& thresholds = {},
                                const std::optional<SphericalCap>& cap = std::nullopt);

/// Distinct exact values of F mod 1 on Z^n within B_R, for F with rational
/// coefficients only (DomainError otherwise).
std::set<Rational> rational_values_mod_one(const Polynomial& f, double radius,
                                           std::uint64_t budget = kDefaultPointBudget);

// ---------------------------------------------------------------------------

inline constexpr std::size_t kDefaultGateSamples = 100'000;

struct PushforwardGate {
  EmpiricalCircleMeasure measure{kDefaultBins};
  UniformDistances distances;
  double max_density_ratio = 0.0;
  MeasureClass classification = MeasureClass::kOther;
};

/// Unit vectors distributed by the normalized surface measure on the part of
/// S^{n-1} in the closed positive orthant (the quarter-circle cap for n = 2).
std::vector<std::vector<double>> sample_positive_orthant(std::size_t n, std::size_t count,
                                                         std::uint64_t seed);

/// Pushforward of s -> d||s||_p/ds_j mod 1 under the positive orthant measure,
/// and its classification.
PushforwardGate lp_derivative_gate(const LpNormSpec& spec, std::size_t j,
                                   std::size_t samples, const RunConfig& config = {});

struct LpResult {
  double p = 2.0;
  std::size_t dimension = 2;
  bool control = false;
  std::optional<PushforwardGate> gate;
  EquidistributionTrend trend;
  bool pass = false;
  std::vector<double> values;
};

/// ||x||_p mod 1 over Z^n within B_R for each R. p = 1 runs as the negative
/// control (integer values); otherwise 1 < p < infinity is required and the
/// pushforward gate must classify as ac_like to pass.
LpResult verify_lp_norm(double p, std::size_t n, const std::vector<double>& radii,
                        const RunConfig& config = {},
                        const ExperimentThresholds& thresholds = {},
                        std::size_t gate_samples = kDefaultGateSamples);

struct ProjectionCheck {
  /// Angular histogram over [-angle, angle], bins of equal arc length.
  EmpiricalCircleMeasure histogram{kDefaultBins};
  UniformDistances distances;
  std::uint64_t count = 0;
};

/// Projects the cone lattice points of [0, T] * S to S^1 and compares their
/// angular histogram with the arc-uniform one (n = 2 only).
ProjectionCheck projection_histogram(const SphericalCap& cap, double radius,
                                     std::size_t bins = kDefaultBins,
                                     const RunConfig& config = {});

// ---------------------------------------------------------------------------

struct FiberProbe {
  IntVector base;
  IntVector direction;
  std::size_t length = 0;
  /// f(p + k v) for k = 1..length.
  std::vector<double> values;
  /// Taylor model coefficients c_0, c_1, ... of P_p(t) = sum c_i t^i.
  std::vector<double> taylor;
  double max_error = 0.0;
  /// max |d^2 f / dv^2| over the fiber points k = 0..length.
  double max_second_derivative = 0.0;
};

struct TaylorCheckResult {
  std::vector<FiberProbe> probes;
  double max_fiber_error = 0.0;
  /// max second directional derivative over all probes.
  double epsilon = 0.0;
  /// epsilon * N0^2 / 2, the Lagrange remainder bound with C = 1.
  double bound = 0.0;
  bool pass = false;
};

/// Degree-1 Taylor models of ||.||_p along the basis direction e_j on
/// fibers p + k e_j, k = 1..N0, for `count` base points p drawn from the
/// cone lattice points with T <= ||p||_2 <= T + N0 and all coordinates
/// positive. Throws NoLatticePointsBeyondT when there are none.
TaylorCheckResult taylor_fiber_check(const LpNormSpec& spec, const SphericalCap& cap,
                                     std::size_t j, double base_radius,
                                     std::size_t fiber_length, std::size_t count,
                                     const RunConfig& config = {});

/// Degree-d Taylor model of a polynomial along v from base p, evaluated
/// exactly; the returned probe's max_error is exactly 0 when the model is
/// exact, which holds whenever d >= deg F.
FiberProbe polynomial_fiber_probe(const Polynomial& f, std::span<const std::int64_t> base,
                                  std::span<const std::int64_t> direction,
                                  std::size_t fiber_length, unsigned taylor_degree);

// ---------------------------------------------------------------------------

struct ASetShrinkage {
  std::vector<std::size_t> ladder;
  std::vector<double> fractions;
  std::vector<double> samples;
  /// a_set_exit_step for each sample.
  std::vector<std::size_t> exit_steps;
};

/// Fraction of `sample_count` uniform draws a in [0,1) with in_A(a, d, N, eps)
/// for each N in `ladder`. Non-increasing in N by construction.
ASetShrinkage a_set_shrinkage(unsigned degree, double eps,
                              const std::vector<std::size_t>& ladder,
                              std::size_t sample_count, const RunConfig& config = {});

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double uniform_unit(std::uint64_t bits);

}  // namespace equidist
