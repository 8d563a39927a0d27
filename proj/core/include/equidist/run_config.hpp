#pragma once

#include <cstdint>
#include <string>

namespace equidist {

/// Knobs shared by every pipeline.
struct RunConfig {
  std::uint64_t seed = 1;
  /// Histogram resolution.
  std::size_t bins = 64;
  /// A-set grid resolution.
  unsigned grid = 64;
  /// Decimal digits for generator evaluation.
  int precision = 64;
  /// Maximum number of lattice points per enumeration.
  std::uint64_t budget = 50'000'000;
  /// Worker threads; results never depend on this value.
  unsigned threads = 1;

  /// Throws DomainError unless bins >= 2, grid >= 2, precision >= 16,
  /// budget >= 1 and threads >= 1.
  void validate() const;

  /// Defaults, with EQUIDIST_BUDGET applied when set.
  static RunConfig from_environment();
};

/// Pass thresholds for the experiment pipelines, pinned from pilot runs.
/// Bump `kVersion` whenever a value changes.
struct ExperimentThresholds {
  static constexpr int kVersion = 1;
  /// Final extreme discrepancy for lattice polynomial experiments.
  double poly_final = 0.02;
  /// Final extreme discrepancy for l^p norm experiments.
  double lp_final = 0.03;
  /// Final extreme discrepancy for one-variable Weyl experiments.
  double weyl1d_final = 0.02;
  /// Largest fraction of sampled a still in A^d(N, eps) at the last rung.
  double a_set_final = 0.05;
  /// Allowed increase between consecutive rungs of a ladder.
  double trend_slack = 0.01;
};

}  // namespace equidist
