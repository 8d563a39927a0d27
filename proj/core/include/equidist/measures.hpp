#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace equidist {

/// Histogram of a probability measure on R/Z with B equal bins over [0, 1).
class EmpiricalCircleMeasure {
 public:
  /// B >= 2 bins, all empty.
  explicit EmpiricalCircleMeasure(std::size_t bins);
  /// From explicit counts; throws DomainError when fewer than 2 bins.
  static EmpiricalCircleMeasure from_counts(std::vector<std::uint64_t> counts);

  /// Adds one observation of `value` mod 1.
  void add(double value);
  /// Adds the counts of another histogram with the same number of bins.
  void merge(const EmpiricalCircleMeasure& other);

  const std::vector<std::uint64_t>& bins() const { return bins_; }
  std::size_t bin_count() const { return bins_.size(); }
  std::uint64_t total() const { return total_; }
  std::size_t bin_of(double value) const;

  friend bool operator==(const EmpiricalCircleMeasure&,
                         const EmpiricalCircleMeasure&) = default;

 private:
  std::vector<std::uint64_t> bins_;
  std::uint64_t total_ = 0;
};

using SphereFunction = std::function<double(std::span<const double>)>;

/// Histogram of g(s) mod 1 over the samples. Throws EmptySequence when
/// there are no samples.
EmpiricalCircleMeasure pushforward_mod1(const SphereFunction& g,
                                        std::span<const std::vector<double>> samples,
                                        std::size_t bins);

struct UniformDistances {
  /// (1/2) sum |p_i - 1/B|.
  double tv = 0.0;
  /// max_k |F_emp(k/B) - k/B| over bin edges.
  double ks = 0.0;
  /// sup over bin-aligned intervals of |mass - length|.
  double disc = 0.0;
};

/// Throws EmptySequence for an empty histogram.
UniformDistances distance_to_uniform(const EmpiricalCircleMeasure& measure);

enum class MeasureClass { kDiracLike, kAcLike, kOther };

std::string to_string(MeasureClass c);

inline constexpr double kDefaultDiracThreshold = 0.9;
/// Largest admissible bin density relative to uniform for kAcLike.
inline constexpr double kDefaultDensityCap = 16.0;
inline constexpr std::size_t kDefaultBins = 64;

/// dirac_like if one bin holds >= dirac_threshold of the mass; ac_like if
/// every bin density is <= density_cap times uniform; other otherwise.
/// A screening heuristic, not a test of absolute continuity. Requires
/// total >= number of bins (DomainError).
MeasureClass classify(const EmpiricalCircleMeasure& measure,
                      double dirac_threshold = kDefaultDiracThreshold,
                      double density_cap = kDefaultDensityCap);

/// Ratio of the heaviest bin's mass to 1/B.
double max_density_ratio(const EmpiricalCircleMeasure& measure);

/// Static SVG bar chart of the histogram with the uniform level marked.
std::string histogram_svg(const EmpiricalCircleMeasure& measure,
                          const std::string& title = "");

}  // namespace equidist
