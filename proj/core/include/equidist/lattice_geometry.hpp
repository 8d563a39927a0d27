#pragma once

// Integer points in Euclidean balls and in cones over spherical caps,
// projection to the unit sphere and sampling of the normalized cap measure.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "equidist/polynomial.hpp"

namespace equidist {

inline constexpr std::uint64_t kDefaultPointBudget = 50'000'000;

/// Geodesic ball on S^{n-1}: unit center and angular radius in (0, pi].
class SphericalCap {
 public:
  /// `center` must have unit Euclidean norm within 1e-12.
  SphericalCap(std::vector<double> center, double angle);
  /// Normalizes `direction` first; throws ZeroVector for the zero vector.
  static SphericalCap from_direction(std::span<const double> direction, double angle);
  static SphericalCap full_sphere(std::size_t n);
  /// The cap of S^1 equal to the closed positive quadrant (n = 2 only).
  static SphericalCap positive_quarter_circle();

  const std::vector<double>& center() const { return center_; }
  double angle() const { return angle_; }
  std::size_t dimension() const { return center_.size(); }
  bool is_full_sphere() const;

  /// Closed membership test for a unit vector.
  bool contains_unit(std::span<const double> unit) const;
  /// Closed membership test for the ray through a nonzero vector.
  bool contains_direction(std::span<const double> x) const;

 private:
  std::vector<double> center_;
  double angle_;
  double cos_angle_;
};

/// [0, T] * S minus the origin.
struct ConeRegion {
  SphericalCap cap;
  double radius;

  bool contains(std::span<const std::int64_t> x) const;
};

/// Single-pass stream over integer points, in lexicographic order over the
/// bounding box. A stream may be restricted to a slab of first coordinates,
/// which is how enumeration is split into chunks.
class LatticeStream {
 public:
  /// Next point, or std::nullopt at the end.
  std::optional<IntVector> next();
  /// Drains the stream.
  std::vector<IntVector> collect();

  std::size_t dimension() const { return n_; }

 private:
  friend class LatticeRegion;
  LatticeStream(std::size_t n, std::int64_t squared_radius,
                std::optional<ConeRegion> cone, std::int64_t first_lo,
                std::int64_t first_hi);

  bool advance();
  std::int64_t coordinate_bound(std::size_t level) const;

  std::size_t n_;
  std::int64_t squared_radius_;
  std::optional<ConeRegion> cone_;
  std::int64_t first_lo_;
  std::int64_t first_hi_;
  IntVector current_;
  std::vector<std::int64_t> partial_squares_;
  bool started_ = false;
  bool done_ = false;
};

/// A ball B_R(0) or a cone [0, T] * S, with a point budget.
class LatticeRegion {
 public:
  static LatticeRegion ball(std::size_t n, double radius,
                            std::uint64_t budget = kDefaultPointBudget);
  static LatticeRegion cone(const ConeRegion& region,
                            std::uint64_t budget = kDefaultPointBudget);

  LatticeStream stream() const;
  /// Disjoint slabs of the first coordinate covering the region; their
  /// concatenation in order equals stream().
  std::vector<LatticeStream> chunks(std::size_t count) const;

  std::size_t dimension() const { return n_; }
  std::int64_t bound() const { return bound_; }
  /// Volume-based upper estimate of the number of points.
  double estimated_count() const { return estimate_; }

 private:
  LatticeRegion() = default;

  std::size_t n_ = 0;
  std::int64_t squared_radius_ = 0;
  std::int64_t bound_ = 0;
  std::optional<ConeRegion> cone_;
  double estimate_ = 0;
};

/// Every x in Z^n with ||x||_2 <= R, lexicographic order. Throws
/// CardinalityOverflow when the estimated count exceeds `budget`.
LatticeStream enumerate_ball(std::size_t n, double radius,
                             std::uint64_t budget = kDefaultPointBudget);

/// Nonzero integer points of the cone, lexicographic order.
LatticeStream enumerate_cone(const ConeRegion& region,
                             std::uint64_t budget = kDefaultPointBudget);

/// x / ||x||_2; throws ZeroVector.
std::vector<double> project(std::span<const double> x);
std::vector<double> project(std::span<const std::int64_t> x);

inline constexpr std::uint64_t kDefaultRejectionAttemptsPerSample = 1000;

/// `count` independent draws from the normalized surface measure on the cap,
/// by isotropic Gaussian sampling and rejection. Deterministic given seed.
std::vector<std::vector<double>> sample_cap(
    const SphericalCap& cap, std::size_t count, std::uint64_t seed,
    std::uint64_t attempts_per_sample = kDefaultRejectionAttemptsPerSample);

/// Signed angle of a 2-d vector relative to the cap center, in [-pi, pi].
double angle_from_center(const SphericalCap& cap, std::span<const double> x);

}  // namespace equidist
