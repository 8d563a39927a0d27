#include "equidist/lattice_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "equidist/errors.hpp"

namespace equidist {

namespace {

constexpr double kUnitTolerance = 1e-12;
// Relative slack on the closed cap condition so that boundary lattice points
// such as (1, 1) at angle pi/4 are not lost to rounding.
constexpr double kCapBoundarySlack = 1e-12;

std::int64_t isqrt(std::int64_t m) {
  if (m <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(m)));
  while (r * r > m) --r;
  while ((r + 1) * (r + 1) <= m) ++r;
  return r;
}

std::int64_t floor_square(double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius))
    throw DomainError("radius must be a finite non-negative number");
  const long double r = radius;
  return static_cast<std::int64_t>(std::floor(r * r));
}

double unit_ball_volume(std::size_t n) {
  const double half = static_cast<double>(n) / 2.0;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double norm2(std::span<const double> x) {
  double sum = 0.0;
  for (double xi : x) sum += xi * xi;
  return std::sqrt(sum);
}

}  // namespace

// ---------------------------------------------------------------------------
// SphericalCap

SphericalCap::SphericalCap(std::vector<double> center, double angle)
    : center_(std::move(center)), angle_(angle), cos_angle_(std::cos(angle)) {
  if (center_.empty()) throw DimensionMismatch("cap center is empty");
  if (std::abs(norm2(center_) - 1.0) > kUnitTolerance)
    throw DomainError("cap center must be a unit vector");
  if (!(angle > 0.0) || angle > std::numbers::pi)
    throw DomainError("cap angle must lie in (0, pi]");
  if (angle == std::numbers::pi) cos_angle_ = -1.0;
}

SphericalCap SphericalCap::from_direction(std::span<const double> direction,
                                          double angle) {
  return SphericalCap(project(direction), angle);
}

SphericalCap SphericalCap::full_sphere(std::size_t n) {
  if (n == 0) throw DimensionMismatch("dimension must be at least 1");
  std::vector<double> center(n, 0.0);
  center[0] = 1.0;
  return SphericalCap(std::move(center), std::numbers::pi);
}

SphericalCap SphericalCap::positive_quarter_circle() {
  return SphericalCap({std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2},
                      std::numbers::pi / 4);
}

bool SphericalCap::is_full_sphere() const { return angle_ == std::numbers::pi; }

bool SphericalCap::contains_unit(std::span<const double> unit) const {
  if (unit.size() != center_.size())
    throw DimensionMismatch("vector and cap have different dimensions");
  if (is_full_sphere()) return true;
  double dot = 0.0;
  for (std::size_t i = 0; i < unit.size(); ++i) dot += unit[i] * center_[i];
  return dot >= cos_angle_ - kCapBoundarySlack;
}

bool SphericalCap::contains_direction(std::span<const double> x) const {
  if (x.size() != center_.size())
    throw DimensionMismatch("vector and cap have different dimensions");
  const double length = norm2(x);
  if (length == 0.0) return false;
  if (is_full_sphere()) return true;
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * center_[i];
  return dot >= (cos_angle_ - kCapBoundarySlack) * length;
}

bool ConeRegion::contains(std::span<const std::int64_t> x) const {
  if (x.size() != cap.dimension())
    throw DimensionMismatch("point and cone have different dimensions");
  std::int64_t squares = 0;
  for (auto xi : x) squares += xi * xi;
  if (squares == 0 || squares > floor_square(radius)) return false;
  if (cap.is_full_sphere()) return true;
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    dot += static_cast<double>(x[i]) * cap.center()[i];
  return dot >= (std::cos(cap.angle()) - kCapBoundarySlack) *
                    std::sqrt(static_cast<double>(squares));
}

// ---------------------------------------------------------------------------
// LatticeStream

LatticeStream::LatticeStream(std::size_t n, std::int64_t squared_radius,
                             std::optional<ConeRegion> cone, std::int64_t first_lo,
                             std::int64_t first_hi)
    : n_(n),
      squared_radius_(squared_radius),
      cone_(std::move(cone)),
      first_lo_(first_lo),
      first_hi_(first_hi),
      current_(n, 0),
      partial_squares_(n + 1, 0) {}

std::int64_t LatticeStream::coordinate_bound(std::size_t level) const {
  return isqrt(squared_radius_ - partial_squares_[level]);
}

// Moves to the next point of the ball slab in lexicographic order.
bool LatticeStream::advance() {
  if (done_) return false;
  std::size_t level;
  if (!started_) {
    started_ = true;
    const std::int64_t b0 = coordinate_bound(0);
    const std::int64_t lo = std::max(first_lo_, -b0);
    if (lo > std::min(first_hi_, b0)) {
      done_ = true;
      return false;
    }
    current_[0] = lo;
    level = 0;
  } else {
    // Find the deepest coordinate that can still be incremented.
    level = n_;
    while (level > 0) {
      --level;
      const std::int64_t bound = coordinate_bound(level);
      const std::int64_t hi = level == 0 ? std::min(first_hi_, bound) : bound;
      if (current_[level] < hi) {
        ++current_[level];
        break;
      }
      if (level == 0) {
        done_ = true;
        return false;
      }
    }
  }
  // Reset deeper coordinates to their smallest admissible value.
  partial_squares_[level + 1] =
      partial_squares_[level] + current_[level] * current_[level];
  for (std::size_t i = level + 1; i < n_; ++i) {
    current_[i] = -coordinate_bound(i);
    partial_squares_[i + 1] = partial_squares_[i] + current_[i] * current_[i];
  }
  return true;
}

std::optional<IntVector> LatticeStream::next() {
  while (advance()) {
    if (!cone_ || cone_->contains(current_)) return current_;
  }
  return std::nullopt;
}

std::vector<IntVector> LatticeStream::collect() {
  std::vector<IntVector> points;
  while (auto point = next()) points.push_back(std::move(*point));
  return points;
}

// ---------------------------------------------------------------------------
// LatticeRegion

LatticeRegion LatticeRegion::ball(std::size_t n, double radius,
                                  std::uint64_t budget) {
  if (n == 0) throw DimensionMismatch("dimension must be at least 1");
  LatticeRegion region;
  region.n_ = n;
  region.squared_radius_ = floor_square(radius);
  region.bound_ = isqrt(region.squared_radius_);
  region.estimate_ =
      unit_ball_volume(n) * std::pow(radius + std::sqrt(static_cast<double>(n)) / 2, n);
  if (region.estimate_ > static_cast<double>(budget))
    throw CardinalityOverflow("about " + std::to_string(region.estimate_) +
                              " lattice points exceed the budget of " +
                              std::to_string(budget));
  return region;
}

LatticeRegion LatticeRegion::cone(const ConeRegion& cone_region, std::uint64_t budget) {
  if (!(cone_region.radius > 0.0)) throw DomainError("cone radius must be positive");
  LatticeRegion region = ball(cone_region.cap.dimension(), cone_region.radius, budget);
  region.cone_ = cone_region;
  return region;
}

LatticeStream LatticeRegion::stream() const {
  return LatticeStream(n_, squared_radius_, cone_, -bound_, bound_);
}

std::vector<LatticeStream> LatticeRegion::chunks(std::size_t count) const {
  count = std::max<std::size_t>(count, 1);
  std::vector<LatticeStream> result;
  const std::int64_t width = 2 * bound_ + 1;
  const auto slabs = std::min<std::int64_t>(static_cast<std::int64_t>(count), width);
  for (std::int64_t s = 0; s < slabs; ++s) {
    const std::int64_t lo = -bound_ + width * s / slabs;
    const std::int64_t hi = -bound_ + width * (s + 1) / slabs - 1;
    result.push_back(LatticeStream(n_, squared_radius_, cone_, lo, hi));
  }
  return result;
}

LatticeStream enumerate_ball(std::size_t n, double radius, std::uint64_t budget) {
  return LatticeRegion::ball(n, radius, budget).stream();
}

LatticeStream enumerate_cone(const ConeRegion& region, std::uint64_t budget) {
  return LatticeRegion::cone(region, budget).stream();
}

std::vector<double> project(std::span<const double> x) {
  const double length = norm2(x);
  if (length == 0.0) throw ZeroVector("cannot project the zero vector");
  std::vector<double> unit(x.begin(), x.end());
  for (double& u : unit) u /= length;
  return unit;
}

std::vector<double> project(std::span<const std::int64_t> x) {
  std::vector<double> as_double(x.begin(), x.end());
  return project(std::span<const double>(as_double));
}

std::vector<std::vector<double>> sample_cap(const SphericalCap& cap,
                                            std::size_t count, std::uint64_t seed,
                                            std::uint64_t attempts_per_sample) {
  if (count == 0) throw DomainError("sample count must be at least 1");
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> gaussian(0.0, 1.0);
  const std::size_t n = cap.dimension();
  const std::uint64_t max_attempts = attempts_per_sample * count;
  std::vector<std::vector<double>> samples;
  samples.reserve(count);
  std::vector<double> draw(n);
  std::uint64_t attempts = 0;
  while (samples.size() < count) {
    if (attempts++ >= max_attempts)
      throw RejectionBudgetExceeded(
          "cap accepted " + std::to_string(samples.size()) + " of " +
          std::to_string(attempts - 1) + " proposals; solid angle too small");
    double length = 0.0;
    for (double& d : draw) {
      d = gaussian(engine);
      length += d * d;
    }
    length = std::sqrt(length);
    if (length == 0.0) continue;
    for (double& d : draw) d /= length;
    if (cap.contains_unit(draw)) samples.push_back(draw);
  }
  return samples;
}

double angle_from_center(const SphericalCap& cap, std::span<const double> x) {
  if (cap.dimension() != 2 || x.size() != 2)
    throw DimensionMismatch("angles are defined for n = 2 only");
  const auto& c = cap.center();
  const double dot = x[0] * c[0] + x[1] * c[1];
  const double cross = c[0] * x[1] - c[1] * x[0];
  return std::atan2(cross, dot);
}

}  // namespace equidist
