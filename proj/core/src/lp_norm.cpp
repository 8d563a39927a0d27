#include "equidist/lp_norm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "equidist/errors.hpp"

namespace equidist {

namespace {

void check_size(const LpNormSpec& spec, std::size_t size) {
  if (size != spec.dimension())
    throw DimensionMismatch("expected " + std::to_string(spec.dimension()) +
                            " coordinates, got " + std::to_string(size));
}

double positive_power_sum(const LpNormSpec& spec, std::span<const double> x,
                          std::size_t j) {
  check_size(spec, x.size());
  if (j >= x.size()) throw DomainError("coordinate index out of range");
  double sum = 0.0;
  for (double xi : x) {
    if (!(xi > 0.0))
      throw DomainError("derivative requires every coordinate to be positive");
    sum += std::pow(xi, spec.p());
  }
  return sum;
}

}  // namespace

LpNormSpec::LpNormSpec(double p, std::size_t dimension)
    : p_(p), dimension_(dimension) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw DomainError("l^p exponent must satisfy 1 < p < infinity");
  if (dimension == 0) throw DomainError("dimension must be at least 1");
}

double lp_eval(const LpNormSpec& spec, std::span<const double> x) {
  check_size(spec, x.size());
  if (spec.p() == 2.0) {
    double sum = 0.0;
    for (double xi : x) sum += xi * xi;
    return std::sqrt(sum);
  }
  double largest = 0.0;
  for (double xi : x) largest = std::max(largest, std::abs(xi));
  if (largest == 0.0) return 0.0;
  // Scaling by the largest coordinate keeps the power sum in range.
  double sum = 0.0;
  for (double xi : x) sum += std::pow(std::abs(xi) / largest, spec.p());
  const double value = largest * std::pow(sum, 1.0 / spec.p());
  // Snap values within rounding of an integer, e.g. the norm of (k, 0, ..., 0).
  const double nearest = std::round(value);
  if (std::abs(value - nearest) <= 8 * std::numeric_limits<double>::epsilon() * value)
    return nearest;
  return value;
}

double lp_directional_derivative(const LpNormSpec& spec, std::span<const double> x,
                                 std::size_t j) {
  const double sum = positive_power_sum(spec, x, j);
  return std::pow(x[j], spec.p() - 1.0) * std::pow(sum, 1.0 / spec.p() - 1.0);
}

double lp_second_directional_derivative(const LpNormSpec& spec,
                                        std::span<const double> x, std::size_t j) {
  const double sum = positive_power_sum(spec, x, j);
  const double p = spec.p();
  return (p - 1.0) * std::pow(x[j], p - 2.0) * std::pow(sum, 1.0 / p - 1.0) *
         (1.0 - std::pow(x[j], p) / sum);
}

double l1_eval(std::span<const double> x) {
  double sum = 0.0;
  for (double xi : x) sum += std::abs(xi);
  return sum;
}

}  // namespace equidist
