#pragma once

#include <cstddef>
#include <span>

namespace equidist {

/// The l^p norm on R^n for 1 < p < infinity, evaluated in double precision.
class LpNormSpec {
 public:
  /// Throws DomainError unless 1 < p < infinity and n >= 1.
  LpNormSpec(double p, std::size_t dimension);

  double p() const { return p_; }
  std::size_t dimension() const { return dimension_; }

 private:
  double p_;
  std::size_t dimension_;
};

/// (sum |x_i|^p)^(1/p). Exact for p = 2 on integer inputs whose norm is an
/// integer.
double lp_eval(const LpNormSpec& spec, std::span<const double> x);

/// d||x||_p / dx_j = x_j^(p-1) (sum x_i^p)^(1/p - 1) on the open positive
/// orthant. `j` is zero-based. Throws DomainError if some x_i <= 0.
double lp_directional_derivative(const LpNormSpec& spec, std::span<const double> x,
                                 std::size_t j);

/// Second derivative along coordinate j,
/// (p-1) x_j^(p-2) S^(1/p-1) (1 - x_j^p / S) with S = sum x_i^p.
/// Same domain as lp_directional_derivative.
double lp_second_directional_derivative(const LpNormSpec& spec,
                                        std::span<const double> x, std::size_t j);

/// sum |x_i|; the p = 1 negative control.
double l1_eval(std::span<const double> x);

}  // namespace equidist
