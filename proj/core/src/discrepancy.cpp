#include "equidist/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <thread>

#include "equidist/errors.hpp"

namespace equidist {

namespace {

double frac(double x) { return x - std::floor(x); }

// Fractional part of a * m, using the exact product split a*m = hi + lo.
double frac_product(double a, double m) {
  const double hi = a * m;
  const double lo = std::fma(a, m, -hi);
  return frac(frac(hi) + lo);
}

// Keeps results inside [0, 1) after rounding.
double clamp_unit(double x) {
  return x >= 1.0 ? 0.0 : x;
}

}  // namespace

ModOneSequence::ModOneSequence(std::vector<double> values)
    : values_(std::move(values)) {
  for (double v : values_)
    if (!(v >= 0.0 && v < 1.0))
      throw DomainError("sequence value " + std::to_string(v) +
                        " lies outside [0, 1)");
}

ModOneSequence ModOneSequence::from_reals(std::span<const double> values) {
  std::vector<double> reduced;
  reduced.reserve(values.size());
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("sequence value is not finite");
    reduced.push_back(clamp_unit(frac(v)));
  }
  return ModOneSequence(std::move(reduced));
}

DiscrepancyReport extreme_discrepancy_sorted(std::span<const double> sorted) {
  if (sorted.empty()) throw EmptySequence("discrepancy of an empty sequence");
  const std::size_t count = sorted.size();
  const double n = static_cast<double>(count);

  // For distinct values y with le = #{x <= y} and lt = #{x < y}:
  //   mass([a,b]) - (b-a) = (le(b)/N - b) + (a - lt(a)/N)        a <= b in Y
  //   (b-a) - mass((a,b)) = (b - lt(b)/N) + (le(a)/N - a)        a < b
  // with a ranging over {0} u Y and b over Y u {1} in the second case.
  double excess = 0.0;           // sup of mass minus length
  double deficit = 0.0;          // sup of length minus mass
  double star = 0.0;
  double best_left_excess = -2.0;   // max over a <= current of (a - lt(a)/N)
  double best_left_deficit = 0.0;   // a = 0 (as a non-point) contributes 0

  std::size_t i = 0;
  while (i < count) {
    const double y = sorted[i];
    std::size_t j = i;
    while (j < count && sorted[j] == y) ++j;
    const double lt = static_cast<double>(i) / n;
    const double le = static_cast<double>(j) / n;

    // Closed intervals [a, y] with a <= y.
    best_left_excess = std::max(best_left_excess, y - lt);
    excess = std::max(excess, (le - y) + best_left_excess);
    // Open gaps (a, y) with a < y.
    deficit = std::max(deficit, (y - lt) + best_left_deficit);
    best_left_deficit = std::max(best_left_deficit, le - y);

    star = std::max({star, le - y, y - lt});
    i = j;
  }
  // Right endpoint b = 1 with lt(1) = N.
  deficit = std::max(deficit, (1.0 - n / n) + best_left_deficit);

  DiscrepancyReport report;
  report.extreme = std::min(1.0, std::max(excess, deficit));
  report.star = std::min(1.0, star);
  report.count = count;
  return report;
}

DiscrepancyReport extreme_discrepancy(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return extreme_discrepancy_sorted(sorted);
}

DiscrepancyReport extreme_discrepancy(const ModOneSequence& sequence) {
  return extreme_discrepancy(std::span<const double>(sequence.values()));
}

double weyl_sum(const ModOneSequence& sequence, std::int64_t h) {
  if (h == 0) throw DomainError("Weyl sum frequency h must be nonzero");
  if (sequence.empty()) throw EmptySequence("Weyl sum of an empty sequence");
  double re = 0.0;
  double im = 0.0;
  for (double x : sequence.values()) {
    // Reduce h*x mod 1 first so the angle stays small.
    const double phase = 2.0 * std::numbers::pi * frac_product(x, static_cast<double>(h));
    re += std::cos(phase);
    im += std::sin(phase);
  }
  const double n = static_cast<double>(sequence.size());
  return std::min(1.0, std::hypot(re, im) / n);
}

double erdos_turan_bound(const ModOneSequence& sequence, std::int64_t cutoff) {
  if (cutoff < 1) throw DomainError("Erdos-Turan cutoff K must be at least 1");
  double sum = 1.0 / static_cast<double>(cutoff);
  for (std::int64_t h = 1; h <= cutoff; ++h)
    sum += weyl_sum(sequence, h) / static_cast<double>(h);
  return kErdosTuranConstant * sum;
}

namespace {

// Sorted values of (a n^d + b_1 n^{d-1} + ... + b_{d-1} n) mod 1, n = 1..k,
// i.e. the Weyl sequence without its constant coefficient.
void sorted_base_sequence(double a, unsigned degree,
                          std::span<const double> leading_coefficients,
                          std::size_t steps, std::vector<double>& out) {
  out.resize(steps);
  for (std::size_t n = 1; n <= steps; ++n) {
    const double m = static_cast<double>(n);
    double power = 1.0;
    for (unsigned e = 0; e < degree; ++e) power *= m;
    double value = frac_product(a, power);
    for (unsigned idx = 0; idx + 1 < degree; ++idx) {
      // b_{idx+1} multiplies n^{d-1-idx}
      double p = 1.0;
      for (unsigned e = 0; e + 1 + idx < degree; ++e) p *= m;
      value = frac(value + frac_product(leading_coefficients[idx], p));
    }
    out[n - 1] = clamp_unit(value);
  }
  std::sort(out.begin(), out.end());
}

// Adds `shift` in [0,1) to an ascending list of values in [0,1) mod 1,
// keeping the output ascending.
void rotate_sorted(std::span<const double> base, double shift, std::vector<double>& out) {
  out.resize(base.size());
  const auto first_wrapped = std::partition_point(
      base.begin(), base.end(), [shift](double v) { return v + shift < 1.0; });
  std::size_t k = 0;
  for (auto it = first_wrapped; it != base.end(); ++it)
    out[k++] = clamp_unit(std::max(0.0, (*it + shift) - 1.0));
  for (auto it = base.begin(); it != first_wrapped; ++it) out[k++] = *it + shift;
}

void check_coefficients(unsigned degree, std::size_t size) {
  if (degree == 0) throw DomainError("degree must be at least 1");
  if (size != degree)
    throw DimensionMismatch("expected " + std::to_string(degree) +
                            " lower-order coefficients, got " + std::to_string(size));
}

}  // namespace

std::vector<double> weyl_sequence(double a, unsigned degree,
                                  std::span<const double> coefficients,
                                  std::size_t steps) {
  check_coefficients(degree, coefficients.size());
  std::vector<double> values(steps);
  for (std::size_t n = 1; n <= steps; ++n) {
    const double m = static_cast<double>(n);
    double power = 1.0;
    for (unsigned e = 0; e < degree; ++e) power *= m;
    double value = frac_product(a, power);
    for (unsigned idx = 0; idx < degree; ++idx) {
      double p = 1.0;
      for (unsigned e = 0; e + 1 + idx < degree; ++e) p *= m;
      value = frac(value + frac_product(coefficients[idx], p));
    }
    values[n - 1] = clamp_unit(value);
  }
  return values;
}

double g_k(double a, unsigned degree, std::span<const double> coefficients,
           std::size_t steps) {
  check_coefficients(degree, coefficients.size());
  if (steps == 0) throw EmptySequence("G_k needs k >= 1");
  std::vector<double> base;
  std::vector<double> rotated;
  sorted_base_sequence(a, degree, coefficients.first(degree - 1), steps, base);
  rotate_sorted(base, frac(coefficients[degree - 1]), rotated);
  return extreme_discrepancy_sorted(rotated).extreme;
}

namespace {

std::uint64_t grid_size(unsigned grid, unsigned degree, std::uint64_t budget) {
  if (grid < 2) throw DomainError("grid resolution must be at least 2");
  if (degree == 0) throw DomainError("degree must be at least 1");
  std::uint64_t total = 1;
  for (unsigned i = 0; i < degree; ++i) {
    if (total > budget / grid)
      throw GridBudgetExceeded(std::to_string(grid) + "^" + std::to_string(degree) +
                               " grid points exceed the budget of " +
                               std::to_string(budget));
    total *= grid;
  }
  return total;
}

// Scans leading-coefficient cells [cell_lo, cell_hi) of the (d-1)-dimensional
// grid; each cell covers all `grid` values of the constant coefficient.
GridSupremum scan_cells(double a, unsigned degree, std::size_t steps, unsigned grid,
                        std::uint64_t cell_lo, std::uint64_t cell_hi) {
  GridSupremum best;
  best.value = -1.0;
  best.grid = grid;
  std::vector<double> leading(degree - 1);
  std::vector<double> base;
  std::vector<double> rotated;
  for (std::uint64_t cell = cell_lo; cell < cell_hi; ++cell) {
    std::uint64_t rest = cell;
    for (unsigned idx = degree - 1; idx-- > 0;) {
      leading[idx] = static_cast<double>(rest % grid) / grid;
      rest /= grid;
    }
    sorted_base_sequence(a, degree, leading, steps, base);
    for (unsigned c = 0; c < grid; ++c) {
      const double shift = static_cast<double>(c) / grid;
      rotate_sorted(base, shift, rotated);
      const double value = extreme_discrepancy_sorted(rotated).extreme;
      if (value > best.value) {
        best.value = value;
        best.argmax = leading;
        best.argmax.push_back(shift);
      }
    }
  }
  return best;
}

}  // namespace

GridSupremum g_k_sup(double a, unsigned degree, std::size_t steps, unsigned grid,
                     std::uint64_t budget, unsigned threads) {
  grid_size(grid, degree, budget);
  if (steps == 0) throw EmptySequence("G_k needs k >= 1");
  std::uint64_t cells = 1;
  for (unsigned i = 0; i + 1 < degree; ++i) cells *= grid;
  const std::uint64_t workers =
      std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(cells, 1));
  if (workers == 1) return scan_cells(a, degree, steps, grid, 0, cells);

  std::vector<GridSupremum> partial(workers);
  std::vector<std::thread> pool;
  for (std::uint64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      partial[w] = scan_cells(a, degree, steps, grid, cells * w / workers,
                              cells * (w + 1) / workers);
    });
  }
  for (auto& t : pool) t.join();
  // Chunks are in grid order, so taking strict improvements keeps the
  // lexicographically first maximizer.
  GridSupremum best = partial.front();
  for (std::size_t w = 1; w < partial.size(); ++w)
    if (partial[w].value > best.value) best = partial[w];
  return best;
}

RefinedSupremum g_k_sup_refined(double a, unsigned degree, std::size_t steps,
                                unsigned grid, std::uint64_t budget, unsigned threads) {
  RefinedSupremum result;
  result.coarse = g_k_sup(a, degree, steps, grid, budget, threads);
  result.fine = g_k_sup(a, degree, steps, 2 * grid, budget, threads);
  return result;
}

std::size_t a_set_exit_step(double a, unsigned degree, std::size_t max_steps,
                            double eps, unsigned grid, std::uint64_t budget,
                            unsigned threads) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  grid_size(grid, degree, budget);
  for (std::size_t k = 1; k <= max_steps; ++k)
    if (g_k_sup(a, degree, k, grid, budget, threads).value <= eps) return k;
  return max_steps + 1;
}

bool in_A(double a, unsigned degree, std::size_t steps, double eps, unsigned grid,
          std::uint64_t budget, unsigned threads) {
  if (steps == 0) throw DomainError("N must be at least 1");
  return a_set_exit_step(a, degree, steps, eps, grid, budget, threads) > steps;
}

}  // namespace equidist
