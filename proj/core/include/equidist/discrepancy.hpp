#pragma once

// Discrepancy of finite sequences mod 1 with the closed-interval convention
//   D_N = sup_{[a,b] in [0,1]} | #{x_n in [a,b]} / N - (b - a) |,
// Weyl sums, the Erdos-Turan upper bound, and the G_k / A^d(N, eps)
// machinery for degree-d Weyl sequences a n^d + P(n).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace equidist {

/// Finite sequence of values in [0, 1).
class ModOneSequence {
 public:
  ModOneSequence() = default;
  /// Throws DomainError when a value lies outside [0, 1).
  explicit ModOneSequence(std::vector<double> values);
  /// Reduces arbitrary finite reals mod 1.
  static ModOneSequence from_reals(std::span<const double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

 private:
  std::vector<double> values_;
};

struct DiscrepancyReport {
  double extreme = 0.0;
  double star = 0.0;
  std::size_t count = 0;
};

/// Exact closed-interval extreme and star discrepancy in O(N log N).
/// Throws EmptySequence.
DiscrepancyReport extreme_discrepancy(const ModOneSequence& sequence);
/// Same, for values already known to lie in [0, 1).
DiscrepancyReport extreme_discrepancy(std::span<const double> values);
/// Same, for values already sorted ascending.
DiscrepancyReport extreme_discrepancy_sorted(std::span<const double> sorted);

/// |(1/N) sum_n exp(2 pi i h x_n)|. Throws DomainError for h = 0.
double weyl_sum(const ModOneSequence& sequence, std::int64_t h);

/// Constant in the pinned Erdos-Turan form C (1/K + sum_{h<=K} |S_h| / h).
inline constexpr double kErdosTuranConstant = 3.0;

double erdos_turan_bound(const ModOneSequence& sequence, std::int64_t cutoff);

/// Values (a n^d + P_b(n)) mod 1 for n = 1..k with
/// P_b(t) = b_1 t^{d-1} + ... + b_d.
std::vector<double> weyl_sequence(double a, unsigned degree,
                                  std::span<const double> coefficients,
                                  std::size_t steps);

/// Extreme discrepancy of weyl_sequence(a, d, b, k).
double g_k(double a, unsigned degree, std::span<const double> coefficients,
           std::size_t steps);

inline constexpr std::uint64_t kDefaultGridBudget = 1u << 22;
inline constexpr unsigned kDefaultGrid = 64;

struct GridSupremum {
  /// max of G_k over the grid {0, 1/g, ..., (g-1)/g}^d.
  double value = 0.0;
  unsigned grid = 0;
  /// Lexicographically first maximizing coefficient vector.
  std::vector<double> argmax;
};

/// Grid approximation of G_k(a) = sup_b G_k(P_b, a). Throws
/// GridBudgetExceeded when g^d exceeds `budget`. Uses up to `threads`
/// workers; the result does not depend on the thread count.
GridSupremum g_k_sup(double a, unsigned degree, std::size_t steps, unsigned grid,
                     std::uint64_t budget = kDefaultGridBudget,
                     unsigned threads = 1);

/// G_k_sup at `grid` and at 2 * grid (a superset of points); the gap is the
/// observed oscillation of the grid approximation.
struct RefinedSupremum {
  GridSupremum coarse;
  GridSupremum fine;
  double oscillation() const { return fine.value - coarse.value; }
};
RefinedSupremum g_k_sup_refined(double a, unsigned degree, std::size_t steps,
                                unsigned grid,
                                std::uint64_t budget = kDefaultGridBudget,
                                unsigned threads = 1);

/// Smallest k in 1..max_steps with G_k_sup(a) <= eps, or max_steps + 1 when
/// none exists. in_A(a, d, N, eps) is exactly exit_step > N.
std::size_t a_set_exit_step(double a, unsigned degree, std::size_t max_steps,
                            double eps, unsigned grid,
                            std::uint64_t budget = kDefaultGridBudget,
                            unsigned threads = 1);

/// True iff G_k_sup(a, d, k, grid) > eps for every k = 1..N.
bool in_A(double a, unsigned degree, std::size_t steps, double eps, unsigned grid,
          std::uint64_t budget = kDefaultGridBudget, unsigned threads = 1);

}  // namespace equidist
