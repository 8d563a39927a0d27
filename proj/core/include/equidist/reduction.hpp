#pragma once

// Constructive side of the lattice equidistribution argument for polynomials:
// find an integer direction whose top-order directional derivative is an
// irrational constant, and, when every top coefficient is rational, split the
// lattice into residue classes mod q where the degree drops.

#include <cstdint>
#include <optional>
#include <vector>

#include "equidist/polynomial.hpp"

namespace equidist {

/// Rank of an integer in the order 0, 1, -1, 2, -2, ...
std::uint64_t zigzag_rank(std::int64_t value);

/// Nonzero integer vectors of sup-norm exactly `shell`, ordered
/// lexicographically with coordinates compared by zigzag_rank.
std::vector<IntVector> directions_in_shell(std::size_t n, std::int64_t shell);

/// Walks shells 1, 2, 3, ... in directions_in_shell order.
class DirectionEnumerator {
 public:
  explicit DirectionEnumerator(std::size_t n) : n_(n) {}
  const IntVector& next();
  std::int64_t current_shell() const { return shell_; }

 private:
  std::size_t n_;
  std::int64_t shell_ = 0;
  std::vector<IntVector> pending_;
  std::size_t position_ = 0;
};

/// u_v(l) = prod_i m_i^{l_i} for every l with |l| = d, in
/// multi_indices_of_degree order.
std::vector<Integer> monomial_evaluation_vector(std::span<const std::int64_t> v,
                                                unsigned d);

using RationalMatrix = std::vector<std::vector<Rational>>;

std::size_t exact_rank(RationalMatrix rows);
/// Determinant of a square matrix by fraction-exact elimination.
Rational exact_determinant(RationalMatrix rows);

/// Directions v_1..v_k (k = number of degree-d monomials in n variables)
/// whose monomial evaluation vectors are linearly independent, chosen
/// greedily in DirectionEnumerator order.
std::vector<IntVector> monomial_basis_search(std::size_t n, unsigned d);

/// First direction in enumeration order with an irrational leading
/// directional value. Throws AllTopCoefficientsRational when no top
/// coefficient is irrational.
IntVector find_irrational_direction(const Polynomial& f);

/// One node of the degree-lowering induction.
struct ReductionNode {
  enum class Kind {
    kIrrationalDirection,  // leaf: direction with irrational constant derivative
    kResidueSplit,         // top coefficients rational; split mod `modulus`
    kRationalConstant,     // leaf: values mod 1 are a single rational point
  };

  Kind kind = Kind::kRationalConstant;
  Polynomial polynomial{0};
  IntVector direction;
  ExactScalar leading_value;
  std::int64_t modulus = 1;
  /// Residue class r (entries in [0, parent modulus)) this node covers;
  /// empty at the root.
  IntVector residue;
  std::vector<ReductionNode> children;
};

inline constexpr std::size_t kDefaultReductionNodeBudget = 1u << 16;

/// Runs the induction on F reduced mod 1. Depth is bounded by deg F; the
/// number of nodes is bounded by `node_budget` (CardinalityOverflow).
ReductionNode reduce_for_equidistribution(
    const Polynomial& f, std::size_t node_budget = kDefaultReductionNodeBudget);

/// True when every leaf is an irrational-direction certificate.
bool certifies_equidistribution(const ReductionNode& node);

}  // namespace equidist
