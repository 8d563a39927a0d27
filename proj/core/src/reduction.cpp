#include "equidist/reduction.hpp"

#include <algorithm>
#include <cstdlib>

#include "equidist/errors.hpp"

namespace equidist {

std::uint64_t zigzag_rank(std::int64_t value) {
  if (value == 0) return 0;
  const auto magnitude = static_cast<std::uint64_t>(value > 0 ? value : -value);
  return value > 0 ? 2 * magnitude - 1 : 2 * magnitude;
}

std::vector<IntVector> directions_in_shell(std::size_t n, std::int64_t shell) {
  std::vector<IntVector> result;
  if (n == 0 || shell < 1) return result;
  // Digits in zigzag order: 0, 1, -1, ..., shell, -shell.
  std::vector<std::int64_t> digits{0};
  for (std::int64_t m = 1; m <= shell; ++m) {
    digits.push_back(m);
    digits.push_back(-m);
  }
  std::vector<std::size_t> odometer(n, 0);
  IntVector v(n);
  while (true) {
    std::int64_t sup = 0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = digits[odometer[i]];
      sup = std::max<std::int64_t>(sup, std::llabs(v[i]));
    }
    if (sup == shell) result.push_back(v);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++odometer[i] < digits.size()) break;
      odometer[i] = 0;
      if (i == 0) return result;
    }
  }
}

const IntVector& DirectionEnumerator::next() {
  while (position_ >= pending_.size()) {
    ++shell_;
    pending_ = directions_in_shell(n_, shell_);
    position_ = 0;
  }
  return pending_[position_++];
}

std::vector<Integer> monomial_evaluation_vector(std::span<const std::int64_t> v,
                                                unsigned d) {
  std::vector<Integer> entries;
  for (const auto& index : multi_indices_of_degree(v.size(), d))
    entries.push_back(monomial_value(index, v));
  return entries;
}

namespace {

// Reduces `rows` in place to row echelon form and returns the rank, tracking
// the determinant sign/scale when `determinant` is non-null.
std::size_t eliminate(RationalMatrix& rows, Rational* determinant) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  Rational det = 1;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][col]) == 0) ++pivot;
    if (pivot == rows.size()) {
      det = 0;
      continue;
    }
    if (pivot != rank) {
      std::swap(rows[pivot], rows[rank]);
      det = -det;
    }
    det *= rows[rank][col];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (sgn(rows[r][col]) == 0) continue;
      const Rational factor = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < cols; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    ++rank;
  }
  if (determinant) *determinant = rank == rows.size() ? det : Rational(0);
  return rank;
}

}  // namespace

std::size_t exact_rank(RationalMatrix rows) { return eliminate(rows, nullptr); }

Rational exact_determinant(RationalMatrix rows) {
  for (const auto& row : rows)
    if (row.size() != rows.size())
      throw DimensionMismatch("determinant of a non-square matrix");
  Rational det;
  eliminate(rows, &det);
  return det;
}

std::vector<IntVector> monomial_basis_search(std::size_t n, unsigned d) {
  if (n == 0 || d == 0) throw DomainError("dimension and degree must be >= 1");
  const std::size_t k = multi_indices_of_degree(n, d).size();
  std::vector<IntVector> basis;
  RationalMatrix rows;
  DirectionEnumerator directions(n);
  while (basis.size() < k) {
    const IntVector& v = directions.next();
    std::vector<Rational> row;
    for (const auto& entry : monomial_evaluation_vector(v, d)) row.emplace_back(entry);
    rows.push_back(std::move(row));
    if (exact_rank(rows) == rows.size()) {
      basis.push_back(v);
    } else {
      rows.pop_back();
    }
  }
  return basis;
}

IntVector find_irrational_direction(const Polynomial& f) {
  if (f.is_constant())
    throw AllTopCoefficientsRational("polynomial is constant");
  const Polynomial top = f.top_homogeneous_part();
  const bool any_irrational = std::any_of(
      top.terms().begin(), top.terms().end(),
      [](const auto& term) { return !term.second.is_rational(); });
  if (!any_irrational)
    throw AllTopCoefficientsRational(
        "every coefficient of degree " + std::to_string(f.degree()) +
        " is rational; split into residue classes instead");

  // Some vector of a monomial basis must work, so the search ends no later
  // than the largest shell used by monomial_basis_search.
  std::int64_t last_shell = 0;
  for (const auto& v : monomial_basis_search(f.dimension(), f.degree()))
    for (auto c : v) last_shell = std::max<std::int64_t>(last_shell, std::llabs(c));

  DirectionEnumerator directions(f.dimension());
  while (true) {
    const IntVector& v = directions.next();
    if (directions.current_shell() > last_shell) break;
    if (!leading_directional_value(top, v).is_rational()) return v;
  }
  throw std::logic_error(
      "no irrational direction within the monomial basis shell; the generator "
      "set is not linearly independent over Q");
}

namespace {

Integer top_denominator_lcm(const Polynomial& f) {
  Integer q = 1;
  for (const auto& [index, coefficient] : f.terms()) {
    if (index.total_degree() != f.degree()) continue;
    mpz_lcm(q.get_mpz_t(), q.get_mpz_t(),
            coefficient.rational_part().get_den_mpz_t());
  }
  return q;
}

ReductionNode reduce(const Polynomial& f, std::size_t& budget) {
  if (budget == 0)
    throw CardinalityOverflow("reduction tree exceeds its node budget");
  --budget;
  ReductionNode node;
  node.polynomial = f.reduced_mod_one();
  const Polynomial& g = node.polynomial;
  if (g.is_constant()) {
    node.kind = ReductionNode::Kind::kRationalConstant;
    node.leading_value = g.constant_term();
    return node;
  }
  try {
    node.direction = find_irrational_direction(g);
    node.kind = ReductionNode::Kind::kIrrationalDirection;
    node.leading_value = leading_directional_value(g, node.direction);
    return node;
  } catch (const AllTopCoefficientsRational&) {
  }
  const Integer q = top_denominator_lcm(g);
  if (!q.fits_slong_p())
    throw CardinalityOverflow("residue modulus does not fit a machine integer");
  node.kind = ReductionNode::Kind::kResidueSplit;
  node.modulus = q.get_si();
  const std::size_t n = g.dimension();
  IntVector residue(n, 0);
  while (true) {
    node.children.push_back(
        reduce(residue_decompose(g, node.modulus, residue), budget));
    node.children.back().residue = residue;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++residue[i] < node.modulus) break;
      residue[i] = 0;
      if (i == 0) return node;
    }
  }
}

}  // namespace

ReductionNode reduce_for_equidistribution(const Polynomial& f,
                                          std::size_t node_budget) {
  return reduce(f, node_budget);
}

bool certifies_equidistribution(const ReductionNode& node) {
  switch (node.kind) {
    case ReductionNode::Kind::kIrrationalDirection:
      return true;
    case ReductionNode::Kind::kRationalConstant:
      return false;
    case ReductionNode::Kind::kResidueSplit:
      return std::all_of(node.children.begin(), node.children.end(),
                         [](const ReductionNode& child) {
                           return certifies_equidistribution(child);
                         });
  }
  return false;
}

}  // namespace equidist
