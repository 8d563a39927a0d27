#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "equidist/exact_numbers.hpp"

namespace equidist {

using IntVector = std::vector<std::int64_t>;

/// Exponent tuple of a monomial x^l = prod x_i^{l_i}.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> exponents);

  const std::vector<unsigned>& exponents() const { return exponents_; }
  std::size_t size() const { return exponents_.size(); }
  unsigned operator[](std::size_t i) const { return exponents_[i]; }
  unsigned total_degree() const { return total_degree_; }

  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents_ <=> b.exponents_;
  }
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents_ == b.exponents_;
  }

 private:
  std::vector<unsigned> exponents_;
  unsigned total_degree_ = 0;
};

/// All multi-indices of length n and total degree d, in lexicographic order.
std::vector<MultiIndex> multi_indices_of_degree(std::size_t n, unsigned d);

/// prod_i v_i^{l_i}, exact.
Integer monomial_value(const MultiIndex& index, std::span<const std::int64_t> x);

/// Sparse multivariate polynomial with ExactScalar coefficients.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, ExactScalar>;

  explicit Polynomial(std::size_t dimension);
  Polynomial(std::size_t dimension, Terms terms);

  std::size_t dimension() const { return dimension_; }
  const Terms& terms() const { return terms_; }
  /// Maximal total degree over nonzero terms; 0 for constants (including 0).
  unsigned degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return degree_ == 0; }
  /// Constant term (zero when absent).
  ExactScalar constant_term() const;
  const ExactScalar& coefficient(const MultiIndex& index) const;

  /// Adds `coefficient * x^index`, merging with an existing term.
  void add_term(const MultiIndex& index, const ExactScalar& coefficient);

  /// Terms of total degree exactly degree().
  Polynomial top_homogeneous_part() const;

  ExactScalar evaluate(std::span<const std::int64_t> x) const;
  ExactScalar evaluate(std::span<const Rational> x) const;
  double evaluate_double(std::span<const double> x) const;

  /// Drops terms that are integer-valued on Z^n and reduces the remaining
  /// rational parts mod 1. Values mod 1 on integer points are unchanged.
  Polynomial reduced_mod_one() const;

  /// True if some term of positive degree has an irrational coefficient.
  bool has_irrational_nonconstant_coefficient() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dimension_ == b.dimension_ && a.terms_ == b.terms_;
  }

 private:
  void check_dimension(std::size_t n) const;
  void refresh_degree();

  std::size_t dimension_ = 0;
  Terms terms_;
  unsigned degree_ = 0;
};

/// Fractional part of F(x), evaluated exactly and then rounded to double.
double evaluate_mod1(const Polynomial& f, std::span<const std::int64_t> x);

/// k-th derivative of F along v, (sum_i v_i d/dx_i)^k F.
Polynomial directional_derivative(const Polynomial& f,
                                  std::span<const std::int64_t> v, unsigned k);

/// d! * F_d(v) with F_d the top homogeneous part; equals the constant
/// directional_derivative(F, v, deg F).
ExactScalar leading_directional_value(const Polynomial& f,
                                      std::span<const std::int64_t> v);

/// G(w) = F(q*w + r), expanded exactly.
Polynomial residue_decompose(const Polynomial& f, std::int64_t q,
                             std::span<const std::int64_t> r);

}  // namespace equidist
