#include "equidist/polynomial.hpp"

#include <numeric>

#include "equidist/errors.hpp"

namespace equidist {

MultiIndex::MultiIndex(std::vector<unsigned> exponents)
    : exponents_(std::move(exponents)),
      total_degree_(std::accumulate(exponents_.begin(), exponents_.end(), 0u)) {}

std::vector<MultiIndex> multi_indices_of_degree(std::size_t n, unsigned d) {
  std::vector<MultiIndex> result;
  if (n == 0) return result;
  std::vector<unsigned> current(n, 0);
  auto recurse = [&](auto&& self, std::size_t position, unsigned remaining) -> void {
    if (position + 1 == n) {
      current[position] = remaining;
      result.emplace_back(current);
      return;
    }
    for (unsigned e = 0; e <= remaining; ++e) {
      current[position] = e;
      self(self, position + 1, remaining - e);
    }
  };
  recurse(recurse, 0, d);
  return result;
}

Integer monomial_value(const MultiIndex& index, std::span<const std::int64_t> x) {
  Integer value = 1;
  Integer power;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] == 0) continue;
    const Integer base(static_cast<long>(x[i]));
    mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), index[i]);
    value *= power;
  }
  return value;
}

Polynomial::Polynomial(std::size_t dimension) : dimension_(dimension) {}

Polynomial::Polynomial(std::size_t dimension, Terms terms) : dimension_(dimension) {
  for (const auto& [index, coefficient] : terms) add_term(index, coefficient);
}

void Polynomial::check_dimension(std::size_t n) const {
  if (n != dimension_)
    throw DimensionMismatch("expected " + std::to_string(dimension_) +
                            " coordinates, got " + std::to_string(n));
}

void Polynomial::refresh_degree() {
  degree_ = 0;
  for (const auto& [index, coefficient] : terms_)
    degree_ = std::max(degree_, index.total_degree());
}

ExactScalar Polynomial::constant_term() const {
  return coefficient(MultiIndex(std::vector<unsigned>(dimension_, 0)));
}

const ExactScalar& Polynomial::coefficient(const MultiIndex& index) const {
  static const ExactScalar zero;
  const auto it = terms_.find(index);
  return it == terms_.end() ? zero : it->second;
}

void Polynomial::add_term(const MultiIndex& index, const ExactScalar& coefficient) {
  check_dimension(index.size());
  if (coefficient.is_zero()) return;
  auto it = terms_.find(index);
  if (it == terms_.end()) {
    terms_.emplace(index, coefficient);
  } else {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
  refresh_degree();
}

Polynomial Polynomial::top_homogeneous_part() const {
  Polynomial top(dimension_);
  for (const auto& [index, coefficient] : terms_)
    if (index.total_degree() == degree_) top.terms_.emplace(index, coefficient);
  top.refresh_degree();
  return top;
}

ExactScalar Polynomial::evaluate(std::span<const std::int64_t> x) const {
  check_dimension(x.size());
  ExactScalar sum;
  for (const auto& [index, coefficient] : terms_)
    sum += scale(coefficient, Rational(monomial_value(index, x)));
  return sum;
}

ExactScalar Polynomial::evaluate(std::span<const Rational> x) const {
  check_dimension(x.size());
  ExactScalar sum;
  for (const auto& [index, coefficient] : terms_) {
    Rational monomial = 1;
    for (std::size_t i = 0; i < dimension_; ++i)
      for (unsigned e = 0; e < index[i]; ++e) monomial *= x[i];
    sum += scale(coefficient, monomial);
  }
  return sum;
}

double Polynomial::evaluate_double(std::span<const double> x) const {
  check_dimension(x.size());
  double sum = 0.0;
  for (const auto& [index, coefficient] : terms_) {
    double monomial = static_cast<double>(coefficient.approx());
    for (std::size_t i = 0; i < dimension_; ++i)
      for (unsigned e = 0; e < index[i]; ++e) monomial *= x[i];
    sum += monomial;
  }
  return sum;
}

Polynomial Polynomial::reduced_mod_one() const {
  Polynomial reduced(dimension_);
  for (const auto& [index, coefficient] : terms_) {
    ExactScalar c = coefficient.reduced_mod_one();
    if (!c.is_zero()) reduced.terms_.emplace(index, std::move(c));
  }
  reduced.refresh_degree();
  return reduced;
}

bool Polynomial::has_irrational_nonconstant_coefficient() const {
  for (const auto& [index, coefficient] : terms_)
    if (index.total_degree() > 0 && !coefficient.is_rational()) return true;
  return false;
}

double evaluate_mod1(const Polynomial& f, std::span<const std::int64_t> x) {
  return mod_one(f.evaluate(x));
}

namespace {

Polynomial derivative_along(const Polynomial& f, std::span<const std::int64_t> v) {
  Polynomial result(f.dimension());
  for (const auto& [index, coefficient] : f.terms()) {
    for (std::size_t i = 0; i < f.dimension(); ++i) {
      if (index[i] == 0 || v[i] == 0) continue;
      std::vector<unsigned> lowered = index.exponents();
      --lowered[i];
      const Rational factor =
          Rational(static_cast<long>(index[i])) * Rational(static_cast<long>(v[i]));
      result.add_term(MultiIndex(std::move(lowered)), scale(coefficient, factor));
    }
  }
  return result;
}

Integer binomial(unsigned n, unsigned k) {
  Integer result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

Integer int_power(std::int64_t base, unsigned exponent) {
  Integer result;
  const Integer b(static_cast<long>(base));
  mpz_pow_ui(result.get_mpz_t(), b.get_mpz_t(), exponent);
  return result;
}

}  // namespace

Polynomial directional_derivative(const Polynomial& f,
                                  std::span<const std::int64_t> v, unsigned k) {
  if (v.size() != f.dimension())
    throw DimensionMismatch("direction has " + std::to_string(v.size()) +
                            " coordinates, polynomial has dimension " +
                            std::to_string(f.dimension()));
  if (k == 0) throw DomainError("derivative order must be at least 1");
  Polynomial result = f;
  for (unsigned step = 0; step < k && !result.is_zero(); ++step)
    result = derivative_along(result, v);
  return result;
}

ExactScalar leading_directional_value(const Polynomial& f,
                                      std::span<const std::int64_t> v) {
  if (v.size() != f.dimension())
    throw DimensionMismatch("direction has " + std::to_string(v.size()) +
                            " coordinates, polynomial has dimension " +
                            std::to_string(f.dimension()));
  if (f.is_constant()) throw DomainError("polynomial is constant");
  Integer factorial;
  mpz_fac_ui(factorial.get_mpz_t(), f.degree());
  ExactScalar sum;
  for (const auto& [index, coefficient] : f.terms()) {
    if (index.total_degree() != f.degree()) continue;
    sum += scale(coefficient, Rational(monomial_value(index, v)));
  }
  return scale(sum, Rational(factorial));
}

Polynomial residue_decompose(const Polynomial& f, std::int64_t q,
                             std::span<const std::int64_t> r) {
  if (q < 1) throw DomainError("residue modulus must be positive");
  if (r.size() != f.dimension())
    throw DimensionMismatch("residue has " + std::to_string(r.size()) +
                            " coordinates, polynomial has dimension " +
                            std::to_string(f.dimension()));
  const std::size_t n = f.dimension();
  Polynomial result(n);
  std::vector<unsigned> exponents(n, 0);
  for (const auto& [index, coefficient] : f.terms()) {
    // prod_i (q w_i + r_i)^{l_i} = prod_i sum_j C(l_i, j) q^j r_i^{l_i - j} w_i^j
    auto expand = [&](auto&& self, std::size_t i, const Integer& factor) -> void {
      if (i == n) {
        result.add_term(MultiIndex(exponents), scale(coefficient, Rational(factor)));
        return;
      }
      for (unsigned j = 0; j <= index[i]; ++j) {
        const Integer term = binomial(index[i], j) * int_power(q, j) *
                             int_power(r[i], index[i] - j);
        if (term == 0) continue;
        exponents[i] = j;
        self(self, i + 1, factor * term);
      }
      exponents[i] = 0;
    };
    expand(expand, 0, Integer(1));
  }
  return result;
}

}  // namespace equidist
