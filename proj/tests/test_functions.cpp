#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <string>

#include "equidist/errors.hpp"
#include "equidist/lp_norm.hpp"
#include "equidist/polynomial.hpp"
#include "equidist/reduction.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace equidist;
using testing::gen;
using testing::poly;
using testing::q;

namespace {

Polynomial sqrt2_xy() { return poly(2, {{{1, 1}, gen("sqrt2")}}); }

IntVector v(std::initializer_list<std::int64_t> xs) { return IntVector(xs); }

// Random polynomial of degree <= 3 in n variables with small rational
// coefficients and, when `irrational` is set, one sqrt2 term at the top.
Polynomial random_polynomial(std::mt19937_64& rng, std::size_t n, bool irrational) {
  std::uniform_int_distribution<long> coef(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  Polynomial f(n);
  const unsigned degree = 1 + static_cast<unsigned>(rng() % 3);
  for (unsigned d = 0; d <= degree; ++d)
    for (const auto& index : multi_indices_of_degree(n, d))
      if (rng() % 2) f.add_term(index, ExactScalar(q(coef(rng), den(rng))));
  if (irrational) {
    const auto top = multi_indices_of_degree(n, degree);
    f.add_term(top[rng() % top.size()], gen("sqrt2", q(1 + (rng() % 3), den(rng))));
  }
  return f;
}

}  // namespace

TEST_CASE("multi-indices and polynomial invariants") {
  CHECK(multi_indices_of_degree(2, 2).size() == 3);
  CHECK(multi_indices_of_degree(3, 2).size() == 6);
  for (const auto& index : multi_indices_of_degree(3, 4)) CHECK(index.total_degree() == 4);
  auto f = poly(2, {{{2, 0}, ExactScalar(1)}, {{0, 1}, ExactScalar(3)}});
  CHECK(f.degree() == 2);
  f.add_term(MultiIndex({2, 0}), ExactScalar(-1));
  CHECK(f.degree() == 1);
  CHECK(f.terms().size() == 1);
  CHECK_THROWS_AS(f.add_term(MultiIndex({1, 1, 1}), ExactScalar(1)), DimensionMismatch);
}

TEST_CASE("evaluate_mod1") {
  CHECK(evaluate_mod1(sqrt2_xy(), v({1, 1})) == doctest::Approx(0.41421356237309504));
  CHECK(evaluate_mod1(poly(1, {{{2}, q(1, 2)}}), v({3})) == 0.5);
  CHECK(evaluate_mod1(sqrt2_xy(), v({0, 0})) == 0.0);
  CHECK(evaluate_mod1(poly(2, {{{1, 0}, gen("pi")}, {{0, 2}, gen("e", -2)}}), v({0, 0})) ==
        0.0);
  CHECK_THROWS_AS(evaluate_mod1(sqrt2_xy(), v({1})), DimensionMismatch);
}

TEST_CASE("directional_derivative") {
  SUBCASE("x^3 along 2 three times") {
    const auto d = directional_derivative(poly(1, {{{3}, ExactScalar(1)}}), v({2}), 3);
    CHECK(d.is_constant());
    CHECK(d.constant_term() == ExactScalar(48));
  }
  SUBCASE("sqrt2 xy along (1,1) twice") {
    const auto d = directional_derivative(sqrt2_xy(), v({1, 1}), 2);
    CHECK(d.is_constant());
    CHECK(d.constant_term() == gen("sqrt2", 2));
  }
  SUBCASE("x^2 + y along (0,1) twice") {
    const auto d = directional_derivative(
        poly(2, {{{2, 0}, ExactScalar(1)}, {{0, 1}, ExactScalar(1)}}), v({0, 1}), 2);
    CHECK(d.is_zero());
  }
  CHECK_THROWS_AS(directional_derivative(sqrt2_xy(), v({1, 1}), 0), DomainError);
  CHECK_THROWS_AS(directional_derivative(sqrt2_xy(), v({1}), 1), DimensionMismatch);
}

TEST_CASE("homogeneity identity: d-th derivative of a degree-d form is d! F(v)") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const unsigned d = 1 + static_cast<unsigned>(rng() % 3);
    Polynomial f(n);
    for (const auto& index : multi_indices_of_degree(n, d))
      f.add_term(index, ExactScalar(q(static_cast<long>(rng() % 7) - 3, 1 + rng() % 3)) +
                            gen("sqrt3", q(static_cast<long>(rng() % 5) - 2)));
    IntVector dir(n);
    for (auto& x : dir) x = static_cast<std::int64_t>(rng() % 7) - 3;
    long factorial = 1;
    for (unsigned i = 2; i <= d; ++i) factorial *= i;
    const auto derivative = directional_derivative(f, dir, d);
    CHECK(derivative.degree() == 0);
    CHECK(derivative.constant_term() == scale(f.evaluate(dir), factorial));
    CHECK(leading_directional_value(f, dir) == derivative.constant_term());
  }
}

TEST_CASE("directional derivative agrees with central finite differences") {
  // The difference quotient is formed exactly and rounded once, so only the
  // truncation error of the stencil remains.
  std::mt19937_64 rng(5);
  const Rational h = q(1, 1000);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const Polynomial f = random_polynomial(rng, n, true);
    IntVector dir(n);
    IntVector base(n);
    for (std::size_t i = 0; i < n; ++i) {
      dir[i] = static_cast<std::int64_t>(rng() % 3) - 1;
      base[i] = static_cast<std::int64_t>(rng() % 5) - 2;
    }
    for (unsigned k = 1; k <= 3; ++k) {
      const double symbolic = directional_derivative(f, dir, k).evaluate(base).approx().convert_to<double>();
      ExactScalar sum;
      Rational binomial = 1;
      for (unsigned i = 0; i <= k; ++i) {
        const Rational t = (Rational(k) / 2 - i) * h;
        std::vector<Rational> x(n);
        for (std::size_t c = 0; c < n; ++c) x[c] = base[c] + t * dir[c];
        const Rational weight = (i % 2 == 0 ? binomial : Rational(-binomial));
        sum = sum + scale(f.evaluate(std::span<const Rational>(x)), weight);
        binomial = binomial * (k - i) / (i + 1);
      }
      Rational h_power = 1;
      for (unsigned i = 0; i < k; ++i) h_power *= h;
      const double numeric =
          scale(sum, Rational(1) / h_power).approx().convert_to<double>();
      CHECK(std::abs(symbolic - numeric) <= 1e-6 * std::max(1.0, std::abs(symbolic)));
    }
  }
}

TEST_CASE("leading_directional_value") {
  CHECK(leading_directional_value(sqrt2_xy(), v({1, 1})) == gen("sqrt2", 2));
  CHECK_FALSE(leading_directional_value(sqrt2_xy(), v({1, 1})).is_rational());
  CHECK(leading_directional_value(sqrt2_xy(), v({1, 0})).is_zero());
  CHECK(leading_directional_value(poly(1, {{{2}, q(1, 3)}}), v({3})) == ExactScalar(6));
}

TEST_CASE("direction enumeration order") {
  CHECK(zigzag_rank(0) == 0);
  CHECK(zigzag_rank(1) == 1);
  CHECK(zigzag_rank(-1) == 2);
  CHECK(zigzag_rank(2) == 3);
  const auto shell1 = directions_in_shell(2, 1);
  CHECK(shell1.size() == 8);
  CHECK(shell1.front() == v({0, 1}));
  DirectionEnumerator e(2);
  CHECK(e.next() == v({0, 1}));
  for (int i = 0; i < 7; ++i) e.next();
  CHECK(e.current_shell() == 1);
  e.next();
  CHECK(e.current_shell() == 2);
}

TEST_CASE("find_irrational_direction") {
  CHECK(find_irrational_direction(sqrt2_xy()) == v({1, 1}));
  CHECK(find_irrational_direction(poly(1, {{{2}, gen("sqrt2")}})) == v({1}));
  CHECK_THROWS_AS(
      find_irrational_direction(poly(1, {{{2}, q(1, 3)}, {{1}, gen("sqrt2")}})),
      AllTopCoefficientsRational);
}

TEST_CASE("find_irrational_direction is minimal in enumeration order") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const Polynomial f = random_polynomial(rng, n, true);
    const IntVector found = find_irrational_direction(f);
    CHECK_FALSE(leading_directional_value(f, found).is_rational());
    // brute force: every direction before `found` has a rational value
    std::int64_t shell = 0;
    for (auto x : found) shell = std::max<std::int64_t>(shell, std::abs(x));
    bool reached = false;
    for (std::int64_t s = 1; s <= shell && !reached; ++s) {
      for (const auto& dir : directions_in_shell(n, s)) {
        if (dir == found) {
          reached = true;
          break;
        }
        CHECK(leading_directional_value(f, dir).is_rational());
      }
    }
    CHECK(reached);
  }
}

TEST_CASE("monomial_basis_search") {
  SUBCASE("n=1, d=2") {
    const auto basis = monomial_basis_search(1, 2);
    REQUIRE(basis.size() == 1);
    CHECK(monomial_evaluation_vector(basis[0], 2) == std::vector<Integer>{1});
  }
  SUBCASE("n=2, d=1 is the identity") {
    const auto basis = monomial_basis_search(2, 1);
    REQUIRE(basis.size() == 2);
    RationalMatrix m;
    for (const auto& b : basis) {
      std::vector<Rational> row;
      for (const auto& u : monomial_evaluation_vector(b, 1)) row.emplace_back(u);
      m.push_back(row);
    }
    CHECK(abs(exact_determinant(m)) == 1);
  }
  SUBCASE("nonzero determinants") {
    for (auto [n, d] : {std::pair<std::size_t, unsigned>{2, 2}, {2, 3}, {3, 2}}) {
      const auto basis = monomial_basis_search(n, d);
      REQUIRE(basis.size() == multi_indices_of_degree(n, d).size());
      RationalMatrix m;
      for (const auto& b : basis) {
        std::vector<Rational> row;
        for (const auto& u : monomial_evaluation_vector(b, d)) row.emplace_back(u);
        m.push_back(row);
      }
      CHECK(exact_determinant(m) != 0);
      CHECK(exact_rank(m) == basis.size());
    }
  }
  SUBCASE("the example (1,0),(0,1),(1,1) for n=2, d=2 has determinant of modulus 1") {
    RationalMatrix m;
    for (const auto& b : {v({1, 0}), v({0, 1}), v({1, 1})}) {
      std::vector<Rational> row;
      for (const auto& u : monomial_evaluation_vector(b, 2)) row.emplace_back(u);
      m.push_back(row);
    }
    CHECK(abs(exact_determinant(m)) == 1);
  }
}

TEST_CASE("residue_decompose") {
  SUBCASE("(1/2) x^2 with q=2, r=1") {
    const auto g = residue_decompose(poly(1, {{{2}, q(1, 2)}}), 2, v({1}));
    CHECK(g == poly(1, {{{2}, ExactScalar(2)}, {{1}, ExactScalar(2)}, {{0}, q(1, 2)}}));
  }
  SUBCASE("q=1, r=0 is the identity") {
    CHECK(residue_decompose(sqrt2_xy(), 1, v({0, 0})) == sqrt2_xy());
  }
  SUBCASE("sqrt2 x with q=3, r=2") {
    const auto g = residue_decompose(poly(1, {{{1}, gen("sqrt2")}}), 3, v({2}));
    CHECK(g == poly(1, {{{1}, gen("sqrt2", 3)}, {{0}, gen("sqrt2", 2)}}));
  }
  SUBCASE("G(w) = F(qw + r) mod 1 exactly") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 1 + rng() % 2;
      const Polynomial f = random_polynomial(rng, n, trial % 2 == 0);
      const std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 4);
      IntVector r(n);
      for (auto& x : r) x = static_cast<std::int64_t>(rng() % m);
      const auto g = residue_decompose(f, m, r);
      for (int s = 0; s < 5; ++s) {
        IntVector w(n);
        IntVector x(n);
        for (std::size_t i = 0; i < n; ++i) {
          w[i] = static_cast<std::int64_t>(rng() % 11) - 5;
          x[i] = m * w[i] + r[i];
        }
        CHECK(g.evaluate(w).reduced_mod_one() == f.evaluate(x).reduced_mod_one());
      }
    }
  }
}

TEST_CASE("reduction tree") {
  SUBCASE("an irrational top coefficient gives a direction at the root") {
    const auto node = reduce_for_equidistribution(sqrt2_xy());
    CHECK(node.kind == ReductionNode::Kind::kIrrationalDirection);
    CHECK(node.direction == v({1, 1}));
    CHECK(node.leading_value == gen("sqrt2", 2));
    CHECK(certifies_equidistribution(node));
  }
  SUBCASE("(1/2) x^2 splits into the rational points 0 and 1/2") {
    const auto node = reduce_for_equidistribution(poly(1, {{{2}, q(1, 2)}}));
    REQUIRE(node.kind == ReductionNode::Kind::kResidueSplit);
    CHECK(node.modulus == 2);
    REQUIRE(node.children.size() == 2);
    CHECK(node.children[0].kind == ReductionNode::Kind::kRationalConstant);
    CHECK(node.children[0].leading_value.is_zero());
    CHECK(node.children[1].leading_value == ExactScalar(q(1, 2)));
    CHECK_FALSE(certifies_equidistribution(node));
  }
  SUBCASE("a rational top over an irrational linear term recurses to directions") {
    const auto node = reduce_for_equidistribution(
        poly(1, {{{2}, q(1, 3)}, {{1}, gen("sqrt2")}}));
    REQUIRE(node.kind == ReductionNode::Kind::kResidueSplit);
    CHECK(node.modulus == 3);
    CHECK(node.children.size() == 3);
    CHECK(certifies_equidistribution(node));
    for (const auto& child : node.children) {
      CHECK(child.kind == ReductionNode::Kind::kIrrationalDirection);
      CHECK_FALSE(child.leading_value.is_rational());
    }
  }
  SUBCASE("the node budget is enforced") {
    CHECK_THROWS_AS(reduce_for_equidistribution(poly(2, {{{2, 0}, q(1, 7)}}), 10),
                    CardinalityOverflow);
  }
}

TEST_CASE("residue split preserves the multiset of values mod 1") {
  // F has a rational top part; split mod q and compare exact value
  // multisets over the ball and over the matching residue classes.
  const Polynomial f = poly(2, {{{2, 0}, q(1, 2)},
                                {{1, 1}, q(1, 3)},
                                {{0, 1}, gen("sqrt2")},
                                {{0, 0}, q(1, 5)}});
  const std::int64_t m = 6;
  for (const std::int64_t radius : {7, 20}) {
    std::multiset<std::string> direct;
    for (std::int64_t x = -radius; x <= radius; ++x)
      for (std::int64_t y = -radius; y <= radius; ++y)
        if (x * x + y * y <= radius * radius)
          direct.insert(to_string(f.evaluate(v({x, y})).reduced_mod_one()));
    std::multiset<std::string> merged;
    for (std::int64_t r0 = 0; r0 < m; ++r0) {
      for (std::int64_t r1 = 0; r1 < m; ++r1) {
        const auto g = residue_decompose(f, m, v({r0, r1}));
        for (std::int64_t w0 = -radius; w0 <= radius; ++w0) {
          for (std::int64_t w1 = -radius; w1 <= radius; ++w1) {
            const std::int64_t x = m * w0 + r0;
            const std::int64_t y = m * w1 + r1;
            if (x * x + y * y <= radius * radius)
              merged.insert(to_string(g.evaluate(v({w0, w1})).reduced_mod_one()));
          }
        }
      }
    }
    CHECK(direct == merged);
  }
}

TEST_CASE("lp_eval") {
  const LpNormSpec two(2.0, 2);
  const std::vector<double> p34{3.0, 4.0};
  CHECK(lp_eval(two, p34) == 5.0);
  const std::vector<double> zero{0.0, 0.0, 0.0};
  CHECK(lp_eval(LpNormSpec(1.7, 3), zero) == 0.0);
  const std::vector<double> ones{1.0, 1.0};
  CHECK(lp_eval(LpNormSpec(3.0, 2), ones) == doctest::Approx(1.2599210498948732).epsilon(1e-15));
  const std::vector<double> mixed{-2.0, 1.5, 0.25};
  const std::vector<double> doubled{-4.0, 3.0, 0.5};
  const LpNormSpec s(2.5, 3);
  CHECK(lp_eval(s, doubled) == doctest::Approx(2.0 * lp_eval(s, mixed)).epsilon(1e-14));
  CHECK_THROWS_AS(LpNormSpec(1.0, 2), DomainError);
  CHECK_THROWS_AS(LpNormSpec(INFINITY, 2), DomainError);
  CHECK_THROWS_AS(LpNormSpec(2.0, 0), DomainError);
  const std::vector<double> l1{-3.0, 4.0};
  CHECK(l1_eval(l1) == 7.0);
}

TEST_CASE("lp_directional_derivative") {
  const LpNormSpec two(2.0, 2);
  const std::vector<double> p34{3.0, 4.0};
  CHECK(lp_directional_derivative(two, p34, 0) == doctest::Approx(0.6).epsilon(1e-15));
  const std::vector<double> diag{M_SQRT1_2, M_SQRT1_2};
  CHECK(lp_directional_derivative(two, diag, 0) ==
        doctest::Approx(0.70710678118654752).epsilon(1e-15));
  for (double p : {1.5, 2.0, 3.0, 7.0}) {
    const LpNormSpec spec(p, 3);
    const std::vector<double> axis{0.5, 1e-300, 1e-300};
    CHECK(lp_directional_derivative(spec, axis, 0) == doctest::Approx(1.0));
  }
  const std::vector<double> boundary{0.0, 1.0};
  CHECK_THROWS_AS(lp_directional_derivative(two, boundary, 0), DomainError);

  SUBCASE("degree-0 homogeneity and finite differences") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coord(0.1, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
      const double p = std::uniform_real_distribution<double>(1.2, 4.2)(rng);
      const std::size_t n = 2 + rng() % 3;
      const LpNormSpec spec(p, n);
      std::vector<double> x(n);
      for (double& xi : x) xi = coord(rng);
      std::vector<double> x2(x);
      for (double& xi : x2) xi *= 2.0;
      const std::size_t j = rng() % n;
      const double value = lp_directional_derivative(spec, x, j);
      CHECK(lp_directional_derivative(spec, x2, j) == doctest::Approx(value).epsilon(1e-12));
      const double fd = oracle::central_difference(
          [&](double t) {
            std::vector<double> y(x);
            y[j] += t;
            return lp_eval(spec, y);
          },
          1, 1e-5);
      CHECK(fd == doctest::Approx(value).epsilon(1e-7));
      const double fd2 = oracle::central_difference(
          [&](double t) {
            std::vector<double> y(x);
            y[j] += t;
            return lp_eval(spec, y);
          },
          2, 1e-3);
      CHECK(std::abs(fd2 - lp_second_directional_derivative(spec, x, j)) <=
            1e-5 * std::max(1.0, std::abs(fd2)));
    }
  }
}

TEST_CASE("the second directional derivative decays like 1/t along rays") {
  for (double p : {1.5, 2.0, 3.0}) {
    const LpNormSpec spec(p, 2);
    const std::vector<double> a{0.6, 0.8};
    double previous = 0.0;
    for (double t : {10.0, 100.0, 1000.0}) {
      const double fd = oracle::central_difference(
          [&](double s) {
            std::vector<double> y{t * a[0] + s, t * a[1]};
            return lp_eval(spec, y);
          },
          2, 1e-2 * t / 10.0);
      CHECK(fd > 0.0);
      if (previous > 0.0) CHECK(previous / fd == doctest::Approx(10.0).epsilon(0.01));
      previous = fd;
    }
  }
}
