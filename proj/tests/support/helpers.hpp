#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "equidist/exact_numbers.hpp"
#include "equidist/polynomial.hpp"

namespace testing {

inline equidist::GeneratorSetPtr builtins() {
  static const auto set = equidist::GeneratorSet::builtin();
  return set;
}

inline equidist::ExactScalar gen(const char* name, equidist::Rational c = 1) {
  return equidist::ExactScalar::generator(builtins(), name, c);
}

inline equidist::Rational q(long p, long d = 1) {
  equidist::Rational r(p, d);
  r.canonicalize();
  return r;
}

using Term = std::pair<std::vector<unsigned>, equidist::ExactScalar>;

inline equidist::Polynomial poly(std::size_t n, std::initializer_list<Term> terms) {
  equidist::Polynomial f(n);
  for (const auto& [exp, c] : terms) f.add_term(equidist::MultiIndex(exp), c);
  return f;
}

}  // namespace testing
