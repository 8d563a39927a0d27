#pragma once

// Exact scalars of the form  r + sum_g c_g * g  where r and c_g are rationals
// and g ranges over a finite set of declared irrational generators. The
// generators are assumed linearly independent over Q together with 1, which
// makes "is this scalar rational?" decidable by inspecting the coefficients.

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace equidist {

using Rational = mpq_class;
using Integer = mpz_class;

/// Working type for decimal evaluation; 128 significant decimal digits.
using HighPrecision = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<128>,
    boost::multiprecision::et_off>;

inline constexpr int kDefaultPrecisionDigits = 64;
inline constexpr int kMinGeneratorDigits = 50;
inline constexpr int kMaxPrecisionDigits = 110;

/// Parses "p/q", "p" or a finite decimal such as "-0.125" into lowest terms.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
HighPrecision to_high_precision(const Rational& q);

struct IrrationalGenerator {
  std::string name;
  HighPrecision approx;
  /// Number of correct fractional decimal digits carried by `approx`.
  int digits = 0;
  static constexpr bool declared_irrational = true;
};

/// Immutable, shareable set of named generators.
class GeneratorSet {
 public:
  /// Names with a built-in high-precision evaluation.
  static const std::vector<std::string>& builtin_names();
  static bool is_builtin(std::string_view name);

  /// sqrt2, sqrt3, sqrt5, phi, pi, e evaluated to `digits` decimal digits.
  static std::shared_ptr<const GeneratorSet> builtin(
      int digits = kDefaultPrecisionDigits);

  /// Builds a set from name -> decimal string declarations. An empty string
  /// or "builtin" selects the built-in value. A decimal given for a built-in
  /// name must agree with it on every digit supplied. Non-built-in values need
  /// at least kMinGeneratorDigits fractional digits.
  static std::shared_ptr<const GeneratorSet> from_declarations(
      const std::map<std::string, std::string>& declarations,
      int digits = kDefaultPrecisionDigits);

  const IrrationalGenerator& at(std::string_view name) const;
  bool contains(std::string_view name) const;
  const std::map<std::string, IrrationalGenerator, std::less<>>& generators()
      const {
    return generators_;
  }
  /// Configured precision (minimum digits over all generators).
  int precision() const { return precision_; }

  bool same_declaration(const GeneratorSet& other) const;

 private:
  std::map<std::string, IrrationalGenerator, std::less<>> generators_;
  int precision_ = kDefaultPrecisionDigits;
};

using GeneratorSetPtr = std::shared_ptr<const GeneratorSet>;

class ExactScalar {
 public:
  using IrrationalParts = std::map<std::string, Rational, std::less<>>;

  ExactScalar() = default;
  ExactScalar(Rational value);  // NOLINT: implicit promotion is intended
  ExactScalar(long value) : ExactScalar(Rational(value)) {}  // NOLINT
  ExactScalar(int value) : ExactScalar(Rational(value)) {}   // NOLINT

  /// coefficient * generator(name); the generator must belong to `set`.
  static ExactScalar generator(GeneratorSetPtr set, std::string_view name,
                               const Rational& coefficient = 1);
  /// General constructor; zero coefficients are dropped.
  static ExactScalar make(GeneratorSetPtr set, Rational rational,
                          IrrationalParts irrational);

  const Rational& rational_part() const { return rational_; }
  const IrrationalParts& irrational_parts() const { return irrational_; }
  const GeneratorSetPtr& generator_set() const { return set_; }

  bool is_rational() const { return irrational_.empty(); }
  bool is_zero() const { return irrational_.empty() && sgn(rational_) == 0; }
  /// True when the scalar is an integer, i.e. vanishes mod 1.
  bool is_integer() const;

  /// Same scalar with the rational part replaced by its fractional part.
  ExactScalar reduced_mod_one() const;

  ExactScalar operator-() const;
  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
  friend bool operator==(const ExactScalar& a, const ExactScalar& b);
  ExactScalar& operator+=(const ExactScalar& other);

  /// Decimal value, no reduction.
  HighPrecision approx() const;

 private:
  void check_compatible(const ExactScalar& other) const;

  GeneratorSetPtr set_;
  Rational rational_;
  IrrationalParts irrational_;
};

ExactScalar add(const ExactScalar& a, const ExactScalar& b);
ExactScalar scale(const ExactScalar& a, const Rational& q);

/// Fractional part of `a`, guaranteed correct to `digits` decimal digits.
/// Throws PrecisionExhausted when the generator expansions (after being
/// multiplied by the scalar's coefficients) cannot support that many digits.
HighPrecision mod_one_approx(const ExactScalar& a,
                             int digits = kDefaultPrecisionDigits);

/// Fractional part rounded to double. A value that would round up to 1.0 is
/// returned as 0.0, its image on the circle.
double mod_one(const ExactScalar& a);

/// Fixed-point rendering with `digits` fractional digits, rounded.
std::string to_decimal_string(const HighPrecision& value, int digits);

std::string to_string(const ExactScalar& a);

}  // namespace equidist
