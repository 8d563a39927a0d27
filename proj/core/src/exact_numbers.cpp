#include "equidist/exact_numbers.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "equidist/errors.hpp"

namespace equidist {

namespace {

// Digits held back from the 128-digit working precision for rounding of
// intermediate products and sums.
constexpr int kGuardDigits = 6;
constexpr int kWorkingDigits = 128;

std::string trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
    --end;
  return std::string(text.substr(begin, end - begin));
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

// Number of decimal digits of the integer ceiling of |q|, i.e. an upper bound
// on log10|q| when |q| >= 1, and 0 otherwise.
int magnitude_digits(const Rational& q) {
  Integer ceiling;
  Integer num = abs(q.get_num());
  mpz_cdiv_q(ceiling.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  if (ceiling <= 1) return 0;
  return static_cast<int>(mpz_sizeinbase(ceiling.get_mpz_t(), 10));
}

Rational fractional_part(const Rational& q) {
  Integer floor_value;
  mpz_fdiv_q(floor_value.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - Rational(floor_value);
}

HighPrecision builtin_value(std::string_view name) {
  HighPrecision value;
  mpfr_ptr out = value.backend().data();
  if (name == "sqrt2") {
    mpfr_sqrt_ui(out, 2, MPFR_RNDN);
  } else if (name == "sqrt3") {
    mpfr_sqrt_ui(out, 3, MPFR_RNDN);
  } else if (name == "sqrt5") {
    mpfr_sqrt_ui(out, 5, MPFR_RNDN);
  } else if (name == "phi") {
    mpfr_sqrt_ui(out, 5, MPFR_RNDN);
    mpfr_add_ui(out, out, 1, MPFR_RNDN);
    mpfr_div_ui(out, out, 2, MPFR_RNDN);
  } else if (name == "pi") {
    mpfr_const_pi(out, MPFR_RNDN);
  } else if (name == "e") {
    mpfr_set_ui(out, 1, MPFR_RNDN);
    mpfr_exp(out, out, MPFR_RNDN);
  } else {
    throw InvalidGenerator("unknown built-in generator '" + std::string(name) +
                           "'");
  }
  return value;
}

// Validates a plain decimal literal and returns its count of fractional digits.
int fractional_digits(const std::string& literal) {
  std::string_view body = literal;
  if (!body.empty() && (body.front() == '-' || body.front() == '+'))
    body.remove_prefix(1);
  const auto dot = body.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(body))
      throw InvalidGenerator("malformed decimal '" + literal + "'");
    return 0;
  }
  const auto whole = body.substr(0, dot);
  const auto frac = body.substr(dot + 1);
  if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
    throw InvalidGenerator("malformed decimal '" + literal + "'");
  return static_cast<int>(frac.size());
}

HighPrecision pow10_negative(int digits) {
  HighPrecision result = 10;
  return boost::multiprecision::pow(result, -digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw ParseError("empty rational literal");
  Rational result;
  if (s.find('.') != std::string::npos) {
    std::string_view body = s;
    bool negative = false;
    if (body.front() == '-' || body.front() == '+') {
      negative = body.front() == '-';
      body.remove_prefix(1);
    }
    const auto dot = body.find('.');
    const std::string whole(body.substr(0, dot));
    const std::string frac(body.substr(dot + 1));
    if ((!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)) || (whole.empty() && frac.empty()))
      throw ParseError("malformed decimal '" + s + "'");
    Integer num(whole.empty() ? "0" : whole, 10);
    Integer den = 1;
    if (!frac.empty()) {
      num = Integer(whole + frac, 10);
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    }
    result = Rational(num, den);
    if (negative) result = -result;
  } else {
    const auto slash = s.find('/');
    const std::string num_text = s.substr(0, slash);
    std::string_view num_digits = num_text;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
      num_digits.remove_prefix(1);
    if (!all_digits(num_digits)) throw ParseError("malformed rational '" + s + "'");
    if (slash == std::string::npos) {
      result = Rational(Integer(num_text[0] == '+' ? num_text.substr(1) : num_text, 10));
    } else {
      const std::string den_text = s.substr(slash + 1);
      if (!all_digits(den_text)) throw ParseError("malformed rational '" + s + "'");
      const Integer den(den_text, 10);
      if (den == 0) throw ParseError("zero denominator in '" + s + "'");
      result = Rational(Integer(num_text[0] == '+' ? num_text.substr(1) : num_text, 10), den);
    }
  }
  result.canonicalize();
  return result;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

HighPrecision to_high_precision(const Rational& q) {
  HighPrecision value;
  mpfr_set_q(value.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return value;
}

// ---------------------------------------------------------------------------
// GeneratorSet

const std::vector<std::string>& GeneratorSet::builtin_names() {
  static const std::vector<std::string> names = {"sqrt2", "sqrt3", "sqrt5",
                                                 "phi",   "pi",    "e"};
  return names;
}

bool GeneratorSet::is_builtin(std::string_view name) {
  const auto& names = builtin_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::shared_ptr<const GeneratorSet> GeneratorSet::builtin(int digits) {
  std::map<std::string, std::string> declarations;
  for (const auto& name : builtin_names()) declarations[name] = "";
  return from_declarations(declarations, digits);
}

std::shared_ptr<const GeneratorSet> GeneratorSet::from_declarations(
    const std::map<std::string, std::string>& declarations, int digits) {
  if (digits < 16 || digits > kMaxPrecisionDigits)
    throw InvalidGenerator("precision must lie in [16, " +
                           std::to_string(kMaxPrecisionDigits) + "] digits");
  auto set = std::make_shared<GeneratorSet>();
  set->precision_ = digits;
  for (const auto& [name, literal_raw] : declarations) {
    if (name.empty()) throw InvalidGenerator("empty generator name");
    const std::string literal = trim(literal_raw);
    IrrationalGenerator gen;
    gen.name = name;
    if (literal.empty() || literal == "builtin") {
      gen.approx = builtin_value(name);
      gen.digits = digits;
    } else {
      const int given = fractional_digits(literal);
      gen.approx = HighPrecision(literal);
      if (is_builtin(name)) {
        const HighPrecision reference = builtin_value(name);
        const int checked = std::min(given, kMaxPrecisionDigits);
        if (boost::multiprecision::abs(reference - gen.approx) >
            pow10_negative(checked))
          throw InvalidGenerator("declared value of '" + name +
                                 "' disagrees with the built-in constant");
        // The built-in evaluation is at least as accurate as the declaration.
        gen.approx = reference;
        gen.digits = digits;
      } else {
        if (given < kMinGeneratorDigits)
          throw InvalidGenerator(
              "generator '" + name + "' needs at least " +
              std::to_string(kMinGeneratorDigits) + " fractional digits, got " +
              std::to_string(given));
        gen.digits = std::min({given, digits, kMaxPrecisionDigits});
      }
    }
    set->precision_ = std::min(set->precision_, gen.digits);
    set->generators_.emplace(name, std::move(gen));
  }
  return set;
}

const IrrationalGenerator& GeneratorSet::at(std::string_view name) const {
  const auto it = generators_.find(name);
  if (it == generators_.end())
    throw InvalidGenerator("undeclared generator '" + std::string(name) + "'");
  return it->second;
}

bool GeneratorSet::contains(std::string_view name) const {
  return generators_.find(name) != generators_.end();
}

bool GeneratorSet::same_declaration(const GeneratorSet& other) const {
  if (generators_.size() != other.generators_.size()) return false;
  auto a = generators_.begin();
  auto b = other.generators_.begin();
  for (; a != generators_.end(); ++a, ++b) {
    if (a->first != b->first || a->second.digits != b->second.digits ||
        a->second.approx != b->second.approx)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// ExactScalar

ExactScalar::ExactScalar(Rational value) : rational_(std::move(value)) {
  rational_.canonicalize();
}

ExactScalar ExactScalar::generator(GeneratorSetPtr set, std::string_view name,
                                   const Rational& coefficient) {
  if (!set) throw InvalidGenerator("generator requested without a generator set");
  set->at(name);
  IrrationalParts parts;
  parts.emplace(std::string(name), coefficient);
  return make(std::move(set), 0, std::move(parts));
}

ExactScalar ExactScalar::make(GeneratorSetPtr set, Rational rational,
                              IrrationalParts irrational) {
  ExactScalar result(std::move(rational));
  for (auto& [name, coefficient] : irrational) {
    coefficient.canonicalize();
    if (sgn(coefficient) == 0) continue;
    if (!set) throw InvalidGenerator("irrational part without a generator set");
    set->at(name);
    result.irrational_.emplace(name, coefficient);
  }
  result.set_ = std::move(set);
  return result;
}

bool ExactScalar::is_integer() const {
  return irrational_.empty() && rational_.get_den() == 1;
}

ExactScalar ExactScalar::reduced_mod_one() const {
  ExactScalar result = *this;
  result.rational_ = fractional_part(rational_);
  return result;
}

void ExactScalar::check_compatible(const ExactScalar& other) const {
  if (!set_ || !other.set_ || set_ == other.set_) return;
  if (!set_->same_declaration(*other.set_))
    throw GeneratorSetMismatch(
        "scalars were built over different generator declarations");
}

ExactScalar ExactScalar::operator-() const { return scale(*this, -1); }

ExactScalar& ExactScalar::operator+=(const ExactScalar& other) {
  check_compatible(other);
  if (!set_) set_ = other.set_;
  rational_ += other.rational_;
  for (const auto& [name, coefficient] : other.irrational_) {
    auto it = irrational_.find(name);
    if (it == irrational_.end()) {
      irrational_.emplace(name, coefficient);
      continue;
    }
    it->second += coefficient;
    if (sgn(it->second) == 0) irrational_.erase(it);
  }
  return *this;
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
  ExactScalar result = a;
  result += b;
  return result;
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
  return a + (-b);
}

bool operator==(const ExactScalar& a, const ExactScalar& b) {
  if (a.set_ && b.set_ && a.set_ != b.set_ &&
      !a.set_->same_declaration(*b.set_))
    return false;
  return a.rational_ == b.rational_ && a.irrational_ == b.irrational_;
}

HighPrecision ExactScalar::approx() const {
  HighPrecision value = to_high_precision(rational_);
  for (const auto& [name, coefficient] : irrational_)
    value += to_high_precision(coefficient) * set_->at(name).approx;
  return value;
}

ExactScalar add(const ExactScalar& a, const ExactScalar& b) { return a + b; }

ExactScalar scale(const ExactScalar& a, const Rational& q) {
  if (sgn(q) == 0) return ExactScalar{};
  ExactScalar::IrrationalParts parts;
  for (const auto& [name, coefficient] : a.irrational_parts())
    parts.emplace(name, coefficient * q);
  return ExactScalar::make(a.generator_set(), a.rational_part() * q,
                           std::move(parts));
}

HighPrecision mod_one_approx(const ExactScalar& a, int digits) {
  if (digits < 1 || digits > kMaxPrecisionDigits)
    throw PrecisionExhausted("requested " + std::to_string(digits) +
                             " digits; supported range is [1, " +
                             std::to_string(kMaxPrecisionDigits) + "]");
  HighPrecision value = to_high_precision(fractional_part(a.rational_part()));
  if (!a.is_rational()) {
    // Each term c*g carries an absolute error of |c| * 10^-digits(g); the sum
    // of m such terms loses another ceil(log10 m) digits.
    const int term_loss = static_cast<int>(
        std::ceil(std::log10(static_cast<double>(a.irrational_parts().size()))));
    for (const auto& [name, coefficient] : a.irrational_parts()) {
      const IrrationalGenerator& gen = a.generator_set()->at(name);
      const int magnitude = magnitude_digits(coefficient);
      const int available = gen.digits - magnitude - term_loss - 1;
      const int working = kWorkingDigits - kGuardDigits - magnitude;
      if (digits > available || digits > working)
        throw PrecisionExhausted(
            "requested " + std::to_string(digits) + " digits but generator '" +
            name + "' supports only " +
            std::to_string(std::min(available, working)) +
            " at coefficient magnitude 10^" + std::to_string(magnitude));
      value += to_high_precision(coefficient) * gen.approx;
    }
  }
  value -= boost::multiprecision::floor(value);
  return value;
}

double mod_one(const ExactScalar& a) {
  const double value = static_cast<double>(mod_one_approx(a, 17));
  return value >= 1.0 ? 0.0 : value;
}

std::string to_decimal_string(const HighPrecision& value, int digits) {
  return value.str(digits, std::ios_base::fixed);
}

std::string to_string(const ExactScalar& a) {
  std::ostringstream out;
  out << to_string(a.rational_part());
  for (const auto& [name, coefficient] : a.irrational_parts())
    out << " + (" << to_string(coefficient) << ")*" << name;
  return out.str();
}

}  // namespace equidist
