#include <doctest.h>

#include <cmath>
#include <random>

#include "equidist/errors.hpp"
#include "equidist/lattice_geometry.hpp"
#include "equidist/lp_norm.hpp"
#include "equidist/measures.hpp"
#include "support/oracles.hpp"

using namespace equidist;

namespace {

EmpiricalCircleMeasure uniform_random(std::size_t count, std::size_t bins, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  EmpiricalCircleMeasure m(bins);
  for (std::size_t i = 0; i < count; ++i) m.add(u(rng));
  return m;
}

}  // namespace

TEST_CASE("EmpiricalCircleMeasure bookkeeping") {
  EmpiricalCircleMeasure m(4);
  m.add(0.1);
  m.add(1.3);
  m.add(-0.1);
  CHECK(m.bins() == std::vector<std::uint64_t>{1, 1, 0, 1});
  CHECK(m.total() == 3);
  CHECK(m.bin_of(0.25) == 1);
  CHECK(m.bin_of(0.9999999999) == 3);
  auto other = EmpiricalCircleMeasure::from_counts({1, 1, 1, 1});
  m.merge(other);
  CHECK(m.bins() == std::vector<std::uint64_t>{2, 2, 1, 2});
  CHECK(m.total() == 7);
  CHECK_THROWS_AS(EmpiricalCircleMeasure(1), DomainError);
  CHECK_THROWS_AS(EmpiricalCircleMeasure::from_counts({5}), DomainError);
  CHECK_THROWS_AS(m.merge(EmpiricalCircleMeasure(5)), DimensionMismatch);
}

TEST_CASE("pushforward_mod1") {
  const auto samples = sample_cap(SphericalCap::full_sphere(2), 5000, 1);
  SUBCASE("constant function") {
    const auto m = pushforward_mod1([](std::span<const double>) { return 2.375; }, samples, 64);
    CHECK(m.bins()[24] == 5000);
    CHECK(classify(m) == MeasureClass::kDiracLike);
  }
  SUBCASE("adding an integer changes nothing") {
    const auto g = [](std::span<const double> s) { return 3.7 * s[0] + s[1] * s[1]; };
    const auto shifted = [&](std::span<const double> s) { return g(s) - 5.0; };
    CHECK(pushforward_mod1(g, samples, 64) == pushforward_mod1(shifted, samples, 64));
  }
  CHECK_THROWS_AS(pushforward_mod1([](std::span<const double>) { return 0.0; },
                                   std::span<const std::vector<double>>(), 8),
                  EmptySequence);
}

TEST_CASE("arcsine pushforward of the first coordinate on the circle") {
  const auto samples = sample_cap(SphericalCap::full_sphere(2), 100000, 2);
  const auto m = pushforward_mod1([](std::span<const double> s) { return s[0]; }, samples, 64);
  CHECK(max_density_ratio(m) >= 2.0);
}

TEST_CASE("p = 2 derivative on the quarter circle follows the half-arcsine law") {
  const LpNormSpec spec(2.0, 2);
  const auto samples = sample_cap(SphericalCap::positive_quarter_circle(), 100000, 3);
  const auto m = pushforward_mod1(
      [&](std::span<const double> s) {
        return s[0] > 0.0 && s[1] > 0.0 ? lp_directional_derivative(spec, s, 0) : s[0];
      },
      samples, 64);
  double tv = 0.0;
  for (std::size_t k = 0; k < 64; ++k) {
    const double expected = oracle::half_arcsine_mass(k / 64.0, (k + 1) / 64.0);
    tv += std::abs(static_cast<double>(m.bins()[k]) / m.total() - expected);
  }
  CHECK(tv / 2.0 <= 0.02);
  CHECK(classify(m) == MeasureClass::kAcLike);
}

TEST_CASE("distance_to_uniform") {
  const auto flat = EmpiricalCircleMeasure::from_counts(std::vector<std::uint64_t>(64, 10));
  const auto d0 = distance_to_uniform(flat);
  CHECK(d0.tv == doctest::Approx(0.0));
  CHECK(d0.ks == doctest::Approx(0.0));
  CHECK(d0.disc == doctest::Approx(0.0));
  std::vector<std::uint64_t> spike(64, 0);
  spike[10] = 100;
  const auto d1 = distance_to_uniform(EmpiricalCircleMeasure::from_counts(spike));
  CHECK(d1.tv == doctest::Approx(1.0 - 1.0 / 64));
  CHECK(d1.disc == doctest::Approx(1.0 - 1.0 / 64));
  CHECK(d1.ks <= 1.0);
  CHECK(distance_to_uniform(uniform_random(100000, 64, 4)).tv <= 0.02);
  CHECK_THROWS_AS(distance_to_uniform(EmpiricalCircleMeasure(8)), EmptySequence);
  SUBCASE("rotation invariance of tv") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::uint64_t> counts(16);
      for (auto& c : counts) c = rng() % 50;
      counts[0] += 1;
      auto rotated = counts;
      std::rotate(rotated.begin(), rotated.begin() + static_cast<long>(rng() % 16), rotated.end());
      const auto a = distance_to_uniform(EmpiricalCircleMeasure::from_counts(counts));
      const auto b = distance_to_uniform(EmpiricalCircleMeasure::from_counts(rotated));
      CHECK(a.tv == doctest::Approx(b.tv).epsilon(1e-12));
      for (double v : {a.tv, a.ks, a.disc}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
      CHECK(a.ks <= a.disc + 1e-12);
    }
  }
}

TEST_CASE("classify") {
  CHECK(classify(uniform_random(10000, 64, 6)) == MeasureClass::kAcLike);
  std::vector<std::uint64_t> counts(64, 10);
  counts[0] += 640;
  const auto mixed = EmpiricalCircleMeasure::from_counts(counts);
  CHECK(classify(mixed, 0.9, 4.0) == MeasureClass::kOther);
  CHECK(max_density_ratio(mixed) == doctest::Approx(650.0 / 1280.0 * 64.0));
  CHECK_THROWS_AS(classify(EmpiricalCircleMeasure::from_counts({1, 0, 0, 0})), DomainError);
  CHECK(to_string(MeasureClass::kDiracLike) == "dirac_like");
  CHECK(to_string(MeasureClass::kAcLike) == "ac_like");
  CHECK(to_string(MeasureClass::kOther) == "other");
}

TEST_CASE("histogram_svg") {
  const auto svg = histogram_svg(uniform_random(1000, 8, 7), "title & <name>");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("title &amp; &lt;name&gt;") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}
