#include "equidist/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "equidist/errors.hpp"

namespace equidist {

EmpiricalCircleMeasure::EmpiricalCircleMeasure(std::size_t bins) : bins_(bins, 0) {
  if (bins < 2) throw DomainError("a circle histogram needs at least 2 bins");
}

EmpiricalCircleMeasure EmpiricalCircleMeasure::from_counts(
    std::vector<std::uint64_t> counts) {
  EmpiricalCircleMeasure measure(counts.size());
  measure.bins_ = std::move(counts);
  for (auto c : measure.bins_) measure.total_ += c;
  return measure;
}

std::size_t EmpiricalCircleMeasure::bin_of(double value) const {
  if (!std::isfinite(value)) throw DomainError("cannot bin a non-finite value");
  double reduced = value - std::floor(value);
  if (reduced >= 1.0) reduced = 0.0;
  const auto b = static_cast<std::size_t>(reduced * static_cast<double>(bins_.size()));
  return std::min(b, bins_.size() - 1);
}

void EmpiricalCircleMeasure::add(double value) {
  ++bins_[bin_of(value)];
  ++total_;
}

void EmpiricalCircleMeasure::merge(const EmpiricalCircleMeasure& other) {
  if (other.bins_.size() != bins_.size())
    throw DimensionMismatch("cannot merge histograms with different bin counts");
  for (std::size_t i = 0; i < bins_.size(); ++i) bins_[i] += other.bins_[i];
  total_ += other.total_;
}

EmpiricalCircleMeasure pushforward_mod1(const SphereFunction& g,
                                        std::span<const std::vector<double>> samples,
                                        std::size_t bins) {
  if (samples.empty()) throw EmptySequence("pushforward of an empty sample");
  EmpiricalCircleMeasure measure(bins);
  for (const auto& s : samples) measure.add(g(s));
  return measure;
}

UniformDistances distance_to_uniform(const EmpiricalCircleMeasure& measure) {
  if (measure.total() == 0) throw EmptySequence("histogram is empty");
  const double b = static_cast<double>(measure.bin_count());
  const double total = static_cast<double>(measure.total());
  UniformDistances d;
  double cumulative = 0.0;
  // prefix difference F_emp(k/B) - k/B at k = 0..B
  double highest = 0.0;
  double lowest = 0.0;
  for (std::size_t i = 0; i < measure.bin_count(); ++i) {
    const double mass = static_cast<double>(measure.bins()[i]) / total;
    d.tv += std::abs(mass - 1.0 / b);
    cumulative += mass;
    const double diff = cumulative - static_cast<double>(i + 1) / b;
    d.ks = std::max(d.ks, std::abs(diff));
    highest = std::max(highest, diff);
    lowest = std::min(lowest, diff);
  }
  d.tv = std::min(1.0, d.tv / 2.0);
  d.ks = std::min(1.0, d.ks);
  d.disc = std::min(1.0, highest - lowest);
  return d;
}

std::string to_string(MeasureClass c) {
  switch (c) {
    case MeasureClass::kDiracLike:
      return "dirac_like";
    case MeasureClass::kAcLike:
      return "ac_like";
    case MeasureClass::kOther:
      return "other";
  }
  return "other";
}

double max_density_ratio(const EmpiricalCircleMeasure& measure) {
  if (measure.total() == 0) throw EmptySequence("histogram is empty");
  const auto heaviest = *std::max_element(measure.bins().begin(), measure.bins().end());
  return static_cast<double>(heaviest) * static_cast<double>(measure.bin_count()) /
         static_cast<double>(measure.total());
}

MeasureClass classify(const EmpiricalCircleMeasure& measure, double dirac_threshold,
                      double density_cap) {
  if (measure.total() < measure.bin_count())
    throw DomainError("classification needs at least one sample per bin");
  const auto heaviest = *std::max_element(measure.bins().begin(), measure.bins().end());
  const double top_mass =
      static_cast<double>(heaviest) / static_cast<double>(measure.total());
  if (top_mass >= dirac_threshold) return MeasureClass::kDiracLike;
  if (max_density_ratio(measure) <= density_cap) return MeasureClass::kAcLike;
  return MeasureClass::kOther;
}

namespace {

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string histogram_svg(const EmpiricalCircleMeasure& measure,
                          const std::string& title) {
  constexpr int kWidth = 640;
  constexpr int kHeight = 320;
  constexpr int kMargin = 30;
  const double ratio_max = std::max(2.0, max_density_ratio(measure));
  const double bar_width =
      static_cast<double>(kWidth - 2 * kMargin) / static_cast<double>(measure.bin_count());
  const double plot_height = kHeight - 2 * kMargin;
  const double b = static_cast<double>(measure.bin_count());
  const double total = static_cast<double>(measure.total());

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    svg << "<text x=\"" << kMargin << "\" y=\"18\" font-size=\"14\">" << xml_escape(title)
        << "</text>\n";
  for (std::size_t i = 0; i < measure.bin_count(); ++i) {
    const double ratio = static_cast<double>(measure.bins()[i]) * b / total;
    const double h = plot_height * ratio / ratio_max;
    svg << "<rect x=\"" << kMargin + bar_width * static_cast<double>(i) << "\" y=\""
        << kHeight - kMargin - h << "\" width=\"" << bar_width * 0.9
        << "\" height=\"" << h << "\" fill=\"steelblue\"/>\n";
  }
  const double uniform_y = kHeight - kMargin - plot_height / ratio_max;
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << uniform_y << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << uniform_y
      << "\" stroke=\"firebrick\" stroke-dasharray=\"4\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace equidist
