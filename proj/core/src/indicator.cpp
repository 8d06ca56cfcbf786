#include "sitebias/indicator.hpp"

#include "sitebias/error.hpp"

#include <algorithm>
#include <cmath>

namespace sitebias {

std::string_view to_string(IndicatorKind kind) noexcept {
  return kind == IndicatorKind::intersection ? "intersection" : "bhattacharyya";
}

IndicatorKind parse_indicator_kind(std::string_view text) {
  if (text == "intersection") return IndicatorKind::intersection;
  if (text == "bhattacharyya") return IndicatorKind::bhattacharyya;
  throw Error(ErrorKind::domain, "unknown indicator '" + std::string(text) + "'");
}

double indicator(std::span<const double> p, std::span<const double> q, IndicatorKind kind) {
  if (p.size() != q.size()) throw Error(ErrorKind::contract, "histogram lengths differ");
  double sum = 0.0;
  if (kind == IndicatorKind::intersection) {
    for (std::size_t i = 0; i < p.size(); ++i) sum += std::min(p[i], q[i]);
  } else {
    for (std::size_t i = 0; i < p.size(); ++i) sum += std::sqrt(p[i] * q[i]);
  }
  return std::clamp(sum, 0.0, 1.0);
}

double indicator(const Histogram& p, const Histogram& q, IndicatorKind kind) {
  if (!(p.binning == q.binning)) {
    throw Error(ErrorKind::contract, "indicator needs histograms on an identical binning");
  }
  return indicator(std::span<const double>(p.proportions), std::span<const double>(q.proportions),
                   kind);
}

}  // namespace sitebias
