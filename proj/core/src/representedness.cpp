#include "sitebias/representedness.hpp"

#include "sitebias/error.hpp"
#include "sitebias/representativeness.hpp"

#include <algorithm>
#include <cmath>

namespace sitebias {

std::string_view to_string(RepresentationClass cls) noexcept {
  switch (cls) {
    case RepresentationClass::very_under: return "very_under";
    case RepresentationClass::under: return "under";
    case RepresentationClass::well: return "well";
    case RepresentationClass::over: return "over";
    case RepresentationClass::very_over: return "very_over";
  }
  return "well";
}

void ClassThresholds::validate() const {
  if (!(slight > 0.0) || !(strong > slight) || !(strong <= 1.0)) {
    throw Error(ErrorKind::domain, "class thresholds need 0 < slight < strong <= 1");
  }
}

RepresentationClass classify(double score, const ClassThresholds& t) {
  if (score <= -t.strong) return RepresentationClass::very_under;
  if (score <= -t.slight) return RepresentationClass::under;
  if (score < t.slight) return RepresentationClass::well;
  if (score < t.strong) return RepresentationClass::over;
  return RepresentationClass::very_over;
}

double representedness_score(double p_sample, double p_population) {
  double denom = std::max(p_sample, p_population);
  if (denom <= 0.0) return 0.0;
  return std::clamp((p_sample - p_population) / denom, -1.0, 1.0);
}

RepresentednessMap representedness(const Histogram& sample, const Histogram& population_histogram,
                                   const Population& population,
                                   const ClassThresholds& thresholds) {
  if (!(sample.binning == population_histogram.binning)) {
    throw Error(ErrorKind::contract, "representedness needs an identical binning");
  }
  thresholds.validate();
  RepresentednessMap map;
  map.thresholds = thresholds;
  map.scores.resize(sample.proportions.size());
  for (std::size_t b = 0; b < map.scores.size(); ++b) {
    map.scores[b] = representedness_score(sample.proportions[b], population_histogram.proportions[b]);
  }
  map.cells.reserve(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    std::size_t bin = sample.binning.bin_of(population.values[i]);
    double score = map.scores[bin];
    map.cells.push_back({population.cells[i], population.values[i], bin, score,
                         classify(score, thresholds)});
  }
  return map;
}

RepresentednessMap representedness(const MappedCollection& mapped, const VariableLayer& layer,
                                   const Extent& extent, const Binning& binning,
                                   const ClassThresholds& thresholds, bool dedupe) {
  Population population = gather_population(extent, layer);
  SampleValues sample = gather_sample(mapped, population, dedupe);
  if (sample.values.empty()) {
    throw Error(ErrorKind::empty, "no collection site falls inside the extent with data");
  }
  return representedness(build_histogram(sample.values, binning),
                         build_histogram(population.values, binning), population, thresholds);
}

AreaSummary area_summary(const RepresentednessMap& map, const Extent& extent, const Grid& grid) {
  AreaSummary summary;
  for (const auto& cell : map.cells) {
    if (!extent.contains(cell.cell)) continue;
    auto& slot = summary.classes[static_cast<std::size_t>(cell.cls)];
    slot.cell_count += 1;
    slot.area_km2 += grid.cell_area_km2(cell.cell);
    summary.cell_count += 1;
  }
  for (const auto& slot : summary.classes) summary.extent_area_km2 += slot.area_km2;
  if (summary.extent_area_km2 > 0.0) {
    for (auto& slot : summary.classes) {
      slot.percent = 100.0 * slot.area_km2 / summary.extent_area_km2;
    }
  }
  return summary;
}

std::vector<CellId> suggest_undersampled(const RepresentednessMap& map, const Extent& extent,
                                         const Grid& grid, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::domain, "k must be >= 1");
  std::vector<const CellClassification*> ranked;
  ranked.reserve(map.cells.size());
  for (const auto& cell : map.cells) {
    if (extent.contains(cell.cell) && grid.is_valid(cell.cell)) ranked.push_back(&cell);
  }
  auto by_score = [](const CellClassification* a, const CellClassification* b) {
    if (a->score != b->score) return a->score < b->score;
    return a->cell < b->cell;
  };
  const std::size_t take = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                    ranked.end(), by_score);
  std::vector<CellId> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(ranked[i]->cell);
  return out;
}

}  // namespace sitebias
