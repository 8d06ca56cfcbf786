#pragma once

#include "sitebias/collection.hpp"
#include "sitebias/extent.hpp"
#include "sitebias/grid.hpp"
#include "sitebias/histogram.hpp"
#include "sitebias/layer.hpp"
#include "sitebias/null_distribution.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace sitebias {

enum class RepresentationClass { very_under, under, well, over, very_over };

inline constexpr std::array<RepresentationClass, 5> kAllClasses = {
    RepresentationClass::very_under, RepresentationClass::under, RepresentationClass::well,
    RepresentationClass::over, RepresentationClass::very_over};

std::string_view to_string(RepresentationClass cls) noexcept;

/// very_under r <= -strong; under -strong < r <= -slight; well |r| < slight;
/// over slight <= r < strong; very_over r >= strong.
struct ClassThresholds {
  double slight = 0.1;
  double strong = 0.5;

  void validate() const;
  bool operator==(const ClassThresholds&) const = default;
};

RepresentationClass classify(double score, const ClassThresholds& thresholds = {});

/// (p_sample - p_population) / max(p_sample, p_population); 0 when both are 0.
double representedness_score(double p_sample, double p_population);

struct CellClassification {
  CellId cell;
  double value = 0.0;
  std::size_t bin = 0;
  double score = 0.0;
  RepresentationClass cls = RepresentationClass::well;
};

struct RepresentednessMap {
  std::vector<double> scores;              // per bin, in [-1, 1]
  std::vector<CellClassification> cells;   // every population cell, ascending
  ClassThresholds thresholds;
};

RepresentednessMap representedness(const Histogram& sample, const Histogram& population_histogram,
                                   const Population& population,
                                   const ClassThresholds& thresholds = {});

RepresentednessMap representedness(const MappedCollection& mapped, const VariableLayer& layer,
                                   const Extent& extent, const Binning& binning,
                                   const ClassThresholds& thresholds = {}, bool dedupe = false);

struct ClassArea {
  std::size_t cell_count = 0;
  double area_km2 = 0.0;
  double percent = 0.0;
};

struct AreaSummary {
  std::array<ClassArea, 5> classes{};  // indexed by RepresentationClass
  std::size_t cell_count = 0;
  double extent_area_km2 = 0.0;

  const ClassArea& operator[](RepresentationClass cls) const {
    return classes[static_cast<std::size_t>(cls)];
  }
};

/// Area per class over the map cells that belong to `extent`.
AreaSummary area_summary(const RepresentednessMap& map, const Extent& extent, const Grid& grid);

/// Up to k extent cells, most under-represented first; ties in CellId order.
std::vector<CellId> suggest_undersampled(const RepresentednessMap& map, const Extent& extent,
                                         const Grid& grid, std::size_t k);

}  // namespace sitebias
