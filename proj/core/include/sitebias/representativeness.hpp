#pragma once

#include "sitebias/collection.hpp"
#include "sitebias/extent.hpp"
#include "sitebias/histogram.hpp"
#include "sitebias/indicator.hpp"
#include "sitebias/layer.hpp"
#include "sitebias/null_distribution.hpp"

#include <optional>

namespace sitebias {

inline constexpr double kBiasedBelowPercentile = 25.0;

/// Collection values read from the layer. Sites whose cell is outside the
/// extent, or inside it without data, are dropped and counted.
struct SampleValues {
  std::vector<CellId> cells;
  std::vector<double> values;
  std::size_t off_extent_site_count = 0;
  std::size_t missing_data_site_count = 0;
};

/// With `dedupe`, each cell contributes once however many sites it holds.
SampleValues gather_sample(const MappedCollection& mapped, const Population& population,
                           bool dedupe = false);

struct RepresentativenessOptions {
  IndicatorKind kind = IndicatorKind::intersection;
  std::size_t replicates = 1000;
  std::uint64_t seed = 42;
  SamplingMode sampling = SamplingMode::without_replacement;
  bool dedupe = false;
  /// Null sample size; defaults to the number of usable sites.
  std::optional<std::size_t> effective_sample_size;
  unsigned threads = 0;
};

struct RepresentativenessResult {
  double indicator = 0.0;
  NullDistribution null;
  double percentile_rank = 0.0;
  bool biased = false;  // percentile_rank < 25
  double variational_coverage = 0.0;
  std::size_t usable_site_count = 0;
  std::size_t off_extent_site_count = 0;
  std::size_t missing_data_site_count = 0;
  std::size_t coverage_gap_cell_count = 0;
  Histogram sample_histogram;
  Histogram population_histogram;
};

/// Population mass inside the sample's support (bins where the sample is non-zero).
double variational_coverage(const Histogram& sample, const Histogram& population);

/// Throws Error(empty) when no site lands in the extent with data.
RepresentativenessResult representativeness(const MappedCollection& mapped,
                                            const VariableLayer& layer, const Extent& extent,
                                            const Binning& binning,
                                            const RepresentativenessOptions& options = {});

/// Same computation over an already gathered population.
RepresentativenessResult representativeness(const MappedCollection& mapped,
                                            const Population& population, const Binning& binning,
                                            const RepresentativenessOptions& options = {});

}  // namespace sitebias
