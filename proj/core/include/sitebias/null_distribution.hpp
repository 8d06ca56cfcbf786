#pragma once

#include "sitebias/extent.hpp"
#include "sitebias/histogram.hpp"
#include "sitebias/indicator.hpp"
#include "sitebias/layer.hpp"
#include "sitebias/sampling.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sitebias {

/// Extent cells that carry a value for the analysis variable.
struct Population {
  std::vector<CellId> cells;    // ascending
  std::vector<double> values;   // parallel to cells
  std::size_t coverage_gap_count = 0;  // extent cells without data

  std::size_t size() const noexcept { return cells.size(); }
  /// Index into cells/values, or npos.
  std::size_t find(CellId cell) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Throws Error(empty) when the extent and the layer share no cell.
Population gather_population(const Extent& extent, const VariableLayer& layer);

/// Indicator values of m equal-size random samples drawn from the population.
struct NullDistribution {
  std::size_t sample_size = 0;
  std::size_t replicate_count = 0;
  std::vector<double> values;  // ascending
  std::uint64_t seed = 0;
  IndicatorKind kind = IndicatorKind::intersection;
  SamplingMode sampling = SamplingMode::without_replacement;

  double mean() const;
  /// Linear interpolation between order statistics, p in [0, 1].
  double quantile(double p) const;
  /// Percentage of replicates strictly below x, counting exact ties as half.
  double percentile_rank(double x) const;
};

struct NullOptions {
  IndicatorKind kind = IndicatorKind::intersection;
  SamplingMode sampling = SamplingMode::without_replacement;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Replicate r draws with replicate_engine(seed, r), so the result does not
/// depend on `threads`.
NullDistribution null_distribution(const Extent& extent, const VariableLayer& layer,
                                   const Binning& binning, std::size_t n, std::size_t m,
                                   std::uint64_t seed, const NullOptions& options = {});

/// Lower-level form over precomputed population bin indices.
NullDistribution null_distribution(std::span<const std::uint32_t> population_bins,
                                   const Histogram& population_histogram, std::size_t n,
                                   std::size_t m, std::uint64_t seed, const NullOptions& options);

unsigned resolve_threads(unsigned requested) noexcept;

}  // namespace sitebias
