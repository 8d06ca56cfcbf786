#pragma once

#include "sitebias/catalog.hpp"
#include "sitebias/collection.hpp"
#include "sitebias/extent.hpp"
#include "sitebias/grid.hpp"
#include "sitebias/histogram.hpp"
#include "sitebias/indicator.hpp"
#include "sitebias/representativeness.hpp"
#include "sitebias/representedness.hpp"
#include "sitebias/sampling.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace sitebias {

inline constexpr std::size_t kDefaultBinCount = 20;
inline constexpr std::size_t kDefaultReplicates = 1000;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Everything that determines an analysis result. The CLI and the service both
/// translate their inputs into this struct and call run_analysis.
struct AnalysisParams {
  std::string collection_id;
  std::string variable_id;
  ExtentSpec extent = GlobalExtentSpec{};
  /// Unset: categorical layers use categorical binning, continuous ones equal_width.
  std::optional<BinningKind> binning;
  std::size_t bins = kDefaultBinCount;
  IndicatorKind indicator = IndicatorKind::intersection;
  std::size_t replicates = kDefaultReplicates;
  std::optional<std::size_t> effective_sample_size;
  std::uint64_t seed = kDefaultSeed;
  SamplingMode sampling = SamplingMode::without_replacement;
  bool dedupe = false;
  ClassThresholds thresholds;

  /// Throws Error(domain) for values outside their ranges.
  void validate() const;
};

struct AnalysisOutput {
  AnalysisParams params;  // with binning resolved
  Extent extent;
  Population population;
  std::size_t site_count = 0;
  RepresentativenessResult representativeness;
  RepresentednessMap representedness;
  AreaSummary areas;
};

/// Resolves the binning kind against the layer kind; throws Error(contract) on a mismatch.
BinningKind resolve_binning(const AnalysisParams& params, VariableKind layer_kind);

/// Core pipeline over materialised inputs. `threads` only affects speed.
AnalysisOutput run_analysis(const Grid& grid, const MappedCollection& mapped,
                            const VariableLayer& layer, Extent extent,
                            const AnalysisParams& params, unsigned threads = 0);

/// Loads the layer and extent from the catalog and maps the collection onto its grid.
AnalysisOutput run_analysis(const Grid& grid, const Catalog& catalog, const Collection& collection,
                            const AnalysisParams& params, unsigned threads = 0);

}  // namespace sitebias
