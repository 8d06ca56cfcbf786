#include "sitebias/representativeness.hpp"

#include "sitebias/error.hpp"

#include <algorithm>

namespace sitebias {

SampleValues gather_sample(const MappedCollection& mapped, const Population& population,
                           bool dedupe) {
  SampleValues sample;
  std::vector<CellId> seen;
  for (const auto& assignment : mapped.assignments) {
    std::size_t idx = population.find(assignment.cell);
    if (idx == Population::npos) {
      // Without the extent both cases look alike; the extent-aware overload splits them.
      ++sample.off_extent_site_count;
      continue;
    }
    if (dedupe) {
      auto it = std::lower_bound(seen.begin(), seen.end(), assignment.cell);
      if (it != seen.end() && *it == assignment.cell) continue;
      seen.insert(it, assignment.cell);
    }
    sample.cells.push_back(assignment.cell);
    sample.values.push_back(population.values[idx]);
  }
  return sample;
}

double variational_coverage(const Histogram& sample, const Histogram& population) {
  if (!(sample.binning == population.binning)) {
    throw Error(ErrorKind::contract, "variational coverage needs an identical binning");
  }
  double covered = 0.0;
  for (std::size_t i = 0; i < sample.proportions.size(); ++i) {
    if (sample.proportions[i] > 0.0) covered += population.proportions[i];
  }
  return std::min(covered, 1.0);
}

RepresentativenessResult representativeness(const MappedCollection& mapped,
                                            const Population& population, const Binning& binning,
                                            const RepresentativenessOptions& options) {
  SampleValues sample = gather_sample(mapped, population, options.dedupe);
  if (sample.values.empty()) {
    throw Error(ErrorKind::empty, "no collection site falls inside the extent with data");
  }

  RepresentativenessResult result;
  result.usable_site_count = sample.values.size();
  result.off_extent_site_count = sample.off_extent_site_count;
  result.missing_data_site_count = sample.missing_data_site_count;
  result.coverage_gap_cell_count = population.coverage_gap_count;

  std::vector<std::uint32_t> population_bins(population.size());
  std::vector<std::size_t> counts(binning.size(), 0);
  for (std::size_t i = 0; i < population.size(); ++i) {
    auto bin = binning.bin_of(population.values[i]);
    population_bins[i] = static_cast<std::uint32_t>(bin);
    ++counts[bin];
  }
  result.population_histogram = histogram_from_counts(std::move(counts), binning);
  result.sample_histogram = build_histogram(sample.values, binning);
  result.indicator =
      indicator(result.sample_histogram, result.population_histogram, options.kind);
  result.variational_coverage =
      variational_coverage(result.sample_histogram, result.population_histogram);

  const std::size_t n = options.effective_sample_size.value_or(result.usable_site_count);
  NullOptions null_options{options.kind, options.sampling, options.threads};
  result.null = null_distribution(population_bins, result.population_histogram, n,
                                  options.replicates, options.seed, null_options);
  result.percentile_rank = result.null.percentile_rank(result.indicator);
  result.biased = result.percentile_rank < kBiasedBelowPercentile;
  return result;
}

RepresentativenessResult representativeness(const MappedCollection& mapped,
                                            const VariableLayer& layer, const Extent& extent,
                                            const Binning& binning,
                                            const RepresentativenessOptions& options) {
  Population population = gather_population(extent, layer);
  RepresentativenessResult result = representativeness(mapped, population, binning, options);

  // Split the dropped sites: in-extent cells without data vs. cells outside the extent.
  result.off_extent_site_count = 0;
  result.missing_data_site_count = 0;
  for (const auto& assignment : mapped.assignments) {
    if (population.find(assignment.cell) != Population::npos) continue;
    if (extent.contains(assignment.cell)) {
      ++result.missing_data_site_count;
    } else {
      ++result.off_extent_site_count;
    }
  }
  return result;
}

}  // namespace sitebias
