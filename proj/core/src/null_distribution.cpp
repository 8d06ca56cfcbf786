#include "sitebias/null_distribution.hpp"

#include "sitebias/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace sitebias {

std::size_t Population::find(CellId cell) const {
  auto it = std::lower_bound(cells.begin(), cells.end(), cell);
  if (it == cells.end() || *it != cell) return npos;
  return static_cast<std::size_t>(it - cells.begin());
}

Population gather_population(const Extent& extent, const VariableLayer& layer) {
  Population pop;
  auto values = layer.values();
  auto it = values.begin();
  for (const CellId& cell : extent.cells) {
    it = std::lower_bound(it, values.end(), cell,
                          [](const CellValue& cv, CellId c) { return cv.cell < c; });
    if (it != values.end() && it->cell == cell) {
      pop.cells.push_back(cell);
      pop.values.push_back(it->value);
    } else {
      ++pop.coverage_gap_count;
    }
  }
  if (pop.cells.empty()) {
    throw Error(ErrorKind::empty, "extent '" + extent.description + "' and layer '" + layer.id() +
                                      "' share no cells");
  }
  return pop;
}

double NullDistribution::mean() const {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double NullDistribution::quantile(double p) const {
  if (values.empty()) return 0.0;
  p = std::clamp(p, 0.0, 1.0);
  double pos = p * static_cast<double>(values.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  auto hi = std::min(lo + 1, values.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

double NullDistribution::percentile_rank(double x) const {
  if (values.empty()) return 0.0;
  auto lo = std::lower_bound(values.begin(), values.end(), x);
  auto hi = std::upper_bound(lo, values.end(), x);
  double below = static_cast<double>(lo - values.begin());
  double ties = static_cast<double>(hi - lo);
  return 100.0 * (below + 0.5 * ties) / static_cast<double>(values.size());
}

unsigned resolve_threads(unsigned requested) noexcept {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

NullDistribution null_distribution(std::span<const std::uint32_t> population_bins,
                                   const Histogram& population_histogram, std::size_t n,
                                   std::size_t m, std::uint64_t seed, const NullOptions& options) {
  if (n < 1) throw Error(ErrorKind::domain, "sample size must be >= 1");
  if (m < 1) throw Error(ErrorKind::domain, "replicate count must be >= 1");
  if (population_bins.empty()) throw Error(ErrorKind::empty, "population is empty");
  if (options.sampling == SamplingMode::without_replacement && n > population_bins.size()) {
    throw Error(ErrorKind::domain, "sample size " + std::to_string(n) +
                                       " exceeds the population of " +
                                       std::to_string(population_bins.size()) + " cells");
  }

  NullDistribution null;
  null.sample_size = n;
  null.replicate_count = m;
  null.seed = seed;
  null.kind = options.kind;
  null.sampling = options.sampling;
  null.values.resize(m);

  const std::size_t bins = population_histogram.binning.size();
  const std::span<const double> reference(population_histogram.proportions);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    IndexSampler sampler(population_bins.size());
    std::vector<std::size_t> picks;
    std::vector<std::size_t> counts(bins);
    std::vector<double> proportions(bins);
    const double total = static_cast<double>(n);
    for (std::size_t r = begin; r < end; ++r) {
      Engine engine = replicate_engine(seed, r);
      if (options.sampling == SamplingMode::without_replacement) {
        sampler.without_replacement(engine, n, picks);
      } else {
        sampler.with_replacement(engine, n, picks);
      }
      std::fill(counts.begin(), counts.end(), 0);
      for (auto i : picks) ++counts[population_bins[i]];
      // Same arithmetic as histogram_from_counts, so equal samples give equal indicators.
      for (std::size_t b = 0; b < bins; ++b) {
        proportions[b] = static_cast<double>(counts[b]) / total;
      }
      null.values[r] = indicator(proportions, reference, options.kind);
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(options.threads), m));
  if (threads <= 1) {
    run_range(0, m);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    const std::size_t chunk = (m + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(m, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back(run_range, begin, end);
    }
  }
  std::sort(null.values.begin(), null.values.end());
  return null;
}

NullDistribution null_distribution(const Extent& extent, const VariableLayer& layer,
                                   const Binning& binning, std::size_t n, std::size_t m,
                                   std::uint64_t seed, const NullOptions& options) {
  Population pop = gather_population(extent, layer);
  std::vector<std::uint32_t> bins(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    bins[i] = static_cast<std::uint32_t>(binning.bin_of(pop.values[i]));
  }
  Histogram population = build_histogram(pop.values, binning);
  return null_distribution(bins, population, n, m, seed, options);
}

}  // namespace sitebias
