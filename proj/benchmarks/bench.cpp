#include "sitebias/grid.hpp"
#include "sitebias/histogram.hpp"
#include "sitebias/layer.hpp"
#include "sitebias/null_distribution.hpp"
#include "sitebias/raster.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

namespace {

using namespace sitebias;

void BM_PointToCell(benchmark::State& state) {
  const Grid grid = Grid::build(GridConfig{});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lat(-90.0, 90.0);
  std::uniform_real_distribution<double> lon(-180.0, 180.0);
  std::vector<std::pair<double, double>> points(4096);
  for (auto& p : points) p = {lat(rng), lon(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [y, x] = points[i++ & 4095];
    benchmark::DoNotOptimize(grid.point_to_cell(y, x));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PointToCell);

void BM_NullDistribution(benchmark::State& state) {
  const auto population_size = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(population_size);
  for (auto& v : values) v = normal(rng);
  const Binning binning = equal_width_binning(-4.0, 4.0, 10);
  std::vector<std::uint32_t> bins(population_size);
  for (std::size_t i = 0; i < population_size; ++i) {
    bins[i] = static_cast<std::uint32_t>(binning.bin_of(values[i]));
  }
  const Histogram population = build_histogram(values, binning);
  NullOptions options;
  options.threads = 1;
  for (auto _ : state) {
    auto null = null_distribution(bins, population, 157, m, 42, options);
    benchmark::DoNotOptimize(null.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m));
}
BENCHMARK(BM_NullDistribution)->Args({100000, 1000})->Args({1000000, 1000})->Unit(benchmark::kMillisecond);

void BM_ZonalAggregate(benchmark::State& state) {
  const double cellsize = 1.0 / static_cast<double>(state.range(0));
  Raster raster;
  raster.ncols = static_cast<std::size_t>(std::lround(360.0 / cellsize));
  raster.nrows = static_cast<std::size_t>(std::lround(180.0 / cellsize));
  raster.xllcorner = -180.0;
  raster.yllcorner = -90.0;
  raster.cellsize = cellsize;
  raster.values.resize(raster.ncols * raster.nrows);
  for (std::size_t r = 0; r < raster.nrows; ++r) {
    const double lat = 90.0 - (static_cast<double>(r) + 0.5) * cellsize;
    for (std::size_t c = 0; c < raster.ncols; ++c) raster.values[r * raster.ncols + c] = lat;
  }
  GridConfig config;
  config.target_cell_area_km2 = 2000.0;
  const Grid grid = Grid::build(config);
  for (auto _ : state) {
    auto layer = zonal_aggregate(raster, grid, VariableKind::continuous);
    benchmark::DoNotOptimize(layer.size());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(raster.values.size()));
}
BENCHMARK(BM_ZonalAggregate)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
