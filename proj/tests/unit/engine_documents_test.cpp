#include "sitebias/documents.hpp"
#include "sitebias/engine.hpp"
#include "sitebias/error.hpp"

#include "../support/synthetic.hpp"

#include <doctest.h>
#include <json.hpp>

#include <random>

using namespace sitebias;
using nlohmann::json;

namespace {

struct CatalogFixture {
  synthetic::TempDir dir;
  GridConfig config = synthetic::config_with_cells(3000);
  Grid grid = Grid::build(config);
  Catalog catalog = Catalog::open_or_create(dir / "catalog", config);
  Collection sites;

  CatalogFixture() {
    catalog.register_layer(synthetic::layer_from(
        grid, "temp", VariableKind::continuous,
        [](std::size_t i, CellId) { return static_cast<double>((i * 37) % 101); }));
    catalog.register_layer(synthetic::layer_from(
        grid, "biome", VariableKind::categorical,
        [](std::size_t i, CellId) { return static_cast<double>(1 + i % 4); }));
    std::mt19937_64 rng(17);
    sites = synthetic::sites_at(grid, synthetic::pick(synthetic::all_cells(grid), 60, rng), "demo");
  }

  AnalysisParams params(std::string variable) const {
    AnalysisParams p;
    p.variable_id = std::move(variable);
    p.replicates = 200;
    return p;
  }
};

}  // namespace

TEST_CASE("parameter validation") {
  AnalysisParams p;
  p.variable_id = "temp";
  CHECK_NOTHROW(p.validate());
  auto bad = p;
  bad.bins = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = p;
  bad.replicates = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = p;
  bad.effective_sample_size = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = p;
  bad.thresholds = {0.6, 0.5};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("binning resolution follows the layer kind") {
  AnalysisParams p;
  CHECK(resolve_binning(p, VariableKind::continuous) == BinningKind::equal_width);
  CHECK(resolve_binning(p, VariableKind::categorical) == BinningKind::categorical);
  p.binning = BinningKind::log_width;
  CHECK(resolve_binning(p, VariableKind::continuous) == BinningKind::log_width);
  CHECK_THROWS_AS(resolve_binning(p, VariableKind::categorical), Error);
  p.binning = BinningKind::categorical;
  CHECK_THROWS_AS(resolve_binning(p, VariableKind::continuous), Error);
}

TEST_CASE("catalog analysis end to end") {
  CatalogFixture f;
  auto out = run_analysis(f.grid, f.catalog, f.sites, f.params("temp"), 2);
  CHECK(out.params.collection_id == "demo");
  CHECK(out.params.binning == BinningKind::equal_width);
  CHECK(out.site_count == 60);
  CHECK(out.representativeness.usable_site_count == 60);
  CHECK(out.representativeness.null.values.size() == 200);
  CHECK(out.extent.size() == f.grid.total_cells());
  CHECK(out.representedness.cells.size() == f.grid.total_cells());
  CHECK(out.areas.extent_area_km2 == doctest::Approx(f.grid.sphere_area_km2()).epsilon(1e-9));

  json doc = json::parse(result_json(out));
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["collection_id"] == "demo");
  CHECK(doc["variable_id"] == "temp");
  CHECK(doc["parameters"]["m"] == 200);
  CHECK(doc["parameters"]["seed"] == 42);
  CHECK(doc["null"]["values"].size() == 200);
  CHECK(doc["null"]["deciles"].size() == 11);
  CHECK(doc["bins"].size() == 20);
  CHECK(doc["indicator"].get<double>() == out.representativeness.indicator);
  double pct = 0.0;
  for (auto& [name, cls] : doc["areas"]["classes"].items()) pct += cls["percent"].get<double>();
  CHECK(pct == doctest::Approx(100.0));

  const std::string bins_text = bins_csv(out);
  auto bins = text::split_lines(bins_text);
  CHECK(bins.front() == "bin,lower,upper,p_sample,p_population,score,class");
  CHECK(bins.size() == 21);
  const std::string cells_text = cells_csv(out);
  auto cells = text::split_lines(cells_text);
  CHECK(cells.front() == "band,column,value,bin,score,class");
  CHECK(cells.size() == f.grid.total_cells() + 1);

  json map = json::parse(map_geojson(out, f.grid));
  CHECK(map["type"] == "FeatureCollection");
  CHECK(map["schema_version"] == kSchemaVersion);
  CHECK(map["features"].size() == f.grid.total_cells());
  auto ring = map["features"][0]["geometry"]["coordinates"][0];
  CHECK(ring.size() == 5);
  CHECK(ring.front() == ring.back());

  write_analysis_dir(out, f.grid, f.dir / "out");
  for (const char* name : {"result.json", "bins.csv", "cells.csv", "map.json"}) {
    CHECK(std::filesystem::exists(f.dir / "out" / name));
  }
}

TEST_CASE("result documents do not depend on the thread count") {
  CatalogFixture f;
  auto a = run_analysis(f.grid, f.catalog, f.sites, f.params("temp"), 1);
  auto b = run_analysis(f.grid, f.catalog, f.sites, f.params("temp"), 3);
  CHECK(result_json(a) == result_json(b));
  CHECK(cells_csv(a) == cells_csv(b));
  auto other = f.params("temp");
  other.seed = 7;
  CHECK(result_json(run_analysis(f.grid, f.catalog, f.sites, other, 1)) != result_json(a));
}

TEST_CASE("categorical analysis with a bbox extent") {
  CatalogFixture f;
  auto p = f.params("biome");
  p.extent = parse_bbox_arg("-60,-180,60,180");
  auto out = run_analysis(f.grid, f.catalog, f.sites, p, 1);
  CHECK(out.params.binning == BinningKind::categorical);
  CHECK(out.representativeness.sample_histogram.counts.size() == 4);
  CHECK(out.extent.size() < f.grid.total_cells());
  CHECK(out.representativeness.usable_site_count + out.representativeness.off_extent_site_count ==
        60);
  json doc = json::parse(result_json(out));
  CHECK(doc["extent"]["spec"] == "bbox:-60,-180,60,180");
}

TEST_CASE("mask extent over a categorical catalog layer") {
  CatalogFixture f;
  auto p = f.params("temp");
  p.extent = parse_mask_arg("biome:1,2");
  auto out = run_analysis(f.grid, f.catalog, f.sites, p, 1);
  CHECK(out.extent.size() == doctest::Approx(f.grid.total_cells() / 2.0).epsilon(0.01));
  p.extent = parse_mask_arg("temp:1");
  CHECK_THROWS_AS(run_analysis(f.grid, f.catalog, f.sites, p, 1), Error);
  p.extent = GlobalExtentSpec{};
  p.variable_id = "missing";
  CHECK_THROWS_AS(run_analysis(f.grid, f.catalog, f.sites, p, 1), Error);
}
