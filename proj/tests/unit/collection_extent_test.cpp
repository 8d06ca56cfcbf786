#include "sitebias/collection.hpp"
#include "sitebias/error.hpp"
#include "sitebias/extent.hpp"

#include "../support/synthetic.hpp"

#include <doctest.h>

#include <sstream>

using namespace sitebias;

TEST_CASE("parse_sites_csv reads rows in order") {
  Collection c = parse_sites_csv("site_id,lat,lon\ns1,10.5,-66.2\ns2,-3,100\n", "vv");
  REQUIRE(c.sites.size() == 2);
  CHECK(c.collection_id == "vv");
  CHECK(c.sites[0] == Site{"s1", 10.5, -66.2, std::nullopt});
  CHECK(c.sites[1].site_id == "s2");

  Collection labelled = parse_sites_csv("site_id,lat,lon,label\r\na,1,2,\"Borneo, east\"\r\n");
  CHECK(labelled.sites[0].label == "Borneo, east");
}

TEST_CASE("parse_sites_csv errors carry the row number") {
  auto message = [](const std::string& csv) {
    try {
      parse_sites_csv(csv);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("site_id,lat,lon\ns1,95,0\n") == "lat out of range, row 2");
  CHECK(message("site_id,lat,lon\ns1,0,0\ns2,0,180\n") == "lon out of range, row 3");
  CHECK(message("site_id,lat,lon\ns1,abc,0\n").find("row 2") != std::string::npos);
  CHECK(message("site_id,lat,lon\ns1,0,0\ns1,1,1\n").find("duplicate") != std::string::npos);
  CHECK(message("site_id,lat\ns1,0\n").find("missing columns") != std::string::npos);
  CHECK(message("site_id,lat,lon\ns1,0\n").find("row 2") != std::string::npos);
  CHECK(message("site_id,lat,lon\n").find("no sites") != std::string::npos);
}

TEST_CASE("157-row file gives 157 sites and effective sample size 157") {
  std::ostringstream csv;
  csv << "site_id,lat,lon\n";
  for (int i = 0; i < 157; ++i) csv << "case" << i << ',' << (i % 60) - 30 << ',' << i - 80 << '\n';
  Collection c = parse_sites_csv(csv.str());
  CHECK(c.sites.size() == 157);
  MappedCollection mapped = map_collection(c, Grid::build(GridConfig{}));
  CHECK(mapped.effective_sample_size == 157);
  CHECK(mapped.assignments.size() == 157);
}

TEST_CASE("map_collection keeps duplicates and round-trips containment") {
  Grid grid = Grid::build(GridConfig{});
  Collection c{"dup", {{"a", 1.0, 2.0, {}}, {"b", 1.0, 2.0, {}}, {"o", 0.0, 0.0, {}}}};
  MappedCollection mapped = map_collection(c, grid);
  REQUIRE(mapped.assignments.size() == 3);
  CHECK(mapped.assignments[0].cell == mapped.assignments[1].cell);
  CHECK(grid.cell_polygon(mapped.assignments[2].cell).contains(0.0, 0.0));
}

TEST_CASE("extents: global, mask, bbox") {
  GridConfig config = synthetic::config_with_cells(100);
  Grid grid = Grid::build(config);
  REQUIRE(grid.total_cells() == 100);

  Extent global = build_global_extent(grid);
  CHECK(global.size() == 100);

  // 40 of 100 cells carry category 1 or 2.
  VariableLayer potveg = synthetic::layer_from(grid, "potveg", VariableKind::categorical,
                                               [](std::size_t i, CellId) {
                                                 return i < 40 ? static_cast<double>(1 + i % 2)
                                                               : 7.0;
                                               });
  Extent masked = build_mask_extent(MaskSpec{"potveg", {1, 2}}, potveg);
  CHECK(masked.size() == 40);
  CHECK(masked.description == "mask:potveg:1,2");

  try {
    build_mask_extent(MaskSpec{"potveg", {42}}, potveg);
    FAIL("expected empty extent");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "extent is empty");
  }

  VariableLayer continuous = synthetic::layer_from(grid, "tc", VariableKind::continuous,
                                                   [](std::size_t, CellId) { return 0.5; });
  try {
    build_mask_extent(MaskSpec{"tc", {1}}, continuous);
    FAIL("expected type error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::contract);
  }

  // Five bands of 20; the equatorial band's centre sits exactly on lat 0.
  Extent north = build_bbox_extent(BBoxSpec{1, -180, 90, 180}, grid);
  CHECK(north.size() == 40);
  for (auto cell : north.cells) CHECK(grid.cell_center(cell).lat >= 1.0);
  CHECK(build_bbox_extent(BBoxSpec{0, -180, 90, 180}, grid).size() == 60);

  Extent wrap = build_bbox_extent(parse_bbox_arg("-90,170,90,-170"), grid);
  for (auto cell : wrap.cells) CHECK(std::abs(grid.cell_center(cell).lon) >= 170.0);

  CHECK_THROWS_AS(parse_bbox_arg("10,0,5,1"), Error);
  CHECK_THROWS_AS(parse_bbox_arg("1,2,3"), Error);
}

TEST_CASE("build_extent through the catalog and CSV export") {
  synthetic::TempDir dir;
  GridConfig config = synthetic::config_with_cells(100);
  Grid grid = Grid::build(config);
  Catalog catalog = Catalog::open_or_create(dir.path(), config);
  catalog.register_layer(synthetic::layer_from(grid, "potveg", VariableKind::categorical,
                                               [](std::size_t i, CellId) {
                                                 return static_cast<double>(i % 4);
                                               }));
  Extent e = build_extent(parse_mask_arg("potveg:0,3"), grid, catalog);
  CHECK(e.size() == 50);
  Extent again = build_extent(parse_mask_arg("potveg:3,0"), grid, catalog);
  CHECK(again.cells == e.cells);
  CHECK(again.description == e.description);
  CHECK_THROWS_AS(build_extent(parse_mask_arg("nope:1"), grid, catalog), Error);

  std::ostringstream csv;
  write_extent_csv(csv, e);
  auto text = csv.str();
  CHECK(text.starts_with("band,column\n"));
  CHECK(std::count(text.begin(), text.end(), '\n') == 51);
}

TEST_CASE("extent spec text round-trips through describe") {
  for (const char* text : {"global", "mask:potveg:1,2", "bbox:-23.5,-180,23.5,180", "bbox:0,170,10,-170"}) {
    CHECK(describe(parse_extent_spec(text)) == text);
  }
  CHECK(describe(parse_extent_spec("mask:potveg:2,1,2")) == "mask:potveg:1,2");
  CHECK_THROWS_AS(parse_extent_spec("tropics"), Error);
  CHECK_THROWS_AS(parse_extent_spec("bbox:1,2,3"), Error);
}
