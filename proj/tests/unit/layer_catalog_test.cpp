#include "sitebias/catalog.hpp"
#include "sitebias/error.hpp"
#include "sitebias/layer.hpp"

#include "../support/oracles.hpp"
#include "../support/synthetic.hpp"

#include <doctest.h>

#include <random>

using namespace sitebias;

namespace {

// A 1-degree raster over a box, on a coarse grid whose cells hold many pixels.
Raster box_raster(double west, double south, std::size_t cols, std::size_t rows,
                  std::vector<double> values, double cellsize = 1.0) {
  Raster r;
  r.ncols = cols;
  r.nrows = rows;
  r.xllcorner = west;
  r.yllcorner = south;
  r.cellsize = cellsize;
  r.values = std::move(values);
  return r;
}

std::vector<double> values_in_cell(const Raster& r, const Grid& grid, CellId cell) {
  std::vector<double> out;
  for (std::size_t row = 0; row < r.nrows; ++row) {
    for (std::size_t col = 0; col < r.ncols; ++col) {
      double v = r.at(row, col);
      if (r.is_nodata(v)) continue;
      if (grid.point_to_cell(r.pixel_center_lat(row), r.pixel_center_lon(col)) == cell) {
        out.push_back(v);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("zonal mean and majority on hand-built cells") {
  Grid grid = Grid::build(synthetic::config_with_cells(100));
  CellId cell = grid.point_to_cell(0.5, 0.5);
  double west = grid.cell_west(cell);
  double south = grid.bands()[cell.band].lat_south;

  // Four pixels well inside one cell: {1,3,5,7} -> mean 4.
  Raster four = box_raster(west + 1.0, south + 1.0, 2, 2, {1, 3, 5, 7});
  VariableLayer mean = zonal_aggregate(four, grid, VariableKind::continuous);
  REQUIRE(mean.size() == 1);
  CHECK(mean.find(cell) == 4.0);

  // {2,2,9} -> majority 2 (counting oracle), one nodata pixel ignored.
  Raster three = box_raster(west + 1.0, south + 1.0, 2, 2, {2, 2, 9, -9999});
  VariableLayer majority = zonal_aggregate(three, grid, VariableKind::categorical);
  CHECK(majority.find(cell) == oracle::majority({2, 2, 9}));
  CHECK(majority.categories().size() == 1);

  // Ties break to the smallest category.
  Raster tie = box_raster(west + 1.0, south + 1.0, 2, 2, {9, 2, 9, 2});
  CHECK(zonal_aggregate(tie, grid, VariableKind::categorical).find(cell) == 2.0);

  // Constant pixels -> constant cell value.
  Raster sevens = box_raster(west + 1.0, south + 1.0, 2, 2, {7, 7, 7, 7});
  CHECK(zonal_aggregate(sevens, grid, VariableKind::continuous).find(cell) == 7.0);
}

TEST_CASE("zonal errors") {
  Grid grid = Grid::build(synthetic::config_with_cells(100));
  Raster empty = box_raster(0, 0, 2, 1, {-9999, -9999});
  CHECK_THROWS_AS(zonal_aggregate(empty, grid, VariableKind::continuous), Error);
  Raster fine = box_raster(0, 0, 2, 1, {1, 2});
  ZonalOptions mean_on_categorical;
  mean_on_categorical.stat = ZonalStat::mean;
  CHECK_THROWS_AS(zonal_aggregate(fine, grid, VariableKind::categorical, mean_on_categorical),
                  Error);
}

TEST_CASE("property: constant global raster gives that constant; means stay within pixel range") {
  Grid grid = Grid::build(synthetic::config_with_cells(500));
  Raster global = box_raster(-180, -90, 72, 36, std::vector<double>(72 * 36, 0.1), 5.0);
  VariableLayer layer = zonal_aggregate(global, grid, VariableKind::continuous);
  CHECK(layer.size() > 0);
  for (const auto& cv : layer.values()) CHECK(cv.value == 0.1);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-50, 50);
  for (auto& v : global.values) v = u(rng);
  VariableLayer varied = zonal_aggregate(global, grid, VariableKind::continuous);
  for (const auto& cv : varied.values()) {
    auto pixels = values_in_cell(global, grid, cv.cell);
    REQUIRE(!pixels.empty());
    auto [lo, hi] = std::minmax_element(pixels.begin(), pixels.end());
    CHECK(cv.value >= *lo);
    CHECK(cv.value <= *hi);
  }
}

TEST_CASE("categorical layers reject values outside the declared category set") {
  Grid grid = Grid::build(synthetic::config_with_cells(100));
  LayerMeta meta{"potveg", VariableKind::categorical, "", "", grid.config()};
  CHECK_THROWS_AS(VariableLayer(meta, {{{0, 0}, 3.0}}, {1.0, 2.0}), Error);
  CHECK_NOTHROW(VariableLayer(meta, {{{0, 0}, 2.0}}, {1.0, 2.0}));
}

TEST_CASE("catalog register / list / load round trip") {
  synthetic::TempDir dir;
  GridConfig config = synthetic::config_with_cells(200);
  Grid grid = Grid::build(config);
  Catalog catalog = Catalog::open_or_create(dir.path(), config);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  VariableLayer tree = synthetic::layer_from(grid, "tree_cover", VariableKind::continuous,
                                             [&](std::size_t, CellId) { return u(rng) / 3.0; });
  catalog.register_layer(tree);

  auto listing = catalog.list_variables();
  REQUIRE(listing.size() == 1);
  CHECK(listing[0].variable_id == "tree_cover");
  CHECK(listing[0].cell_count == tree.size());

  VariableLayer loaded = catalog.load_layer("tree_cover");
  CHECK(loaded == tree);
  CHECK(catalog.load_layer("tree_cover") == loaded);

  try {
    catalog.register_layer(tree);
    FAIL("expected conflict");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::conflict);
  }
  try {
    catalog.load_layer("nope");
    FAIL("expected not found");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_found);
  }

  // Reopening sees the same content; a different grid is refused.
  Catalog reopened = Catalog::open(dir.path());
  CHECK(reopened.load_layer("tree_cover") == tree);
  CHECK_THROWS_AS(Catalog::open_or_create(dir.path(), GridConfig{}), Error);

  VariableLayer foreign = synthetic::layer_from(Grid::build(synthetic::config_with_cells(100)),
                                                "other", VariableKind::continuous,
                                                [](std::size_t, CellId) { return 1.0; });
  CHECK_THROWS_AS(catalog.register_layer(foreign), Error);
}

TEST_CASE("categorical layers keep their category set through the catalog") {
  synthetic::TempDir dir;
  GridConfig config = synthetic::config_with_cells(100);
  Grid grid = Grid::build(config);
  Catalog catalog = Catalog::open_or_create(dir.path(), config);
  VariableLayer potveg = synthetic::layer_from(
      grid, "potveg", VariableKind::categorical,
      [](std::size_t i, CellId) { return static_cast<double>(1 + i % 5); });
  catalog.register_layer(potveg);
  VariableLayer back = catalog.load_layer("potveg");
  CHECK(back.kind() == VariableKind::categorical);
  CHECK(std::vector<double>(back.categories().begin(), back.categories().end()) ==
        std::vector<double>{1, 2, 3, 4, 5});
}
