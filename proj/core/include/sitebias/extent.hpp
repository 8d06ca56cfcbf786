#pragma once

#include "sitebias/catalog.hpp"
#include "sitebias/grid.hpp"
#include "sitebias/layer.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sitebias {

struct GlobalExtentSpec {
  bool operator==(const GlobalExtentSpec&) const = default;
};

/// Cells of a categorical layer whose value is one of `included_values`.
struct MaskSpec {
  std::string variable_id;
  std::vector<double> included_values;

  bool operator==(const MaskSpec&) const = default;
};

/// Cells whose centres fall inside the box (inclusive). west > east wraps the antimeridian.
struct BBoxSpec {
  double south = -90.0;
  double west = -180.0;
  double north = 90.0;
  double east = 180.0;

  bool operator==(const BBoxSpec&) const = default;
};

using ExtentSpec = std::variant<GlobalExtentSpec, MaskSpec, BBoxSpec>;

/// Canonical text: `global`, `mask:potveg:1,2`, `bbox:S,W,N,E`.
std::string describe(const ExtentSpec& spec);
/// Parses the CLI form `VAR:v1,v2,...`.
MaskSpec parse_mask_arg(std::string_view arg);
/// Parses the CLI form `S,W,N,E`.
BBoxSpec parse_bbox_arg(std::string_view arg);
/// Inverse of describe().
ExtentSpec parse_extent_spec(std::string_view text);

/// The population: a sorted, non-empty set of cells.
struct Extent {
  std::string extent_id;
  std::vector<CellId> cells;
  std::string description;

  bool contains(CellId cell) const;
  std::size_t size() const noexcept { return cells.size(); }
};

/// Throws Error(empty) "extent is empty" when no cell qualifies, Error(contract)
/// when a mask names a continuous layer, Error(not_found) for unknown layers.
Extent build_extent(const ExtentSpec& spec, const Grid& grid, const Catalog& catalog);
Extent build_global_extent(const Grid& grid);
Extent build_mask_extent(const MaskSpec& spec, const VariableLayer& mask_layer);
Extent build_bbox_extent(const BBoxSpec& spec, const Grid& grid);

/// `band,column` per line with a header.
void write_extent_csv(std::ostream& out, const Extent& extent);

}  // namespace sitebias
