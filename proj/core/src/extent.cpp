#include "sitebias/extent.hpp"

#include "sitebias/error.hpp"
#include "sitebias/text.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace sitebias {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> parse_number_list(std::string_view list, std::string_view what) {
  std::vector<double> out;
  for (const auto& field : text::split_csv_record(list)) {
    auto v = text::parse_double(field);
    if (!v) throw Error(ErrorKind::domain, "bad number '" + field + "' in " + std::string(what));
    out.push_back(*v);
  }
  return out;
}

Extent finish(std::vector<CellId> cells, const ExtentSpec& spec) {
  if (cells.empty()) throw Error(ErrorKind::empty, "extent is empty");
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  std::string description = describe(spec);
  return Extent{description, std::move(cells), description};
}

void validate(const BBoxSpec& box) {
  auto lat_ok = [](double v) { return v >= -90.0 && v <= 90.0; };
  auto lon_ok = [](double v) { return v >= -180.0 && v <= 180.0; };
  if (!lat_ok(box.south) || !lat_ok(box.north) || !lon_ok(box.west) || !lon_ok(box.east) ||
      box.south > box.north) {
    throw Error(ErrorKind::domain, "invalid bbox " + describe(box));
  }
}

}  // namespace

std::string describe(const ExtentSpec& spec) {
  return std::visit(
      Overloaded{
          [](const GlobalExtentSpec&) { return std::string("global"); },
          [](const MaskSpec& m) {
            std::vector<double> values = m.included_values;
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            std::string out = "mask:" + m.variable_id + ":";
            for (std::size_t i = 0; i < values.size(); ++i) {
              if (i) out += ',';
              out += text::format_double(values[i]);
            }
            return out;
          },
          [](const BBoxSpec& b) {
            return "bbox:" + text::format_double(b.south) + "," + text::format_double(b.west) +
                   "," + text::format_double(b.north) + "," + text::format_double(b.east);
          }},
      spec);
}

MaskSpec parse_mask_arg(std::string_view arg) {
  auto colon = arg.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 >= arg.size()) {
    throw Error(ErrorKind::domain, "mask must look like VAR:v1,v2,...");
  }
  MaskSpec spec{std::string(arg.substr(0, colon)),
                parse_number_list(arg.substr(colon + 1), "mask values")};
  return spec;
}

BBoxSpec parse_bbox_arg(std::string_view arg) {
  auto values = parse_number_list(arg, "bbox");
  if (values.size() != 4) throw Error(ErrorKind::domain, "bbox must be S,W,N,E");
  BBoxSpec box{values[0], values[1], values[2], values[3]};
  validate(box);
  return box;
}

ExtentSpec parse_extent_spec(std::string_view text) {
  if (text == "global") return GlobalExtentSpec{};
  if (text.starts_with("mask:")) return parse_mask_arg(text.substr(5));
  if (text.starts_with("bbox:")) return parse_bbox_arg(text.substr(5));
  throw Error(ErrorKind::domain,
              "extent must be 'global', 'mask:VAR:v1,...' or 'bbox:S,W,N,E', got '" +
                  std::string(text) + "'");
}

bool Extent::contains(CellId cell) const {
  return std::binary_search(cells.begin(), cells.end(), cell);
}

Extent build_global_extent(const Grid& grid) {
  std::vector<CellId> cells;
  cells.reserve(grid.total_cells());
  for (std::uint32_t b = 0; b < grid.band_count(); ++b) {
    for (std::uint32_t c = 0; c < grid.bands()[b].cell_count; ++c) cells.push_back({b, c});
  }
  return finish(std::move(cells), GlobalExtentSpec{});
}

Extent build_mask_extent(const MaskSpec& spec, const VariableLayer& mask_layer) {
  if (mask_layer.kind() != VariableKind::categorical) {
    throw Error(ErrorKind::contract,
                "mask layer '" + mask_layer.id() + "' is continuous; masks need a categorical layer");
  }
  if (spec.included_values.empty()) {
    throw Error(ErrorKind::domain, "mask needs at least one included value");
  }
  std::vector<double> included = spec.included_values;
  std::sort(included.begin(), included.end());
  std::vector<CellId> cells;
  for (const auto& cv : mask_layer.values()) {
    if (std::binary_search(included.begin(), included.end(), cv.value)) cells.push_back(cv.cell);
  }
  return finish(std::move(cells), spec);
}

Extent build_bbox_extent(const BBoxSpec& spec, const Grid& grid) {
  validate(spec);
  const bool wraps = spec.west > spec.east;
  auto lon_inside = [&](double lon) {
    return wraps ? (lon >= spec.west || lon <= spec.east) : (lon >= spec.west && lon <= spec.east);
  };
  std::vector<CellId> cells;
  for (std::uint32_t b = 0; b < grid.band_count(); ++b) {
    const Band& band = grid.bands()[b];
    double lat = 0.5 * (band.lat_south + band.lat_north);
    if (lat < spec.south || lat > spec.north) continue;
    for (std::uint32_t c = 0; c < band.cell_count; ++c) {
      if (lon_inside(grid.cell_center({b, c}).lon)) cells.push_back({b, c});
    }
  }
  return finish(std::move(cells), spec);
}

Extent build_extent(const ExtentSpec& spec, const Grid& grid, const Catalog& catalog) {
  return std::visit(Overloaded{[&](const GlobalExtentSpec&) { return build_global_extent(grid); },
                               [&](const MaskSpec& m) {
                                 return build_mask_extent(m, catalog.load_layer(m.variable_id));
                               },
                               [&](const BBoxSpec& b) { return build_bbox_extent(b, grid); }},
                    spec);
}

void write_extent_csv(std::ostream& out, const Extent& extent) {
  out << "band,column\n";
  for (const auto& cell : extent.cells) out << cell.band << ',' << cell.column << '\n';
}

}  // namespace sitebias
