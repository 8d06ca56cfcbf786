#include "sitebias/catalog.hpp"

#include "sitebias/error.hpp"
#include "sitebias/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace sitebias {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

json grid_to_json(const GridConfig& config) {
  return {{"sphere_radius_km", config.sphere_radius_km},
          {"target_cell_area_km2", config.target_cell_area_km2}};
}

GridConfig grid_from_json(const json& j) {
  GridConfig config;
  config.sphere_radius_km = j.at("sphere_radius_km").get<double>();
  config.target_cell_area_km2 = j.at("target_cell_area_km2").get<double>();
  config.validate();
  return config;
}

json read_json(const fs::path& path) {
  try {
    return json::parse(text::read_file(path.string()));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::io, "corrupt " + path.string() + ": " + e.what());
  }
}

std::string unique_suffix() {
  static std::atomic<unsigned> counter{0};
  std::ostringstream ss;
  ss << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '-' << counter++;
  return ss.str();
}

}  // namespace

Catalog::Catalog(fs::path root, GridConfig grid)
    : root_(std::move(root)), grid_(grid), write_mutex_(std::make_shared<std::mutex>()) {}

Catalog Catalog::open(const fs::path& root) {
  fs::path grid_file = root / "grid.json";
  if (!fs::exists(grid_file)) {
    throw Error(ErrorKind::not_found, "no catalog at " + root.string());
  }
  try {
    return Catalog(root, grid_from_json(read_json(grid_file)));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::io, "corrupt " + grid_file.string() + ": " + e.what());
  }
}

Catalog Catalog::open_or_create(const fs::path& root, std::optional<GridConfig> grid) {
  if (fs::exists(root / "grid.json")) {
    Catalog catalog = open(root);
    if (grid && !(*grid == catalog.grid_config())) {
      throw Error(ErrorKind::conflict,
                  "catalog at " + root.string() + " was created with a different grid");
    }
    return catalog;
  }
  GridConfig config = grid.value_or(GridConfig{});
  config.validate();
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create " + root.string() + ": " + ec.message());
  json doc = grid_to_json(config);
  doc["schema_version"] = kSchemaVersion;
  text::write_file_atomic((root / "grid.json").string(), doc.dump(2) + "\n");
  return Catalog(root, config);
}

void Catalog::register_layer(const VariableLayer& layer) {
  text::require_identifier(layer.id(), "variable_id");
  if (!(layer.meta().grid == grid_)) {
    throw Error(ErrorKind::contract,
                "layer " + layer.id() + " was aggregated on a different grid than the catalog");
  }
  std::lock_guard lock(*write_mutex_);
  const fs::path target = root_ / layer.id();
  if (fs::exists(target)) {
    throw Error(ErrorKind::conflict, "variable '" + layer.id() + "' is already registered");
  }

  const fs::path staging = root_ / (".staging-" + layer.id() + "-" + unique_suffix());
  fs::create_directories(staging);
  try {
    std::string csv = "band,column,value\n";
    csv.reserve(layer.size() * 24);
    for (const auto& cv : layer.values()) {
      csv += std::to_string(cv.cell.band);
      csv += ',';
      csv += std::to_string(cv.cell.column);
      csv += ',';
      csv += text::format_double(cv.value);
      csv += '\n';
    }
    text::write_file_atomic((staging / "values.csv").string(), csv);

    json meta = {{"schema_version", kSchemaVersion},
                 {"variable_id", layer.id()},
                 {"kind", std::string(to_string(layer.kind()))},
                 {"units", layer.meta().units},
                 {"provenance", layer.meta().provenance},
                 {"cell_count", layer.size()},
                 {"categories", std::vector<double>(layer.categories().begin(),
                                                    layer.categories().end())},
                 {"grid", grid_to_json(layer.meta().grid)}};
    text::write_file_atomic((staging / "meta.json").string(), meta.dump(2) + "\n");

    std::error_code ec;
    fs::rename(staging, target, ec);
    if (ec) {
      throw Error(fs::exists(target) ? ErrorKind::conflict : ErrorKind::io,
                  "cannot publish variable '" + layer.id() + "': " + ec.message());
    }
  } catch (...) {
    std::error_code ignored;
    fs::remove_all(staging, ignored);
    throw;
  }
}

bool Catalog::contains(const std::string& variable_id) const {
  return text::is_identifier(variable_id) && fs::exists(root_ / variable_id / "meta.json");
}

LayerSummary Catalog::describe(const std::string& variable_id) const {
  if (!contains(variable_id)) {
    throw Error(ErrorKind::not_found, "unknown variable '" + variable_id + "'");
  }
  json meta = read_json(root_ / variable_id / "meta.json");
  try {
    return {meta.at("variable_id").get<std::string>(),
            parse_variable_kind(meta.at("kind").get<std::string>()),
            meta.value("units", std::string{}), meta.at("cell_count").get<std::size_t>()};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::io, "corrupt meta.json for '" + variable_id + "': " + e.what());
  }
}

VariableLayer Catalog::load_layer(const std::string& variable_id) const {
  if (!contains(variable_id)) {
    throw Error(ErrorKind::not_found, "unknown variable '" + variable_id + "'");
  }
  const fs::path dir = root_ / variable_id;
  json meta = read_json(dir / "meta.json");

  LayerMeta layer_meta;
  std::vector<double> categories;
  try {
    layer_meta.variable_id = meta.at("variable_id").get<std::string>();
    layer_meta.kind = parse_variable_kind(meta.at("kind").get<std::string>());
    layer_meta.units = meta.value("units", std::string{});
    layer_meta.provenance = meta.value("provenance", std::string{});
    layer_meta.grid = grid_from_json(meta.at("grid"));
    categories = meta.value("categories", std::vector<double>{});
  } catch (const json::exception& e) {
    throw Error(ErrorKind::io, "corrupt meta.json for '" + variable_id + "': " + e.what());
  }

  std::string csv = text::read_file((dir / "values.csv").string());
  auto lines = text::split_lines(csv);
  if (lines.empty() || text::trim(lines[0]) != "band,column,value") {
    throw ParseError("row", 1, "values.csv for '" + variable_id + "' has a bad header");
  }
  std::vector<CellValue> values;
  values.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = text::split_csv_record(lines[i]);
    if (fields.size() != 3) throw ParseError("row", i + 1, "expected band,column,value");
    auto band = text::parse_int(fields[0]);
    auto column = text::parse_int(fields[1]);
    auto value = text::parse_double(fields[2]);
    if (!band || !column || !value || *band < 0 || *column < 0) {
      throw ParseError("row", i + 1, "malformed values.csv record");
    }
    values.push_back({{static_cast<std::uint32_t>(*band), static_cast<std::uint32_t>(*column)},
                      *value});
  }
  return VariableLayer(std::move(layer_meta), std::move(values), std::move(categories));
}

std::vector<LayerSummary> Catalog::list_variables() const {
  std::vector<LayerSummary> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(root_, ec)) {
    if (!entry.is_directory()) continue;
    std::string name = entry.path().filename().string();
    if (!text::is_identifier(name) || !fs::exists(entry.path() / "meta.json")) continue;
    out.push_back(describe(name));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.variable_id < b.variable_id; });
  return out;
}

}  // namespace sitebias
