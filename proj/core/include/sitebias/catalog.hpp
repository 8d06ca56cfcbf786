#pragma once

#include "sitebias/grid.hpp"
#include "sitebias/layer.hpp"

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace sitebias {

struct LayerSummary {
  std::string variable_id;
  VariableKind kind = VariableKind::continuous;
  std::string units;
  std::size_t cell_count = 0;
};

/// Directory-backed layer store:
///
///   <root>/grid.json                      grid the layers were aggregated on
///   <root>/<variable_id>/values.csv       band,column,value
///   <root>/<variable_id>/meta.json
///
/// Reads may run concurrently. Writes are serialised per Catalog object and
/// published with a directory rename, so a half-written layer is never listed.
class Catalog {
public:
  /// Opens an existing catalog, or creates one with `grid` (default config when
  /// absent). Throws Error(conflict) if an existing catalog uses a different grid.
  static Catalog open_or_create(const std::filesystem::path& root,
                                std::optional<GridConfig> grid = std::nullopt);
  /// Throws Error(not_found) if `root` holds no catalog.
  static Catalog open(const std::filesystem::path& root);

  const std::filesystem::path& root() const noexcept { return root_; }
  const GridConfig& grid_config() const noexcept { return grid_; }

  void register_layer(const VariableLayer& layer);
  VariableLayer load_layer(const std::string& variable_id) const;
  LayerSummary describe(const std::string& variable_id) const;
  bool contains(const std::string& variable_id) const;
  std::vector<LayerSummary> list_variables() const;

private:
  Catalog(std::filesystem::path root, GridConfig grid);

  std::filesystem::path root_;
  GridConfig grid_;
  std::shared_ptr<std::mutex> write_mutex_;
};

}  // namespace sitebias
