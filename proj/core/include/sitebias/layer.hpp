#pragma once

#include "sitebias/grid.hpp"
#include "sitebias/raster.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sitebias {

enum class VariableKind { continuous, categorical };
enum class ZonalStat { mean, majority };

std::string_view to_string(VariableKind kind) noexcept;
std::string_view to_string(ZonalStat stat) noexcept;
VariableKind parse_variable_kind(std::string_view text);
ZonalStat parse_zonal_stat(std::string_view text);

struct LayerMeta {
  std::string variable_id;
  VariableKind kind = VariableKind::continuous;
  std::string units;
  std::string provenance;
  GridConfig grid;

  bool operator==(const LayerMeta&) const = default;
};

struct CellValue {
  CellId cell;
  double value = 0.0;

  bool operator==(const CellValue&) const = default;
};

/// Per-cell values of one variable. Cells without data have no entry.
class VariableLayer {
public:
  /// Sorts values by cell. For categorical layers an empty `categories` is
  /// derived from the values; a non-empty one must contain every value.
  VariableLayer(LayerMeta meta, std::vector<CellValue> values, std::vector<double> categories = {});

  const LayerMeta& meta() const noexcept { return meta_; }
  const std::string& id() const noexcept { return meta_.variable_id; }
  VariableKind kind() const noexcept { return meta_.kind; }
  std::span<const CellValue> values() const noexcept { return values_; }
  std::span<const double> categories() const noexcept { return categories_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::optional<double> find(CellId cell) const;

  bool operator==(const VariableLayer&) const = default;

private:
  LayerMeta meta_;
  std::vector<CellValue> values_;
  std::vector<double> categories_;
};

struct ZonalOptions {
  std::optional<ZonalStat> stat;  // defaults to mean (continuous) / majority (categorical)
  std::string variable_id = "unnamed";
  std::string units;
  std::string provenance;
};

/// Reduces the valid pixels whose centres fall in each cell. Mean results are
/// clamped to the contributing [min, max]; majority ties go to the smallest value.
VariableLayer zonal_aggregate(const Raster& raster, const Grid& grid, VariableKind kind,
                              const ZonalOptions& options = {});

}  // namespace sitebias
