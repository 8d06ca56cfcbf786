#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sitebias {

inline constexpr double kAuthalicEarthRadiusKm = 6371.0072;
inline constexpr double kDefaultCellAreaKm2 = 96.0;

struct GridConfig {
  double sphere_radius_km = kAuthalicEarthRadiusKm;
  double target_cell_area_km2 = kDefaultCellAreaKm2;

  /// Throws Error(config) when a field is non-positive, non-finite, or the
  /// target area is not smaller than the sphere.
  void validate() const;

  bool operator==(const GridConfig&) const = default;
};

/// Identifies one grid cell. Band 0 is the southernmost band; column 0 starts at -180.
struct CellId {
  std::uint32_t band = 0;
  std::uint32_t column = 0;

  auto operator<=>(const CellId&) const = default;
};

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;
};

/// Closed ring (first vertex repeated last), counter-clockwise from the south-west corner.
struct CellPolygon {
  std::vector<LatLon> ring;

  bool contains(double lat, double lon) const;
};

/// One latitude band: equal height in sin(latitude), split into equal-longitude cells.
struct Band {
  double sin_south = 0.0;
  double sin_north = 0.0;
  double lat_south = 0.0;  // degrees
  double lat_north = 0.0;  // degrees
  std::uint32_t cell_count = 0;
  std::uint64_t first_cell = 0;  // linear index of column 0
};

/// Equal-area partition of the sphere. Immutable once built; safe to share across threads.
class Grid {
public:
  static Grid build(const GridConfig& config);

  const GridConfig& config() const noexcept { return config_; }
  std::span<const Band> bands() const noexcept { return bands_; }
  std::size_t band_count() const noexcept { return bands_.size(); }
  std::uint64_t total_cells() const noexcept { return total_cells_; }
  double sphere_area_km2() const noexcept;

  bool is_valid(CellId cell) const noexcept;
  /// Throws Error(domain) when `cell` is not part of this grid.
  void require_valid(CellId cell) const;

  /// Points on a shared boundary go to the lower band, then the lower column.
  CellId point_to_cell(double lat, double lon) const;
  double cell_area_km2(CellId cell) const;
  CellPolygon cell_polygon(CellId cell) const;
  LatLon cell_center(CellId cell) const;

  double cell_west(CellId cell) const;
  double cell_east(CellId cell) const;

  std::uint64_t linear_index(CellId cell) const;
  CellId cell_at(std::uint64_t linear_index) const;

  /// One row per cell: `band,column,center_lat,center_lon,area_km2`.
  void write_csv(std::ostream& out) const;

  bool operator==(const Grid& other) const;

private:
  Grid() = default;

  double column_edge(const Band& band, std::uint32_t column) const noexcept;

  GridConfig config_;
  std::vector<Band> bands_;
  std::uint64_t total_cells_ = 0;
};

}  // namespace sitebias
