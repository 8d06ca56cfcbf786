#include "sitebias/grid.hpp"

#include "sitebias/error.hpp"
#include "sitebias/text.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace sitebias {
namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

// Picks the number of equal-height bands. Every band then has the same area, so
// each gets k = round(cells_real / bands) columns. Candidates around sqrt(N/pi)
// keep equatorial cells roughly square; among those whose area error is within
// 1e-4 (or the best available) the one closest to the ideal count wins.
std::pair<std::uint32_t, std::uint32_t> choose_layout(double cells_real) {
  const double ideal = std::sqrt(cells_real / std::numbers::pi);
  const auto lo = static_cast<std::uint64_t>(std::max(1.0, std::floor(ideal / 2.0)));
  const auto hi = static_cast<std::uint64_t>(std::ceil(2.0 * ideal)) + 1;

  struct Candidate {
    std::uint32_t bands;
    std::uint32_t columns;
    double error;
  };
  std::vector<Candidate> candidates;
  for (std::uint64_t nb = lo; nb <= hi; ++nb) {
    double k = std::max(1.0, std::round(cells_real / static_cast<double>(nb)));
    double area_ratio = cells_real / (static_cast<double>(nb) * k);
    candidates.push_back({static_cast<std::uint32_t>(nb), static_cast<std::uint32_t>(k),
                          std::abs(area_ratio - 1.0)});
  }
  double best = std::min_element(candidates.begin(), candidates.end(),
                                 [](const auto& a, const auto& b) { return a.error < b.error; })
                    ->error;
  double accept = std::max(best, 1e-4);
  const Candidate* pick = nullptr;
  for (const auto& c : candidates) {
    if (c.error > accept) continue;
    if (!pick || std::abs(c.bands - ideal) < std::abs(pick->bands - ideal)) pick = &c;
  }
  return {pick->bands, pick->columns};
}

}  // namespace

void GridConfig::validate() const {
  if (!std::isfinite(sphere_radius_km) || sphere_radius_km <= 0.0) {
    throw Error(ErrorKind::config, "sphere_radius_km must be positive");
  }
  if (!std::isfinite(target_cell_area_km2) || target_cell_area_km2 <= 0.0) {
    throw Error(ErrorKind::config, "target_cell_area_km2 must be positive");
  }
  double sphere = 4.0 * std::numbers::pi * sphere_radius_km * sphere_radius_km;
  if (target_cell_area_km2 >= sphere) {
    throw Error(ErrorKind::config, "target_cell_area_km2 exceeds the sphere area");
  }
}

bool CellPolygon::contains(double lat, double lon) const {
  if (ring.empty()) return false;
  auto [lat_lo, lat_hi] = std::minmax({ring[0].lat, ring[1].lat, ring[2].lat, ring[3].lat});
  auto [lon_lo, lon_hi] = std::minmax({ring[0].lon, ring[1].lon, ring[2].lon, ring[3].lon});
  return lat >= lat_lo && lat <= lat_hi && lon >= lon_lo && lon <= lon_hi;
}

Grid Grid::build(const GridConfig& config) {
  config.validate();

  Grid grid;
  grid.config_ = config;
  const double cells_real =
      4.0 * std::numbers::pi * config.sphere_radius_km * config.sphere_radius_km /
      config.target_cell_area_km2;
  auto [band_count, columns] = choose_layout(cells_real);

  const double height = 2.0 / band_count;
  grid.bands_.reserve(band_count);
  std::uint64_t first = 0;
  for (std::uint32_t b = 0; b < band_count; ++b) {
    Band band;
    band.sin_south = b == 0 ? -1.0 : -1.0 + b * height;
    band.sin_north = b + 1 == band_count ? 1.0 : -1.0 + (b + 1) * height;
    band.lat_south = b == 0 ? -90.0 : std::asin(band.sin_south) * kDegPerRad;
    band.lat_north = b + 1 == band_count ? 90.0 : std::asin(band.sin_north) * kDegPerRad;
    // Every band has the same area; the max() only matters for degenerate layouts.
    band.cell_count = std::max<std::uint32_t>(1, columns);
    band.first_cell = first;
    first += band.cell_count;
    grid.bands_.push_back(band);
  }
  // Adjacent bands must share the exact same latitude edge.
  for (std::size_t b = 1; b < grid.bands_.size(); ++b) {
    grid.bands_[b].lat_south = grid.bands_[b - 1].lat_north;
  }
  grid.total_cells_ = first;
  return grid;
}

double Grid::sphere_area_km2() const noexcept {
  return 4.0 * std::numbers::pi * config_.sphere_radius_km * config_.sphere_radius_km;
}

bool Grid::is_valid(CellId cell) const noexcept {
  return cell.band < bands_.size() && cell.column < bands_[cell.band].cell_count;
}

void Grid::require_valid(CellId cell) const {
  if (!is_valid(cell)) {
    throw Error(ErrorKind::domain, "invalid cell (" + std::to_string(cell.band) + "," +
                                       std::to_string(cell.column) + ")");
  }
}

double Grid::column_edge(const Band& band, std::uint32_t column) const noexcept {
  if (column == 0) return -180.0;
  if (column >= band.cell_count) return 180.0;
  return -180.0 + 360.0 * static_cast<double>(column) / band.cell_count;
}

CellId Grid::point_to_cell(double lat, double lon) const {
  if (!(lat >= -90.0 && lat <= 90.0) || !(lon >= -180.0 && lon < 180.0)) {
    throw Error(ErrorKind::domain, "coordinates out of range: lat=" + text::format_double(lat) +
                                       " lon=" + text::format_double(lon));
  }
  auto it = std::lower_bound(bands_.begin(), bands_.end(), lat,
                             [](const Band& band, double value) { return band.lat_north < value; });
  if (it == bands_.end()) --it;
  const Band& band = *it;

  const double width = 360.0 / band.cell_count;
  double guess = std::ceil((lon + 180.0) / width) - 1.0;
  auto column = static_cast<std::uint32_t>(
      std::clamp(guess, 0.0, static_cast<double>(band.cell_count - 1)));
  // Re-check against the exact edges used by cell_polygon.
  while (column > 0 && lon <= column_edge(band, column)) --column;
  while (column + 1 < band.cell_count && lon > column_edge(band, column + 1)) ++column;

  return {static_cast<std::uint32_t>(it - bands_.begin()), column};
}

double Grid::cell_area_km2(CellId cell) const {
  require_valid(cell);
  const Band& band = bands_[cell.band];
  const double r = config_.sphere_radius_km;
  const double dlon = 2.0 * std::numbers::pi / band.cell_count;
  return r * r * (band.sin_north - band.sin_south) * dlon;
}

double Grid::cell_west(CellId cell) const {
  require_valid(cell);
  return column_edge(bands_[cell.band], cell.column);
}

double Grid::cell_east(CellId cell) const {
  require_valid(cell);
  return column_edge(bands_[cell.band], cell.column + 1);
}

CellPolygon Grid::cell_polygon(CellId cell) const {
  require_valid(cell);
  const Band& band = bands_[cell.band];
  const double west = column_edge(band, cell.column);
  const double east = column_edge(band, cell.column + 1);
  return CellPolygon{{{band.lat_south, west},
                      {band.lat_south, east},
                      {band.lat_north, east},
                      {band.lat_north, west},
                      {band.lat_south, west}}};
}

LatLon Grid::cell_center(CellId cell) const {
  require_valid(cell);
  const Band& band = bands_[cell.band];
  const double west = column_edge(band, cell.column);
  const double east = column_edge(band, cell.column + 1);
  return {0.5 * (band.lat_south + band.lat_north), 0.5 * (west + east)};
}

std::uint64_t Grid::linear_index(CellId cell) const {
  require_valid(cell);
  return bands_[cell.band].first_cell + cell.column;
}

CellId Grid::cell_at(std::uint64_t index) const {
  if (index >= total_cells_) {
    throw Error(ErrorKind::domain, "cell index out of range: " + std::to_string(index));
  }
  auto it = std::upper_bound(bands_.begin(), bands_.end(), index,
                             [](std::uint64_t value, const Band& band) {
                               return value < band.first_cell;
                             });
  --it;
  return {static_cast<std::uint32_t>(it - bands_.begin()),
          static_cast<std::uint32_t>(index - it->first_cell)};
}

void Grid::write_csv(std::ostream& out) const {
  out << "band,column,center_lat,center_lon,area_km2\n";
  for (std::uint32_t b = 0; b < bands_.size(); ++b) {
    for (std::uint32_t c = 0; c < bands_[b].cell_count; ++c) {
      CellId cell{b, c};
      LatLon center = cell_center(cell);
      out << b << ',' << c << ',' << text::format_double(center.lat) << ','
          << text::format_double(center.lon) << ',' << text::format_double(cell_area_km2(cell))
          << '\n';
    }
  }
}

bool Grid::operator==(const Grid& other) const {
  if (!(config_ == other.config_) || total_cells_ != other.total_cells_ ||
      bands_.size() != other.bands_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    const Band& a = bands_[i];
    const Band& b = other.bands_[i];
    if (a.sin_south != b.sin_south || a.sin_north != b.sin_north ||
        a.lat_south != b.lat_south || a.lat_north != b.lat_north ||
        a.cell_count != b.cell_count || a.first_cell != b.first_cell) {
      return false;
    }
  }
  return true;
}

}  // namespace sitebias
