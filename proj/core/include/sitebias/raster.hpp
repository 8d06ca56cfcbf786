#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sitebias {

/// Geographic (lat/lon degrees) single-band raster. Row 0 is the northernmost row.
struct Raster {
  std::size_t ncols = 0;
  std::size_t nrows = 0;
  double xllcorner = 0.0;
  double yllcorner = 0.0;
  double cellsize = 1.0;
  double nodata_value = -9999.0;
  std::vector<double> values;  // row-major, ncols * nrows

  double at(std::size_t row, std::size_t col) const { return values[row * ncols + col]; }
  double& at(std::size_t row, std::size_t col) { return values[row * ncols + col]; }

  bool is_nodata(double v) const noexcept { return v == nodata_value || v != v; }
  std::size_t nodata_count() const noexcept;

  double top() const noexcept { return yllcorner + static_cast<double>(nrows) * cellsize; }
  double pixel_center_lon(std::size_t col) const noexcept {
    return xllcorner + (static_cast<double>(col) + 0.5) * cellsize;
  }
  double pixel_center_lat(std::size_t row) const noexcept {
    return top() - (static_cast<double>(row) + 0.5) * cellsize;
  }

  /// Throws Error(domain) when the invariants (sizes, cellsize, geographic extent) fail.
  void validate() const;
};

/// Parses the ESRI ASCII grid layout: `ncols`, `nrows`, `xllcorner|xllcenter`,
/// `yllcorner|yllcenter`, `cellsize`, optional `NODATA_value`, then the values.
/// Errors are ParseError with the offending line number.
Raster parse_ascii_grid(std::string_view text);

/// Reads a .asc or gzip-compressed .asc.gz file.
Raster read_ascii_grid_file(const std::string& path);

/// Emits the same layout parse_ascii_grid reads; values round-trip exactly.
void write_ascii_grid(std::ostream& out, const Raster& raster);

/// Nearest-pixel-centre resampling over the same extent.
Raster resample_nearest(const Raster& raster, double new_cellsize);

/// Fills nodata pixels with the mean of the valid pixels in the (2r+1)^2 window
/// around them. Windows read the input raster only, so fills never cascade.
Raster focal_fill(const Raster& raster, int radius_pixels);

}  // namespace sitebias
