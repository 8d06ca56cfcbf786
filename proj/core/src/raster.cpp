#include "sitebias/raster.hpp"

#include "sitebias/error.hpp"
#include "sitebias/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>

namespace sitebias {
namespace {

constexpr double kEdgeTolerance = 1e-9;

struct Tokenizer {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 1;

  // Returns an empty view at end of input.
  std::string_view next() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      if (text[pos] == '\n') ++line;
      ++pos;
    }
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  }

  std::string_view peek() {
    Tokenizer copy = *this;
    return copy.next();
  }
};

}  // namespace

std::size_t Raster::nodata_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [this](double v) { return is_nodata(v); }));
}

void Raster::validate() const {
  if (ncols == 0 || nrows == 0) throw Error(ErrorKind::domain, "raster has no pixels");
  if (values.size() != ncols * nrows) {
    throw Error(ErrorKind::domain, "raster value count does not match ncols*nrows");
  }
  if (!(cellsize > 0.0) || !std::isfinite(cellsize)) {
    throw Error(ErrorKind::domain, "cellsize must be positive");
  }
  const double right = xllcorner + static_cast<double>(ncols) * cellsize;
  if (xllcorner < -180.0 - kEdgeTolerance || right > 180.0 + kEdgeTolerance ||
      yllcorner < -90.0 - kEdgeTolerance || top() > 90.0 + kEdgeTolerance) {
    throw Error(ErrorKind::domain, "raster extent outside [-180,180) x [-90,90]");
  }
}

Raster parse_ascii_grid(std::string_view text) {
  Tokenizer tok{text};
  Raster raster;

  bool have[6] = {};
  bool x_center = false;
  bool y_center = false;
  auto read_number = [&](std::string_view key) {
    auto value = tok.next();
    auto parsed = text::parse_double(value);
    if (!parsed) {
      throw ParseError(tok.line, "malformed header value '" + std::string(value) + "' for " +
                                     std::string(key));
    }
    return *parsed;
  };
  auto read_count = [&](std::string_view key) {
    double v = read_number(key);
    if (v < 1 || v != std::floor(v)) {
      throw ParseError(tok.line, std::string(key) + " must be a positive integer");
    }
    return static_cast<std::size_t>(v);
  };

  while (true) {
    auto peek = tok.peek();
    if (peek.empty()) break;
    if (!std::isalpha(static_cast<unsigned char>(peek.front()))) break;
    auto key = text::to_lower(tok.next());
    if (key == "ncols") {
      raster.ncols = read_count(key);
      have[0] = true;
    } else if (key == "nrows") {
      raster.nrows = read_count(key);
      have[1] = true;
    } else if (key == "xllcorner" || key == "xllcenter") {
      raster.xllcorner = read_number(key);
      x_center = key == "xllcenter";
      have[2] = true;
    } else if (key == "yllcorner" || key == "yllcenter") {
      raster.yllcorner = read_number(key);
      y_center = key == "yllcenter";
      have[3] = true;
    } else if (key == "cellsize") {
      raster.cellsize = read_number(key);
      if (!(raster.cellsize > 0.0)) throw ParseError(tok.line, "cellsize must be positive");
      have[4] = true;
    } else if (key == "nodata_value") {
      raster.nodata_value = read_number(key);
      have[5] = true;
    } else {
      throw ParseError(tok.line, "malformed header: unknown key '" + key + "'");
    }
  }
  static constexpr const char* kRequired[] = {"ncols", "nrows", "xllcorner", "yllcorner",
                                              "cellsize"};
  for (int i = 0; i < 5; ++i) {
    if (!have[i]) {
      throw ParseError(tok.line, std::string("malformed header: missing ") + kRequired[i]);
    }
  }
  if (x_center) raster.xllcorner -= 0.5 * raster.cellsize;
  if (y_center) raster.yllcorner -= 0.5 * raster.cellsize;

  const std::size_t expected = raster.ncols * raster.nrows;
  raster.values.reserve(expected);
  std::size_t last_line = tok.line;
  while (true) {
    auto token = tok.next();
    if (token.empty()) break;
    last_line = tok.line;
    auto value = text::parse_double(token);
    if (!value) {
      throw ParseError(tok.line, "non-numeric value '" + std::string(token) + "'");
    }
    raster.values.push_back(*value);
  }
  if (raster.values.size() != expected) {
    throw ParseError(last_line, "expected " + std::to_string(expected) + " values, got " +
                                   std::to_string(raster.values.size()));
  }
  try {
    raster.validate();
  } catch (const Error& e) {
    throw ParseError(1, e.what());
  }
  return raster;
}

Raster read_ascii_grid_file(const std::string& path) {
  return parse_ascii_grid(text::maybe_gunzip(text::read_file(path)));
}

void write_ascii_grid(std::ostream& out, const Raster& raster) {
  out << "ncols " << raster.ncols << '\n'
      << "nrows " << raster.nrows << '\n'
      << "xllcorner " << text::format_double(raster.xllcorner) << '\n'
      << "yllcorner " << text::format_double(raster.yllcorner) << '\n'
      << "cellsize " << text::format_double(raster.cellsize) << '\n'
      << "NODATA_value " << text::format_double(raster.nodata_value) << '\n';
  for (std::size_t r = 0; r < raster.nrows; ++r) {
    for (std::size_t c = 0; c < raster.ncols; ++c) {
      if (c) out << ' ';
      out << text::format_double(raster.at(r, c));
    }
    out << '\n';
  }
}

Raster resample_nearest(const Raster& raster, double new_cellsize) {
  if (!(new_cellsize > 0.0) || !std::isfinite(new_cellsize)) {
    throw Error(ErrorKind::domain, "new cellsize must be positive");
  }
  if (new_cellsize == raster.cellsize) return raster;

  Raster out;
  out.cellsize = new_cellsize;
  out.xllcorner = raster.xllcorner;
  out.yllcorner = raster.yllcorner;
  out.nodata_value = raster.nodata_value;
  const double width = static_cast<double>(raster.ncols) * raster.cellsize;
  const double height = static_cast<double>(raster.nrows) * raster.cellsize;
  out.ncols = static_cast<std::size_t>(std::max(1.0, std::round(width / new_cellsize)));
  out.nrows = static_cast<std::size_t>(std::max(1.0, std::round(height / new_cellsize)));
  out.values.resize(out.ncols * out.nrows);

  std::vector<std::size_t> source_col(out.ncols);
  for (std::size_t c = 0; c < out.ncols; ++c) {
    double x = (static_cast<double>(c) + 0.5) * new_cellsize;
    source_col[c] = std::min(raster.ncols - 1,
                             static_cast<std::size_t>(std::max(0.0, std::floor(x / raster.cellsize))));
  }
  for (std::size_t r = 0; r < out.nrows; ++r) {
    double y = (static_cast<double>(r) + 0.5) * new_cellsize;
    std::size_t source_row = std::min(
        raster.nrows - 1, static_cast<std::size_t>(std::max(0.0, std::floor(y / raster.cellsize))));
    for (std::size_t c = 0; c < out.ncols; ++c) {
      out.at(r, c) = raster.at(source_row, source_col[c]);
    }
  }
  return out;
}

Raster focal_fill(const Raster& raster, int radius_pixels) {
  if (radius_pixels < 1) throw Error(ErrorKind::domain, "focal radius must be >= 1");
  Raster out = raster;
  const auto radius = static_cast<std::ptrdiff_t>(radius_pixels);
  const auto rows = static_cast<std::ptrdiff_t>(raster.nrows);
  const auto cols = static_cast<std::ptrdiff_t>(raster.ncols);
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    for (std::ptrdiff_t c = 0; c < cols; ++c) {
      if (!raster.is_nodata(raster.at(r, c))) continue;
      double sum = 0.0;
      std::size_t count = 0;
      for (auto rr = std::max<std::ptrdiff_t>(0, r - radius);
           rr <= std::min(rows - 1, r + radius); ++rr) {
        for (auto cc = std::max<std::ptrdiff_t>(0, c - radius);
             cc <= std::min(cols - 1, c + radius); ++cc) {
          double v = raster.at(rr, cc);
          if (raster.is_nodata(v)) continue;
          sum += v;
          ++count;
        }
      }
      if (count > 0) out.at(r, c) = sum / static_cast<double>(count);
    }
  }
  return out;
}

}  // namespace sitebias
