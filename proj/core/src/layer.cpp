#include "sitebias/layer.hpp"

#include "sitebias/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace sitebias {

std::string_view to_string(VariableKind kind) noexcept {
  return kind == VariableKind::continuous ? "continuous" : "categorical";
}

std::string_view to_string(ZonalStat stat) noexcept {
  return stat == ZonalStat::mean ? "mean" : "majority";
}

VariableKind parse_variable_kind(std::string_view text) {
  if (text == "continuous") return VariableKind::continuous;
  if (text == "categorical") return VariableKind::categorical;
  throw Error(ErrorKind::domain, "unknown variable kind '" + std::string(text) + "'");
}

ZonalStat parse_zonal_stat(std::string_view text) {
  if (text == "mean") return ZonalStat::mean;
  if (text == "majority") return ZonalStat::majority;
  throw Error(ErrorKind::domain, "unknown zonal statistic '" + std::string(text) + "'");
}

VariableLayer::VariableLayer(LayerMeta meta, std::vector<CellValue> values,
                             std::vector<double> categories)
    : meta_(std::move(meta)), values_(std::move(values)), categories_(std::move(categories)) {
  if (meta_.variable_id.empty()) throw Error(ErrorKind::domain, "variable_id must not be empty");
  std::sort(values_.begin(), values_.end(),
            [](const CellValue& a, const CellValue& b) { return a.cell < b.cell; });
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i].value)) {
      throw Error(ErrorKind::domain, "layer " + meta_.variable_id + " has a non-finite value");
    }
    if (i > 0 && values_[i - 1].cell == values_[i].cell) {
      throw Error(ErrorKind::domain, "layer " + meta_.variable_id + " has duplicate cells");
    }
  }
  if (meta_.kind == VariableKind::continuous) {
    categories_.clear();
    return;
  }
  if (categories_.empty()) {
    for (const auto& cv : values_) categories_.push_back(cv.value);
  }
  std::sort(categories_.begin(), categories_.end());
  categories_.erase(std::unique(categories_.begin(), categories_.end()), categories_.end());
  for (const auto& cv : values_) {
    if (!std::binary_search(categories_.begin(), categories_.end(), cv.value)) {
      throw Error(ErrorKind::domain,
                  "layer " + meta_.variable_id + " has a value outside its category set");
    }
  }
}

std::optional<double> VariableLayer::find(CellId cell) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), cell,
                             [](const CellValue& cv, CellId c) { return cv.cell < c; });
  if (it == values_.end() || it->cell != cell) return std::nullopt;
  return it->value;
}

namespace {

struct MeanAccumulator {
  double sum = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  void add(double v) {
    if (count == 0) {
      min = max = v;
    } else {
      min = std::min(min, v);
      max = std::max(max, v);
    }
    sum += v;
    ++count;
  }

  double result() const {
    return std::clamp(sum / static_cast<double>(count), min, max);
  }
};

struct MajorityAccumulator {
  std::vector<std::pair<double, std::size_t>> counts;

  void add(double v) {
    for (auto& [value, n] : counts) {
      if (value == v) {
        ++n;
        return;
      }
    }
    counts.emplace_back(v, 1);
  }

  double result() const {
    auto best = counts.front();
    for (const auto& entry : counts) {
      if (entry.second > best.second || (entry.second == best.second && entry.first < best.first)) {
        best = entry;
      }
    }
    return best.first;
  }
};

template <typename Accumulator>
std::vector<CellValue> aggregate(const Raster& raster, const Grid& grid) {
  std::unordered_map<std::uint64_t, Accumulator> cells;
  for (std::size_t r = 0; r < raster.nrows; ++r) {
    const double lat = std::clamp(raster.pixel_center_lat(r), -90.0, 90.0);
    for (std::size_t c = 0; c < raster.ncols; ++c) {
      double v = raster.at(r, c);
      if (raster.is_nodata(v)) continue;
      double lon = raster.pixel_center_lon(c);
      if (lon >= 180.0) lon -= 360.0;
      CellId cell = grid.point_to_cell(lat, lon);
      cells[grid.linear_index(cell)].add(v);
    }
  }
  std::vector<CellValue> out;
  out.reserve(cells.size());
  for (const auto& [index, acc] : cells) out.push_back({grid.cell_at(index), acc.result()});
  return out;
}

}  // namespace

VariableLayer zonal_aggregate(const Raster& raster, const Grid& grid, VariableKind kind,
                              const ZonalOptions& options) {
  raster.validate();
  ZonalStat stat = options.stat.value_or(kind == VariableKind::continuous ? ZonalStat::mean
                                                                          : ZonalStat::majority);
  if (kind == VariableKind::categorical && stat == ZonalStat::mean) {
    throw Error(ErrorKind::domain, "categorical layers require the majority statistic");
  }
  if (raster.nodata_count() == raster.values.size()) {
    throw Error(ErrorKind::empty, "raster has no valid pixels");
  }

  std::vector<CellValue> values = stat == ZonalStat::mean
                                      ? aggregate<MeanAccumulator>(raster, grid)
                                      : aggregate<MajorityAccumulator>(raster, grid);
  LayerMeta meta{options.variable_id, kind, options.units, options.provenance, grid.config()};
  return VariableLayer(std::move(meta), std::move(values));
}

}  // namespace sitebias
