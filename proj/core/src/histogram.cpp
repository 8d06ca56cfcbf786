#include "sitebias/histogram.hpp"

#include "sitebias/error.hpp"
#include "sitebias/text.hpp"

#include <algorithm>
#include <cmath>

namespace sitebias {

std::string_view to_string(BinningKind kind) noexcept {
  switch (kind) {
    case BinningKind::equal_width: return "equal_width";
    case BinningKind::log_width: return "log_width";
    case BinningKind::categorical: return "categorical";
  }
  return "equal_width";
}

BinningKind parse_binning_kind(std::string_view text) {
  if (text == "equal_width" || text == "equal") return BinningKind::equal_width;
  if (text == "log_width" || text == "log") return BinningKind::log_width;
  if (text == "categorical") return BinningKind::categorical;
  throw Error(ErrorKind::domain, "unknown binning '" + std::string(text) + "'");
}

std::size_t Binning::size() const noexcept {
  return kind == BinningKind::categorical ? categories.size()
                                          : (edges.empty() ? 0 : edges.size() - 1);
}

double Binning::min() const {
  return kind == BinningKind::categorical ? categories.front() : edges.front();
}

double Binning::max() const {
  return kind == BinningKind::categorical ? categories.back() : edges.back();
}

double Binning::lower(std::size_t bin) const {
  return kind == BinningKind::categorical ? categories.at(bin) : edges.at(bin);
}

double Binning::upper(std::size_t bin) const {
  return kind == BinningKind::categorical ? categories.at(bin) : edges.at(bin + 1);
}

std::size_t Binning::bin_of(double value) const {
  if (kind == BinningKind::categorical) {
    auto it = std::lower_bound(categories.begin(), categories.end(), value);
    if (it == categories.end() || *it != value) {
      throw Error(ErrorKind::contract,
                  "value " + text::format_double(value) + " is not one of the binning categories");
    }
    return static_cast<std::size_t>(it - categories.begin());
  }
  const std::size_t bins = size();
  if (value >= edges.back()) return bins - 1;
  if (value <= edges.front()) return 0;
  auto interior_begin = edges.begin() + 1;
  auto interior_end = edges.begin() + static_cast<std::ptrdiff_t>(bins);
  return static_cast<std::size_t>(std::upper_bound(interior_begin, interior_end, value) -
                                  interior_begin);
}

Binning equal_width_binning(double min, double max, std::size_t bin_count) {
  if (bin_count < 2) throw Error(ErrorKind::domain, "bin_count must be >= 2");
  if (!std::isfinite(min) || !std::isfinite(max) || min > max) {
    throw Error(ErrorKind::domain, "invalid binning domain");
  }
  Binning binning;
  binning.kind = BinningKind::equal_width;
  binning.edges.resize(bin_count + 1);
  const double width = max - min;
  for (std::size_t k = 0; k <= bin_count; ++k) {
    binning.edges[k] = min + width * static_cast<double>(k) / static_cast<double>(bin_count);
  }
  binning.edges.front() = min;
  binning.edges.back() = max;
  return binning;
}

Binning log_width_binning(double min, double max, std::size_t bin_count) {
  if (bin_count < 2) throw Error(ErrorKind::domain, "bin_count must be >= 2");
  if (!std::isfinite(min) || !std::isfinite(max) || min > max) {
    throw Error(ErrorKind::domain, "invalid binning domain");
  }
  Binning binning;
  binning.kind = BinningKind::log_width;
  binning.shift = min > 0.0 ? 0.0 : 1.0 - min;
  const double lo = std::log(min + binning.shift);
  const double hi = std::log(max + binning.shift);
  binning.edges.resize(bin_count + 1);
  for (std::size_t k = 0; k <= bin_count; ++k) {
    double t = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bin_count);
    binning.edges[k] = std::exp(t) - binning.shift;
  }
  binning.edges.front() = min;
  binning.edges.back() = max;
  // exp/log round-off must not break monotonicity.
  for (std::size_t k = 1; k <= bin_count; ++k) {
    binning.edges[k] = std::max(binning.edges[k], binning.edges[k - 1]);
  }
  return binning;
}

Binning categorical_binning(std::vector<double> categories) {
  std::sort(categories.begin(), categories.end());
  categories.erase(std::unique(categories.begin(), categories.end()), categories.end());
  if (categories.empty()) throw Error(ErrorKind::empty, "categorical binning needs categories");
  Binning binning;
  binning.kind = BinningKind::categorical;
  binning.categories = std::move(categories);
  return binning;
}

Binning make_binning(BinningKind kind, std::size_t bin_count, std::span<const double> population) {
  if (population.empty()) throw Error(ErrorKind::empty, "population has no values");
  if (kind == BinningKind::categorical) {
    return categorical_binning(std::vector<double>(population.begin(), population.end()));
  }
  auto [lo, hi] = std::minmax_element(population.begin(), population.end());
  return kind == BinningKind::log_width ? log_width_binning(*lo, *hi, bin_count)
                                        : equal_width_binning(*lo, *hi, bin_count);
}

Histogram histogram_from_counts(std::vector<std::size_t> counts, const Binning& binning) {
  if (counts.size() != binning.size()) {
    throw Error(ErrorKind::contract, "count vector does not match the binning");
  }
  Histogram h;
  h.binning = binning;
  h.counts = std::move(counts);
  for (auto c : h.counts) h.support_count += c;
  if (h.support_count == 0) throw Error(ErrorKind::empty, "histogram of no values");
  h.proportions.resize(h.counts.size());
  const double total = static_cast<double>(h.support_count);
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    h.proportions[i] = static_cast<double>(h.counts[i]) / total;
  }
  return h;
}

Histogram build_histogram(std::span<const double> values, const Binning& binning) {
  if (values.empty()) throw Error(ErrorKind::empty, "cannot histogram an empty value list");
  std::vector<std::size_t> counts(binning.size(), 0);
  for (double v : values) ++counts[binning.bin_of(v)];
  return histogram_from_counts(std::move(counts), binning);
}

}  // namespace sitebias
