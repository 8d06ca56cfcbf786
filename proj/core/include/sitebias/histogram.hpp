#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace sitebias {

enum class BinningKind { equal_width, log_width, categorical };

std::string_view to_string(BinningKind kind) noexcept;
BinningKind parse_binning_kind(std::string_view text);

/// Discretisation shared by the sample and population histograms.
///
/// Continuous kinds hold bin_count + 1 ascending edges over [min, max]. A value
/// on an interior edge belongs to the higher bin; the domain max belongs to the
/// last bin; values outside the domain clamp to the first/last bin.
/// log_width spaces the edges evenly in log(v + shift), where shift is 0 when
/// min > 0 and 1 - min otherwise.
struct Binning {
  BinningKind kind = BinningKind::equal_width;
  std::vector<double> edges;       // continuous kinds only
  std::vector<double> categories;  // categorical only, ascending
  double shift = 0.0;

  std::size_t size() const noexcept;
  double min() const;
  double max() const;
  double lower(std::size_t bin) const;
  double upper(std::size_t bin) const;
  /// Throws Error(contract) for a categorical value outside `categories`.
  std::size_t bin_of(double value) const;

  bool operator==(const Binning&) const = default;
};

Binning equal_width_binning(double min, double max, std::size_t bin_count);
Binning log_width_binning(double min, double max, std::size_t bin_count);
Binning categorical_binning(std::vector<double> categories);
/// Domain (or category list) taken from the population values.
Binning make_binning(BinningKind kind, std::size_t bin_count, std::span<const double> population);

struct Histogram {
  Binning binning;
  std::vector<std::size_t> counts;
  std::vector<double> proportions;  // counts / support_count
  std::size_t support_count = 0;
};

/// Throws Error(empty) for no values.
Histogram build_histogram(std::span<const double> values, const Binning& binning);
Histogram histogram_from_counts(std::vector<std::size_t> counts, const Binning& binning);

}  // namespace sitebias
