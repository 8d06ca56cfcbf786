#pragma once

#include "sitebias/histogram.hpp"

#include <span>
#include <string_view>

namespace sitebias {

/// Similarity indicators in [0, 1]; 1 iff the two distributions coincide.
///   intersection   sum_i min(p_i, q_i)   (= 1 - total variation distance)
///   bhattacharyya  sum_i sqrt(p_i q_i)
enum class IndicatorKind { intersection, bhattacharyya };

std::string_view to_string(IndicatorKind kind) noexcept;
IndicatorKind parse_indicator_kind(std::string_view text);

/// Throws Error(contract) when the histograms do not share a binning.
double indicator(const Histogram& p, const Histogram& q, IndicatorKind kind);

/// Raw form over proportion vectors of equal length; used in the resampling loop.
double indicator(std::span<const double> p, std::span<const double> q, IndicatorKind kind);

}  // namespace sitebias
