#pragma once

// Independent reference computations for the tests. Nothing here calls into the
// library's statistics code; keep it that way.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

/// Sum of min(a_i, b_i) for two count vectors over the same denominator,
/// evaluated in integers and divided once.
inline double intersection_counts(const std::vector<std::int64_t>& a,
                                  const std::vector<std::int64_t>& b, std::int64_t denom) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::min(a[i], b[i]);
  return static_cast<double>(total) / static_cast<double>(denom);
}

/// Bhattacharyya coefficient of two count vectors in long double: sum sqrt(a_i b_i) / denom.
inline double bhattacharyya_counts(const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b, std::int64_t denom) {
  long double total = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += std::sqrt(static_cast<long double>(a[i]) * static_cast<long double>(b[i]));
  }
  return static_cast<double>(total / static_cast<long double>(denom));
}

inline double intersection(const std::vector<double>& p, const std::vector<double>& q) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] < q[i] ? p[i] : q[i];
  return static_cast<double>(s);
}

inline double bhattacharyya(const std::vector<double>& p, const std::vector<double>& q) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    s += std::sqrt(static_cast<long double>(p[i]) * static_cast<long double>(q[i]));
  }
  return static_cast<double>(s);
}

/// Area of a lat/lon rectangle on a sphere: R^2 (sin phi2 - sin phi1)(lambda2 - lambda1).
inline double spherical_rectangle_area(double radius, double lat1, double lat2, double lon1,
                                       double lon2) {
  const double d = std::numbers::pi / 180.0;
  return radius * radius * (std::sin(lat2 * d) - std::sin(lat1 * d)) * (lon2 - lon1) * d;
}

inline double sphere_area(double radius) { return 4.0 * std::numbers::pi * radius * radius; }

/// Percentage of `values` strictly below x plus half the exact ties, by linear scan.
inline double midrank_percentile(const std::vector<double>& values, double x) {
  double below = 0.0;
  double ties = 0.0;
  for (double v : values) {
    if (v < x) below += 1.0;
    else if (v == x) ties += 1.0;
  }
  return 100.0 * (below + 0.5 * ties) / static_cast<double>(values.size());
}

/// Bin counts for equal-width bins over [lo, hi] by scanning every bin interval:
/// bin k is [lo + k w, lo + (k+1) w), the last bin also takes hi.
inline std::vector<std::int64_t> equal_width_counts(const std::vector<double>& values, double lo,
                                                    double hi, std::size_t bins) {
  std::vector<std::int64_t> counts(bins, 0);
  const double w = (hi - lo) / static_cast<double>(bins);
  for (double v : values) {
    std::size_t found = bins - 1;
    for (std::size_t k = 0; k < bins; ++k) {
      double left = lo + w * static_cast<double>(k);
      double right = k + 1 == bins ? hi : lo + w * static_cast<double>(k + 1);
      if (v >= left && v < right) {
        found = k;
        break;
      }
    }
    ++counts[found];
  }
  return counts;
}

/// Majority value with ties to the smallest, by counting every distinct value.
inline double majority(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double best = values.front();
  std::size_t best_count = 0;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    if (j - i > best_count) {
      best_count = j - i;
      best = values[i];
    }
    i = j;
  }
  return best;
}

}  // namespace oracle
