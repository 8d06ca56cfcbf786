#include "sitebias/error.hpp"
#include "sitebias/histogram.hpp"
#include "sitebias/indicator.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace sitebias;

TEST_CASE("equal-width histograms and the boundary rule") {
  Binning two = equal_width_binning(0.0, 1.0, 2);
  CHECK(build_histogram(std::vector<double>{0, 0, 1, 1}, two).proportions ==
        std::vector<double>{0.5, 0.5});
  CHECK(build_histogram(std::vector<double>{0.2}, two).proportions ==
        std::vector<double>{1.0, 0.0});
  // 0.5 sits on the interior edge -> higher bin; the domain max -> last bin.
  CHECK(two.bin_of(0.5) == 1);
  CHECK(two.bin_of(1.0) == 1);
  // Clamp rule outside the domain.
  CHECK(two.bin_of(-3.0) == 0);
  CHECK(two.bin_of(7.0) == 1);
  CHECK_THROWS_AS(build_histogram(std::vector<double>{}, two), Error);
  CHECK_THROWS_AS(equal_width_binning(0, 1, 1), Error);
}

TEST_CASE("categorical histogram matches a counting oracle") {
  std::vector<double> values{1, 2, 2, 9};
  Binning cats = make_binning(BinningKind::categorical, 0, values);
  Histogram h = build_histogram(values, cats);
  REQUIRE(cats.categories == std::vector<double>{1, 2, 9});
  CHECK(h.proportions == std::vector<double>{0.25, 0.5, 0.25});
  CHECK_THROWS_AS(cats.bin_of(3.0), Error);
}

TEST_CASE("log-width binning") {
  Binning log = log_width_binning(1.0, 10000.0, 4);
  REQUIRE(log.edges.size() == 5);
  CHECK(log.edges[1] == doctest::Approx(10.0));
  CHECK(log.edges[2] == doctest::Approx(100.0));
  CHECK(log.bin_of(5.0) == 0);
  CHECK(log.bin_of(500.0) == 2);

  Binning shifted = log_width_binning(0.0, 99.0, 2);  // shift 1 -> log(1)..log(100)
  CHECK(shifted.shift == 1.0);
  CHECK(shifted.edges[1] == doctest::Approx(9.0));
  for (std::size_t i = 1; i < shifted.edges.size(); ++i) {
    CHECK(shifted.edges[i] >= shifted.edges[i - 1]);
  }
}

TEST_CASE("property: equal-width counts agree with a scan-every-bin oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t bins = 2 + rng() % 30;
    std::vector<double> values(1 + rng() % 300);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (auto& v : values) v = (rng() % 4 == 0) ? std::round(u(rng)) : u(rng);
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    Histogram h = build_histogram(values, make_binning(BinningKind::equal_width, bins, values));
    auto expected = oracle::equal_width_counts(values, *lo, *hi, bins);
    for (std::size_t b = 0; b < bins; ++b) {
      CHECK(static_cast<std::int64_t>(h.counts[b]) == expected[b]);
    }
    CHECK(std::accumulate(h.proportions.begin(), h.proportions.end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("indicator examples") {
  Binning two = equal_width_binning(0, 1, 2);
  Histogram p = histogram_from_counts({2, 2}, two);
  Histogram q = histogram_from_counts({1, 3}, two);
  CHECK(indicator(p, p, IndicatorKind::intersection) == 1.0);
  CHECK(indicator(p, p, IndicatorKind::bhattacharyya) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(indicator(p, q, IndicatorKind::intersection) == doctest::Approx(0.75).epsilon(1e-15));
  // Hand evaluation: sqrt(0.125) + sqrt(0.375) = 0.96592582628906831
  CHECK(indicator(p, q, IndicatorKind::bhattacharyya) ==
        doctest::Approx(0.96592582628906831).epsilon(1e-14));
  CHECK(indicator(q, p, IndicatorKind::bhattacharyya) == indicator(p, q, IndicatorKind::bhattacharyya));

  Histogram left = histogram_from_counts({1, 0}, two);
  Histogram right = histogram_from_counts({0, 1}, two);
  CHECK(indicator(left, right, IndicatorKind::intersection) == 0.0);
  CHECK(indicator(left, right, IndicatorKind::bhattacharyya) == 0.0);

  Histogram other = histogram_from_counts({1, 1}, equal_width_binning(0, 2, 2));
  CHECK_THROWS_AS(indicator(p, other, IndicatorKind::intersection), Error);
}

TEST_CASE("property: indicators are bounded, symmetric and match the summation oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t bins = 2 + rng() % 9;
    const std::int64_t denom = 1 + static_cast<std::int64_t>(rng() % 500);
    auto draw = [&] {
      std::vector<std::int64_t> counts(bins, 0);
      for (std::int64_t i = 0; i < denom; ++i) ++counts[rng() % bins];
      return counts;
    };
    auto a = draw();
    auto b = draw();
    Binning binning = equal_width_binning(0, 1, bins);
    Histogram p = histogram_from_counts(std::vector<std::size_t>(a.begin(), a.end()), binning);
    Histogram q = histogram_from_counts(std::vector<std::size_t>(b.begin(), b.end()), binning);
    double inter = indicator(p, q, IndicatorKind::intersection);
    double bhat = indicator(p, q, IndicatorKind::bhattacharyya);
    CHECK(std::abs(inter - oracle::intersection_counts(a, b, denom)) <= 1e-12);
    CHECK(std::abs(bhat - oracle::bhattacharyya_counts(a, b, denom)) <= 1e-12);
    CHECK(inter >= 0.0);
    CHECK(inter <= 1.0);
    CHECK(bhat >= 0.0);
    CHECK(bhat <= 1.0);
    CHECK(inter == indicator(q, p, IndicatorKind::intersection));
    CHECK((std::abs(inter - 1.0) <= 1e-12) == (a == b));
  }
}
