#include "sitebias/error.hpp"
#include "sitebias/raster.hpp"
#include "sitebias/text.hpp"

#include "../support/synthetic.hpp"

#include <doctest.h>

#include <zlib.h>

#include <random>
#include <sstream>

using namespace sitebias;

namespace {

const char* kHeader2x2 =
    "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\nNODATA_value -9999\n";

Raster make(std::size_t cols, std::size_t rows, std::vector<double> values, double cellsize = 1.0) {
  Raster r;
  r.ncols = cols;
  r.nrows = rows;
  r.cellsize = cellsize;
  r.values = std::move(values);
  return r;
}

}  // namespace

TEST_CASE("parse a 2x2 grid") {
  Raster r = parse_ascii_grid(std::string(kHeader2x2) + "1 2\n3 4\n");
  CHECK(r.ncols == 2);
  CHECK(r.nrows == 2);
  CHECK(r.at(0, 0) == 1.0);
  CHECK(r.at(1, 1) == 4.0);
  CHECK(r.nodata_value == -9999.0);
}

TEST_CASE("value count mismatch names the counts and the line") {
  try {
    parse_ascii_grid(std::string(kHeader2x2) + "1 2 3\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("expected 4 values, got 3") != std::string::npos);
    CHECK(e.line() == 7);
  }
}

TEST_CASE("nodata sentinel and malformed input") {
  Raster r = parse_ascii_grid(std::string(kHeader2x2) + "1 -9999 3 4");
  CHECK(r.is_nodata(r.at(0, 1)));
  CHECK(r.nodata_count() == 1);

  CHECK_THROWS_AS(parse_ascii_grid(std::string(kHeader2x2) + "1 2 x 4"), ParseError);
  CHECK_THROWS_AS(parse_ascii_grid("ncols 2\nnrows 2\ncellsize 1\n1 2 3 4"), ParseError);
  CHECK_THROWS_AS(parse_ascii_grid("ncols two\nnrows 2\n"), ParseError);
  CHECK_THROWS_AS(parse_ascii_grid("ncols 2\nnrows 2\nxllcorner 179\nyllcorner 0\ncellsize 1\n1 2 3 4"),
                  ParseError);
  try {
    parse_ascii_grid(std::string(kHeader2x2) + "1 2\n3 oops\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 8);
  }
}

TEST_CASE("xllcenter / yllcenter headers are converted to corners") {
  Raster r = parse_ascii_grid(
      "NCOLS 1\nNROWS 1\nXLLCENTER 0.5\nYLLCENTER 0.5\nCELLSIZE 1\n7\n");
  CHECK(r.xllcorner == 0.0);
  CHECK(r.yllcorner == 0.0);
}

TEST_CASE("gzip-compressed grids are read transparently") {
  synthetic::TempDir dir;
  std::string text = std::string(kHeader2x2) + "1 2 3 4\n";
  auto path = (dir / "g.asc.gz").string();
  gzFile f = gzopen(path.c_str(), "wb");
  REQUIRE(f != nullptr);
  gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
  gzclose(f);
  Raster r = read_ascii_grid_file(path);
  CHECK(r.values == std::vector<double>{1, 2, 3, 4});
}

TEST_CASE("property: parse -> write -> parse is value-identical") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> value(-1e6, 1e6);
  for (int trial = 0; trial < 25; ++trial) {
    Raster r = make(1 + rng() % 9, 1 + rng() % 9, {}, 0.1 + (rng() % 7) * 0.37);
    r.xllcorner = -170.0 + (rng() % 100);
    r.yllcorner = -80.0 + (rng() % 100) * 0.5;
    r.values.resize(r.ncols * r.nrows);
    for (auto& v : r.values) v = (rng() % 5 == 0) ? r.nodata_value : value(rng);
    std::ostringstream out;
    write_ascii_grid(out, r);
    Raster back = parse_ascii_grid(out.str());
    std::ostringstream again;
    write_ascii_grid(again, back);
    CHECK(back.values == r.values);
    CHECK(back.xllcorner == r.xllcorner);
    CHECK(back.cellsize == r.cellsize);
    CHECK(again.str() == out.str());
  }
}

TEST_CASE("resample_nearest") {
  Raster r = make(2, 2, {1, 2, 3, 4});
  Raster same = resample_nearest(r, 1.0);
  CHECK(same.values == r.values);

  Raster fine = resample_nearest(r, 0.5);
  REQUIRE(fine.ncols == 4);
  REQUIRE(fine.nrows == 4);
  CHECK(fine.values == std::vector<double>{1, 1, 2, 2, 1, 1, 2, 2, 3, 3, 4, 4, 3, 3, 4, 4});
  CHECK(fine.top() == r.top());

  Raster constant = make(3, 2, std::vector<double>(6, 5.5), 2.0);
  for (double cs : {0.3, 0.7, 1.1, 4.0}) {
    Raster out = resample_nearest(constant, cs);
    for (double v : out.values) CHECK(v == 5.5);
  }
  CHECK_THROWS_AS(resample_nearest(r, 0.0), Error);
}

TEST_CASE("focal_fill") {
  Raster clean = make(2, 2, {1, 2, 3, 4});
  CHECK(focal_fill(clean, 1).values == clean.values);

  Raster ring = make(3, 3, {5, 5, 5, 5, -9999, 5, 5, 5, 5});
  CHECK(focal_fill(ring, 1).at(1, 1) == 5.0);

  // Window of the corner pixel holds {2, 4} and one more nodata -> mean 3 (hand oracle).
  Raster pair = make(2, 2, {-9999, 2, 4, -9999});
  Raster filled = focal_fill(pair, 1);
  CHECK(filled.at(0, 0) == 3.0);
  CHECK(filled.at(1, 1) == 3.0);

  CHECK_THROWS_AS(focal_fill(pair, 0), Error);
}

TEST_CASE("property: focal_fill keeps valid pixels and never adds nodata") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Raster r = make(1 + rng() % 12, 1 + rng() % 12, {});
    r.values.resize(r.ncols * r.nrows);
    for (auto& v : r.values) v = (rng() % 3 == 0) ? r.nodata_value : static_cast<double>(rng() % 100);
    int radius = 1 + static_cast<int>(rng() % 3);
    Raster out = focal_fill(r, radius);
    CHECK(out.nodata_count() <= r.nodata_count());
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      if (!r.is_nodata(r.values[i])) CHECK(out.values[i] == r.values[i]);
    }
  }
}

TEST_CASE("text helpers") {
  CHECK(text::parse_double("1e3") == 1000.0);
  CHECK_FALSE(text::parse_double("1e3x"));
  CHECK_FALSE(text::parse_double(""));
  CHECK(text::split_csv_record("a,\"b,c\",d") == std::vector<std::string>{"a", "b,c", "d"});
  CHECK(text::format_double(0.1) == "0.1");
  CHECK(text::maybe_gunzip("plain") == "plain");
  CHECK(text::is_identifier("tree_cover"));
  CHECK_FALSE(text::is_identifier("../x"));
}
