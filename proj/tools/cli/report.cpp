#include "report.hpp"

#include "sitebias/error.hpp"
#include "sitebias/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace sitebias::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    switch (c) {
      case '<': r += "&lt;"; break;
      case '>': r += "&gt;"; break;
      case '&': r += "&amp;"; break;
      case '"': r += "&quot;"; break;
      default: r += c;
    }
  }
  return r;
}

struct Bar {
  std::string label;
  double height;
};

struct Marker {
  double position;  // fraction of the x axis, [0, 1]
  double value;
};

std::string bar_chart(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<Bar>& bars,
                      const std::string& x_min, const std::string& x_max,
                      const std::optional<Marker>& marker) {
  double top = 0.0;
  for (const auto& b : bars) top = std::max(top, b.height);
  if (top <= 0.0) top = 1.0;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << escape(title) << "</text>\n";
  const double slot = kPlotW / static_cast<double>(std::max<std::size_t>(bars.size(), 1));
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double h = kPlotH * bars[i].height / top;
    svg << "<rect class=\"bar\" x=\"" << fixed(kLeft + slot * i + 1) << "\" y=\""
        << fixed(kTop + kPlotH - h) << "\" width=\"" << fixed(std::max(slot - 2, 1.0))
        << "\" height=\"" << fixed(h) << "\" fill=\"#4a7ab5\"><title>" << escape(bars[i].label)
        << ": " << text::format_double(bars[i].height) << "</title></rect>\n";
  }
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + kPlotH << "\" x2=\"" << kLeft + kPlotW
      << "\" y2=\"" << kTop + kPlotH << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + kPlotH << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kLeft << "\" y=\"" << kTop + kPlotH + 18 << "\" font-size=\"12\">"
      << escape(x_min) << "</text>\n"
      << "<text x=\"" << kLeft + kPlotW << "\" y=\"" << kTop + kPlotH + 18
      << "\" text-anchor=\"end\" font-size=\"12\">" << escape(x_max) << "</text>\n"
      << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(x_label) << "</text>\n"
      << "<text x=\"" << kLeft - 8 << "\" y=\"" << kTop + 4
      << "\" text-anchor=\"end\" font-size=\"12\">" << text::format_double(top) << "</text>\n"
      << "<text x=\"16\" y=\"" << kTop + kPlotH / 2 << "\" transform=\"rotate(-90 16 "
      << kTop + kPlotH / 2 << ")\" text-anchor=\"middle\" font-size=\"12\">" << escape(y_label)
      << "</text>\n";
  if (marker) {
    const double x = kLeft + kPlotW * std::clamp(marker->position, 0.0, 1.0);
    svg << "<line id=\"marker\" data-value=\"" << text::format_double(marker->value) << "\" x1=\""
        << fixed(x) << "\" y1=\"" << kTop << "\" x2=\"" << fixed(x) << "\" y2=\"" << kTop + kPlotH
        << "\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << fixed(x + 4) << "\" y=\"" << kTop + 12
        << "\" font-size=\"12\" fill=\"#c0392b\">collection " << text::format_double(marker->value)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string bin_label(const json& bin, bool categorical) {
  if (categorical) return text::format_double(bin["lower"].get<double>());
  return "[" + text::format_double(bin["lower"].get<double>()) + ", " +
         text::format_double(bin["upper"].get<double>()) + ")";
}

std::vector<Bar> histogram_bars(const json& result, const char* which, bool categorical) {
  const auto& bins = result["bins"];
  const auto& props = result["histograms"][which]["proportions"];
  std::vector<Bar> bars;
  for (std::size_t i = 0; i < bins.size(); ++i) {
    bars.push_back({bin_label(bins[i], categorical), props[i].get<double>()});
  }
  return bars;
}

std::string histogram_csv(const json& result, const char* which) {
  const auto& bins = result["bins"];
  const auto& h = result["histograms"][which];
  std::ostringstream csv;
  csv << "bin,lower,upper,count,proportion\n";
  for (std::size_t i = 0; i < bins.size(); ++i) {
    csv << i << ',' << text::format_double(bins[i]["lower"].get<double>()) << ','
        << text::format_double(bins[i]["upper"].get<double>()) << ','
        << h["counts"][i].get<std::size_t>() << ','
        << text::format_double(h["proportions"][i].get<double>()) << '\n';
  }
  return csv.str();
}

}  // namespace

std::vector<fs::path> write_report(const fs::path& analysis_dir, ReportFormat format,
                                   const fs::path& out_dir) {
  const fs::path result_path = analysis_dir / "result.json";
  if (!fs::exists(result_path)) {
    throw Error(ErrorKind::not_found, "no result.json in " + analysis_dir.string());
  }
  json result;
  try {
    result = json::parse(text::read_file(result_path.string()));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, result_path.string() + ": " + e.what());
  }
  const bool categorical = result["parameters"]["binning"] == "categorical";
  const std::string variable = result["variable_id"].get<std::string>();
  const double indicator = result["indicator"].get<double>();
  const auto& null = result["null"];
  const auto& edges = null["histogram"]["edges"];
  const auto& null_counts = null["histogram"]["counts"];
  const auto& bins = result["bins"];

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::pair<fs::path, std::string>> files;
  if (format == ReportFormat::svg) {
    const std::string lo = bin_label(bins.front(), categorical);
    const std::string hi = bin_label(bins.back(), categorical);
    files.emplace_back(out_dir / "collection_histogram.svg",
                       bar_chart("Collection: " + variable, variable, "proportion",
                                 histogram_bars(result, "sample", categorical), lo, hi, {}));
    files.emplace_back(out_dir / "population_histogram.svg",
                       bar_chart("Population: " + variable, variable, "proportion",
                                 histogram_bars(result, "population", categorical), lo, hi, {}));
    std::vector<Bar> null_bars;
    for (std::size_t i = 0; i < null_counts.size(); ++i) {
      null_bars.push_back({"[" + text::format_double(edges[i].get<double>()) + ", " +
                               text::format_double(edges[i + 1].get<double>()) + ")",
                           null_counts[i].get<double>()});
    }
    const double x0 = edges.front().get<double>();
    const double x1 = edges.back().get<double>();
    files.emplace_back(
        out_dir / "null_distribution.svg",
        bar_chart("Null distribution (m = " + std::to_string(null["m"].get<std::size_t>()) +
                      ", n = " + std::to_string(null["n"].get<std::size_t>()) + ")",
                  result["parameters"]["indicator"].get<std::string>(), "replicates", null_bars,
                  text::format_double(x0), text::format_double(x1),
                  Marker{(indicator - x0) / (x1 - x0), indicator}));
  } else {
    std::ostringstream bins_csv;
    bins_csv << "bin,lower,upper,p_sample,p_population,score,class\n";
    for (std::size_t i = 0; i < bins.size(); ++i) {
      const auto& b = bins[i];
      bins_csv << i << ',' << text::format_double(b["lower"].get<double>()) << ','
               << text::format_double(b["upper"].get<double>()) << ','
               << text::format_double(b["p_sample"].get<double>()) << ','
               << text::format_double(b["p_population"].get<double>()) << ','
               << text::format_double(b["score"].get<double>()) << ','
               << b["class"].get<std::string>() << '\n';
    }
    files.emplace_back(out_dir / "bins.csv", bins_csv.str());
    files.emplace_back(out_dir / "collection_histogram.csv", histogram_csv(result, "sample"));
    files.emplace_back(out_dir / "population_histogram.csv", histogram_csv(result, "population"));
    std::ostringstream null_csv;
    null_csv << "lower,upper,count\n";
    for (std::size_t i = 0; i < null_counts.size(); ++i) {
      null_csv << text::format_double(edges[i].get<double>()) << ','
               << text::format_double(edges[i + 1].get<double>()) << ','
               << null_counts[i].get<std::size_t>() << '\n';
    }
    files.emplace_back(out_dir / "null_distribution.csv", null_csv.str());
    files.emplace_back(out_dir / "marker.csv",
                       "indicator,percentile_rank,biased\n" + text::format_double(indicator) + ',' +
                           text::format_double(result["percentile_rank"].get<double>()) + ',' +
                           (result["biased"].get<bool>() ? "true" : "false") + '\n');
  }

  std::vector<fs::path> written;
  for (const auto& [path, contents] : files) {
    text::write_file_atomic(path.string(), contents);
    written.push_back(path);
  }
  return written;
}

}  // namespace sitebias::cli
