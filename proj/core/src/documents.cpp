#include "sitebias/documents.hpp"

#include "sitebias/error.hpp"
#include "sitebias/text.hpp"

#include <json.hpp>

#include <sstream>

namespace sitebias {
namespace {

using ojson = nlohmann::ordered_json;

ojson histogram_json(const Histogram& h) {
  return {{"support_count", h.support_count}, {"counts", h.counts}, {"proportions", h.proportions}};
}

ojson areas_json(const AreaSummary& areas) {
  ojson classes = ojson::object();
  for (auto cls : kAllClasses) {
    const auto& slot = areas[cls];
    classes[std::string(to_string(cls))] = {
        {"cell_count", slot.cell_count}, {"area_km2", slot.area_km2}, {"percent", slot.percent}};
  }
  return {{"cell_count", areas.cell_count},
          {"extent_area_km2", areas.extent_area_km2},
          {"classes", classes}};
}

ojson null_json(const NullDistribution& null) {
  std::vector<double> deciles;
  for (int i = 0; i <= 10; ++i) deciles.push_back(null.quantile(i / 10.0));
  std::vector<double> edges;
  std::vector<std::size_t> counts(kNullHistogramBins, 0);
  for (std::size_t i = 0; i <= kNullHistogramBins; ++i) {
    edges.push_back(static_cast<double>(i) / kNullHistogramBins);
  }
  Binning unit = equal_width_binning(0.0, 1.0, kNullHistogramBins);
  for (double v : null.values) ++counts[unit.bin_of(v)];
  return {{"m", null.replicate_count},
          {"n", null.sample_size},
          {"seed", null.seed},
          {"sampling", std::string(to_string(null.sampling))},
          {"mean", null.mean()},
          {"min", null.values.empty() ? 0.0 : null.values.front()},
          {"max", null.values.empty() ? 0.0 : null.values.back()},
          {"deciles", deciles},
          {"histogram", {{"edges", unit.edges}, {"counts", counts}}},
          {"values", null.values}};
}

ojson bins_json(const AnalysisOutput& out) {
  const auto& rep = out.representativeness;
  const auto& binning = rep.population_histogram.binning;
  ojson bins = ojson::array();
  for (std::size_t b = 0; b < binning.size(); ++b) {
    double score = out.representedness.scores[b];
    bins.push_back({{"index", b},
                    {"lower", binning.lower(b)},
                    {"upper", binning.upper(b)},
                    {"p_sample", rep.sample_histogram.proportions[b]},
                    {"p_population", rep.population_histogram.proportions[b]},
                    {"score", score},
                    {"class", std::string(to_string(classify(score, out.representedness.thresholds)))}});
  }
  return bins;
}

}  // namespace

std::string result_json(const AnalysisOutput& out) {
  const auto& p = out.params;
  const auto& rep = out.representativeness;
  ojson doc;
  doc["schema_version"] = kSchemaVersion;
  doc["collection_id"] = p.collection_id;
  doc["variable_id"] = p.variable_id;
  doc["extent"] = {{"spec", describe(p.extent)},
                   {"cell_count", out.extent.size()},
                   {"population_cell_count", out.population.size()},
                   {"coverage_gap_cell_count", rep.coverage_gap_cell_count}};
  ojson params = {{"binning", std::string(to_string(*p.binning))},
                  {"bins", rep.population_histogram.binning.size()},
                  {"indicator", std::string(to_string(p.indicator))},
                  {"m", p.replicates},
                  {"effective_sample_size", rep.null.sample_size},
                  {"seed", p.seed},
                  {"sampling", std::string(to_string(p.sampling))},
                  {"dedupe", p.dedupe},
                  {"thresholds", {{"slight", p.thresholds.slight}, {"strong", p.thresholds.strong}}}};
  if (*p.binning == BinningKind::log_width) {
    params["log_shift"] = rep.population_histogram.binning.shift;
  }
  doc["parameters"] = params;
  doc["sites"] = {{"total", out.site_count},
                  {"usable", rep.usable_site_count},
                  {"off_extent", rep.off_extent_site_count},
                  {"missing_data", rep.missing_data_site_count}};
  doc["indicator"] = rep.indicator;
  doc["percentile_rank"] = rep.percentile_rank;
  doc["biased"] = rep.biased;
  doc["variational_coverage"] = rep.variational_coverage;
  doc["null"] = null_json(rep.null);
  doc["histograms"] = {{"sample", histogram_json(rep.sample_histogram)},
                       {"population", histogram_json(rep.population_histogram)}};
  doc["bins"] = bins_json(out);
  doc["areas"] = areas_json(out.areas);
  return doc.dump(2) + "\n";
}

std::string bins_csv(const AnalysisOutput& out) {
  const auto& rep = out.representativeness;
  const auto& binning = rep.population_histogram.binning;
  std::ostringstream csv;
  csv << "bin,lower,upper,p_sample,p_population,score,class\n";
  for (std::size_t b = 0; b < binning.size(); ++b) {
    double score = out.representedness.scores[b];
    csv << b << ',' << text::format_double(binning.lower(b)) << ','
        << text::format_double(binning.upper(b)) << ','
        << text::format_double(rep.sample_histogram.proportions[b]) << ','
        << text::format_double(rep.population_histogram.proportions[b]) << ','
        << text::format_double(score) << ','
        << to_string(classify(score, out.representedness.thresholds)) << '\n';
  }
  return csv.str();
}

std::string cells_csv(const AnalysisOutput& out) {
  std::ostringstream csv;
  csv << "band,column,value,bin,score,class\n";
  for (const auto& c : out.representedness.cells) {
    csv << c.cell.band << ',' << c.cell.column << ',' << text::format_double(c.value) << ','
        << c.bin << ',' << text::format_double(c.score) << ',' << to_string(c.cls) << '\n';
  }
  return csv.str();
}

std::string map_geojson(const AnalysisOutput& out, const Grid& grid) {
  ojson features = ojson::array();
  for (const auto& c : out.representedness.cells) {
    CellPolygon polygon = grid.cell_polygon(c.cell);
    ojson ring = ojson::array();
    for (const auto& v : polygon.ring) ring.push_back({v.lon, v.lat});
    features.push_back(
        {{"type", "Feature"},
         {"properties",
          {{"band", c.cell.band},
           {"column", c.cell.column},
           {"class", std::string(to_string(c.cls))},
           {"score", c.score},
           {"value", c.value},
           {"area_km2", grid.cell_area_km2(c.cell)}}},
         {"geometry", {{"type", "Polygon"}, {"coordinates", ojson::array({ring})}}}});
  }
  ojson doc;
  doc["type"] = "FeatureCollection";
  doc["schema_version"] = kSchemaVersion;
  doc["variable_id"] = out.params.variable_id;
  doc["collection_id"] = out.params.collection_id;
  doc["areas"] = areas_json(out.areas);
  doc["features"] = std::move(features);
  return doc.dump() + "\n";
}

void write_analysis_dir(const AnalysisOutput& output, const Grid& grid,
                        const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create " + dir.string() + ": " + ec.message());
  text::write_file_atomic((dir / "result.json").string(), result_json(output));
  text::write_file_atomic((dir / "bins.csv").string(), bins_csv(output));
  text::write_file_atomic((dir / "cells.csv").string(), cells_csv(output));
  text::write_file_atomic((dir / "map.json").string(), map_geojson(output, grid));
}

}  // namespace sitebias
