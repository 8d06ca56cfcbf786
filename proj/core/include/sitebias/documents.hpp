#pragma once

#include "sitebias/engine.hpp"
#include "sitebias/grid.hpp"

#include <filesystem>
#include <string>

namespace sitebias {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::size_t kNullHistogramBins = 20;

/// Deterministic JSON summary: parameters, indicator, percentile, null summary
/// (deciles, sorted values, histogram), per-bin scores and per-class areas.
std::string result_json(const AnalysisOutput& output);

/// `bin,lower,upper,p_sample,p_population,score,class`
std::string bins_csv(const AnalysisOutput& output);

/// `band,column,value,bin,score,class`
std::string cells_csv(const AnalysisOutput& output);

/// GeoJSON FeatureCollection, one polygon per classified cell, with the area summary.
std::string map_geojson(const AnalysisOutput& output, const Grid& grid);

/// Writes result.json, bins.csv, cells.csv and map.json into `dir` (created if needed).
void write_analysis_dir(const AnalysisOutput& output, const Grid& grid,
                        const std::filesystem::path& dir);

}  // namespace sitebias
