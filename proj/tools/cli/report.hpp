#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sitebias::cli {

enum class ReportFormat { svg, csv };

/// Renders the collection histogram, population histogram and null
/// distribution of an analysis directory. Returns the files written.
std::vector<std::filesystem::path> write_report(const std::filesystem::path& analysis_dir,
                                                ReportFormat format,
                                                const std::filesystem::path& out_dir);

}  // namespace sitebias::cli
