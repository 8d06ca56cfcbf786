#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small text helpers shared by the parsers and writers.
namespace sitebias::text {

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

/// Strict full-token parse; nullopt on trailing garbage, empty input or overflow.
std::optional<double> parse_double(std::string_view token);
std::optional<long long> parse_int(std::string_view token);

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

/// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv_record(std::string_view line);

/// Splits text into lines, dropping a trailing '\r' from each.
std::vector<std::string_view> split_lines(std::string_view text);

/// If `bytes` starts with the gzip magic number, inflates it; otherwise returns it unchanged.
std::string maybe_gunzip(std::string bytes);

std::string read_file(const std::string& path);
/// Writes through a temporary sibling and renames, so readers never see partial files.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace sitebias::text

namespace sitebias::text {

/// Ids used as directory names: 1-64 chars of [A-Za-z0-9_-].
bool is_identifier(std::string_view id);
/// Throws Error(domain) naming `what` when `id` is not an identifier.
void require_identifier(std::string_view id, std::string_view what);

}  // namespace sitebias::text
