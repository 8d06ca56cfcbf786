#include "sitebias/collection.hpp"

#include "sitebias/error.hpp"
#include "sitebias/text.hpp"

#include <unordered_set>

namespace sitebias {

Collection parse_sites_csv(std::string_view csv, std::string collection_id) {
  auto lines = text::split_lines(csv);
  if (lines.empty()) throw ParseError("row", 1, "missing header site_id,lat,lon[,label]");

  auto header = text::split_csv_record(lines[0]);
  for (auto& h : header) h = text::to_lower(text::trim(h));
  if (!header.empty() && header[0].starts_with("\xEF\xBB\xBF")) header[0].erase(0, 3);
  if (header.size() < 3 || header.size() > 4 || header[0] != "site_id" || header[1] != "lat" ||
      header[2] != "lon" || (header.size() == 4 && header[3] != "label")) {
    throw ParseError("row", 1, "missing columns: header must be site_id,lat,lon[,label]");
  }
  const bool has_label = header.size() == 4;

  Collection collection{std::move(collection_id), {}};
  std::unordered_set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t row = i + 1;
    if (text::trim(lines[i]).empty()) continue;
    auto fields = text::split_csv_record(lines[i]);
    if (fields.size() < 3 || fields.size() > header.size()) {
      throw ParseError("row", row, "missing columns: expected " + std::to_string(header.size()) +
                                       " fields, got " + std::to_string(fields.size()));
    }
    Site site;
    site.site_id = std::string(text::trim(fields[0]));
    if (site.site_id.empty()) throw ParseError("row", row, "empty site_id");

    auto lat = text::parse_double(fields[1]);
    auto lon = text::parse_double(fields[2]);
    if (!lat) throw ParseError("row", row, "non-numeric lat '" + fields[1] + "'");
    if (!lon) throw ParseError("row", row, "non-numeric lon '" + fields[2] + "'");
    if (!(*lat >= -90.0 && *lat <= 90.0)) throw ParseError("row", row, "lat out of range");
    if (!(*lon >= -180.0 && *lon < 180.0)) throw ParseError("row", row, "lon out of range");
    site.lat = *lat;
    site.lon = *lon;
    if (has_label && fields.size() == 4) site.label = fields[3];

    if (!seen.insert(site.site_id).second) {
      throw ParseError("row", row, "duplicate site_id '" + site.site_id + "'");
    }
    collection.sites.push_back(std::move(site));
  }
  if (collection.sites.empty()) {
    throw ParseError("row", lines.size(), "collection has no sites");
  }
  return collection;
}

MappedCollection map_collection(const Collection& collection, const Grid& grid) {
  MappedCollection mapped;
  mapped.collection_id = collection.collection_id;
  mapped.assignments.reserve(collection.sites.size());
  for (const auto& site : collection.sites) {
    mapped.assignments.push_back({site.site_id, grid.point_to_cell(site.lat, site.lon)});
  }
  mapped.effective_sample_size = collection.sites.size();
  return mapped;
}

}  // namespace sitebias
