#pragma once

#include "sitebias/grid.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sitebias {

struct Site {
  std::string site_id;
  double lat = 0.0;
  double lon = 0.0;
  std::optional<std::string> label;

  bool operator==(const Site&) const = default;
};

/// The sample under audit. Site ids are unique and there is at least one site.
struct Collection {
  std::string collection_id;
  std::vector<Site> sites;
};

/// Parses `site_id,lat,lon[,label]` with a header row. Row numbers in errors count
/// the header as row 1.
Collection parse_sites_csv(std::string_view text, std::string collection_id = "collection");

struct SiteAssignment {
  std::string site_id;
  CellId cell;
};

struct MappedCollection {
  std::string collection_id;
  std::vector<SiteAssignment> assignments;  // one per site, in input order
  std::size_t effective_sample_size = 0;
};

/// Assigns every site to its cell. Several sites in one cell stay separate draws.
MappedCollection map_collection(const Collection& collection, const Grid& grid);

}  // namespace sitebias
