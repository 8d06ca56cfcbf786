#pragma once

#include "sitebias/catalog.hpp"
#include "sitebias/engine.hpp"
#include "sitebias/grid.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace sitebias::service {

struct ServiceConfig {
  std::filesystem::path data_dir = "sitebias-data";
  /// Grid for a new catalog; an existing catalog keeps its own.
  std::optional<GridConfig> grid;
  /// Concurrent analyses. 0 starts no workers: records stay pending until a
  /// later Service over the same data directory picks them up.
  unsigned workers = 2;
  /// Null-distribution threads per analysis (0 = all cores).
  unsigned analysis_threads = 0;
};

enum class AnalysisStatus { pending, running, done, failed };

std::string_view to_string(AnalysisStatus status) noexcept;

/// Translates an analysis request document into engine parameters. `seed_given`
/// reports whether the request carried a seed. Throws Error(domain/parse).
AnalysisParams parse_analysis_request(std::string_view body, bool& seed_given);
/// Canonical request document for `params` (the echo stored with a record).
std::string analysis_request_json(const AnalysisParams& params);

/// File-backed store plus a worker pool. Methods return JSON (or CSV) documents
/// and throw sitebias::Error; the HTTP layer maps error kinds onto status codes.
///
///   <data>/catalog/                    layer catalog
///   <data>/collections/<id>.csv        uploaded site lists
///   <data>/analyses/<id>/record.json   request, status, timestamps
///   <data>/analyses/<id>/result.json   plus map.json, bins.csv, cells.csv once done
class Service {
public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  std::string upload_collection(std::string_view csv, std::optional<std::string> collection_id);
  std::string list_collections() const;
  std::string upload_raster(std::string_view asc, const std::string& variable_id,
                            const std::string& kind, const std::string& stat,
                            const std::string& units);
  std::string list_variables() const;

  std::string create_analysis(std::string_view request_json);
  std::string get_analysis(const std::string& analysis_id) const;
  std::string list_analyses() const;
  std::string get_map(const std::string& analysis_id) const;
  std::string get_report_csv(const std::string& analysis_id) const;

  /// Blocks until the analysis is done or failed, or the timeout passes.
  AnalysisStatus wait(const std::string& analysis_id, std::chrono::milliseconds timeout) const;

  const Grid& grid() const noexcept { return grid_; }
  const Catalog& catalog() const noexcept { return catalog_; }

private:
  struct Record {
    std::string analysis_id;
    AnalysisParams params;
    std::string request_json;
    AnalysisStatus status = AnalysisStatus::pending;
    std::string created_at;
    std::string error;
    std::string result_json;  // set once done
  };

  std::filesystem::path analysis_dir(const std::string& id) const;
  std::filesystem::path collection_path(const std::string& id) const;
  std::shared_ptr<const Record> find(const std::string& id) const;
  void publish(std::shared_ptr<const Record> record);
  void persist(const Record& record) const;
  std::string record_json(const Record& record) const;
  void load_records();
  void enqueue(const std::string& id);
  void worker_loop(std::stop_token stop);
  void run_one(const std::string& id);

  ServiceConfig config_;
  Catalog catalog_;
  Grid grid_;

  mutable std::shared_mutex records_mutex_;
  std::map<std::string, std::shared_ptr<const Record>> records_;
  mutable std::condition_variable_any record_changed_;

  std::mutex upload_mutex_;

  std::mutex queue_mutex_;
  std::condition_variable_any queue_cv_;
  std::deque<std::string> queue_;
  std::vector<std::jthread> workers_;
};

}  // namespace sitebias::service
