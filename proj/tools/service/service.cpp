#include "service.hpp"

#include "sitebias/documents.hpp"
#include "sitebias/error.hpp"
#include "sitebias/raster.hpp"
#include "sitebias/text.hpp"

#include <json.hpp>

#include <ctime>
#include <random>

namespace sitebias::service {
namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::uint64_t kSeedLimit = std::uint64_t{1} << 53;

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string random_hex(std::size_t digits) {
  static thread_local std::random_device rd;
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s;
  while (s.size() < digits) {
    auto word = rd();
    for (int i = 0; i < 8 && s.size() < digits; ++i, word >>= 4) s += kHex[word & 0xf];
  }
  return s;
}

std::uint64_t generate_seed() {
  std::random_device rd;
  const std::uint64_t hi = rd(), lo = rd();
  return ((hi << 32) | lo) % kSeedLimit;
}

std::size_t count_field(const ojson& v, const char* name, std::size_t min) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() < min) {
    throw Error(ErrorKind::domain,
                std::string(name) + " must be an integer >= " + std::to_string(min));
  }
  return v.get<std::size_t>();
}

std::string string_field(const ojson& v, const char* name) {
  if (!v.is_string()) throw Error(ErrorKind::domain, std::string(name) + " must be a string");
  return v.get<std::string>();
}

double number_field(const ojson& v, const char* name) {
  if (!v.is_number()) throw Error(ErrorKind::domain, std::string(name) + " must be a number");
  return v.get<double>();
}

ojson parse_json(std::string_view body, const std::string& what) {
  try {
    return ojson::parse(body);
  } catch (const ojson::parse_error& e) {
    throw Error(ErrorKind::parse, what + " is not valid JSON: " + e.what());
  }
}

AnalysisStatus parse_status(std::string_view s) {
  for (auto st : {AnalysisStatus::pending, AnalysisStatus::running, AnalysisStatus::done,
                  AnalysisStatus::failed}) {
    if (to_string(st) == s) return st;
  }
  throw Error(ErrorKind::parse, "unknown analysis status '" + std::string(s) + "'");
}

}  // namespace

std::string_view to_string(AnalysisStatus status) noexcept {
  switch (status) {
    case AnalysisStatus::pending: return "pending";
    case AnalysisStatus::running: return "running";
    case AnalysisStatus::done: return "done";
    case AnalysisStatus::failed: return "failed";
  }
  return "unknown";
}

AnalysisParams parse_analysis_request(std::string_view body, bool& seed_given) {
  const ojson doc = parse_json(body, "analysis request");
  if (!doc.is_object()) throw Error(ErrorKind::domain, "analysis request must be a JSON object");
  AnalysisParams p;
  seed_given = false;
  bool have_collection = false, have_variable = false;
  for (const auto& [key, v] : doc.items()) {
    if (key == "collection_id") {
      p.collection_id = string_field(v, "collection_id");
      have_collection = true;
    } else if (key == "variable_id") {
      p.variable_id = string_field(v, "variable_id");
      have_variable = true;
    } else if (key == "extent") {
      p.extent = parse_extent_spec(string_field(v, "extent"));
    } else if (key == "binning") {
      if (!v.is_null()) p.binning = parse_binning_kind(string_field(v, "binning"));
    } else if (key == "bins") {
      p.bins = count_field(v, "bins", 1);
    } else if (key == "indicator") {
      p.indicator = parse_indicator_kind(string_field(v, "indicator"));
    } else if (key == "m") {
      p.replicates = count_field(v, "m", 1);
    } else if (key == "effective_sample_size") {
      if (!v.is_null()) p.effective_sample_size = count_field(v, "effective_sample_size", 1);
    } else if (key == "seed") {
      if (!v.is_null()) {
        if (!v.is_number_unsigned()) {
          throw Error(ErrorKind::domain, "seed must be a non-negative integer");
        }
        p.seed = v.get<std::uint64_t>();
        seed_given = true;
      }
    } else if (key == "sampling") {
      p.sampling = parse_sampling_mode(string_field(v, "sampling"));
    } else if (key == "dedupe") {
      if (!v.is_boolean()) throw Error(ErrorKind::domain, "dedupe must be a boolean");
      p.dedupe = v.get<bool>();
    } else if (key == "thresholds") {
      if (!v.is_object()) throw Error(ErrorKind::domain, "thresholds must be an object");
      for (const auto& [tk, tv] : v.items()) {
        if (tk == "slight") p.thresholds.slight = number_field(tv, "thresholds.slight");
        else if (tk == "strong") p.thresholds.strong = number_field(tv, "thresholds.strong");
        else throw Error(ErrorKind::domain, "unknown thresholds field '" + tk + "'");
      }
    } else {
      throw Error(ErrorKind::domain, "unknown request field '" + key + "'");
    }
  }
  if (!have_collection) throw Error(ErrorKind::domain, "collection_id is required");
  if (!have_variable) throw Error(ErrorKind::domain, "variable_id is required");
  p.validate();
  return p;
}

std::string analysis_request_json(const AnalysisParams& p) {
  ojson doc{{"collection_id", p.collection_id},
            {"variable_id", p.variable_id},
            {"extent", describe(p.extent)}};
  doc["binning"] = p.binning ? ojson(std::string(to_string(*p.binning))) : ojson(nullptr);
  doc["bins"] = p.bins;
  doc["indicator"] = std::string(to_string(p.indicator));
  doc["m"] = p.replicates;
  doc["effective_sample_size"] =
      p.effective_sample_size ? ojson(*p.effective_sample_size) : ojson(nullptr);
  doc["seed"] = p.seed;
  doc["sampling"] = std::string(to_string(p.sampling));
  doc["dedupe"] = p.dedupe;
  doc["thresholds"] = {{"slight", p.thresholds.slight}, {"strong", p.thresholds.strong}};
  return doc.dump();
}

Service::Service(ServiceConfig config)
    : config_(std::move(config)),
      catalog_(Catalog::open_or_create(config_.data_dir / "catalog", config_.grid)),
      grid_(Grid::build(catalog_.grid_config())) {
  fs::create_directories(config_.data_dir / "collections");
  fs::create_directories(config_.data_dir / "analyses");
  load_records();
  for (unsigned i = 0; i < config_.workers; ++i) {
    workers_.emplace_back([this](std::stop_token st) { worker_loop(st); });
  }
}

Service::~Service() {
  for (auto& w : workers_) w.request_stop();
  queue_cv_.notify_all();
  workers_.clear();
}

fs::path Service::analysis_dir(const std::string& id) const {
  return config_.data_dir / "analyses" / id;
}

fs::path Service::collection_path(const std::string& id) const {
  return config_.data_dir / "collections" / (id + ".csv");
}

std::string Service::upload_collection(std::string_view csv,
                                       std::optional<std::string> collection_id) {
  std::string id = collection_id ? *collection_id : "c" + random_hex(12);
  text::require_identifier(id, "collection_id");
  Collection collection = parse_sites_csv(csv, id);
  std::lock_guard lock(upload_mutex_);
  const fs::path path = collection_path(id);
  if (fs::exists(path)) {
    throw Error(ErrorKind::conflict, "collection '" + id + "' already exists");
  }
  text::write_file_atomic(path.string(), csv);
  return ojson{{"schema_version", kSchemaVersion},
               {"collection_id", id},
               {"site_count", collection.sites.size()}}
      .dump();
}

std::string Service::list_collections() const {
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(config_.data_dir / "collections")) {
    if (entry.path().extension() == ".csv") ids.push_back(entry.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ojson{{"schema_version", kSchemaVersion}, {"collections", ids}}.dump();
}

std::string Service::upload_raster(std::string_view asc, const std::string& variable_id,
                                   const std::string& kind, const std::string& stat,
                                   const std::string& units) {
  text::require_identifier(variable_id, "variable_id");
  ZonalOptions options;
  if (!stat.empty()) options.stat = parse_zonal_stat(stat);
  options.variable_id = variable_id;
  options.units = units;
  options.provenance = "upload";
  const VariableKind variable_kind = parse_variable_kind(kind);
  if (catalog_.contains(variable_id)) {
    throw Error(ErrorKind::conflict, "variable '" + variable_id + "' is already registered");
  }
  const std::string text = text::maybe_gunzip(std::string(asc));
  Raster raster = parse_ascii_grid(text);
  VariableLayer layer = zonal_aggregate(raster, grid_, variable_kind, options);
  {
    std::lock_guard lock(upload_mutex_);
    catalog_.register_layer(layer);
  }
  return ojson{{"schema_version", kSchemaVersion},
               {"variable_id", variable_id},
               {"kind", std::string(to_string(variable_kind))},
               {"cell_count", layer.size()}}
      .dump();
}

std::string Service::list_variables() const {
  ojson list = ojson::array();
  for (const auto& v : catalog_.list_variables()) {
    list.push_back({{"variable_id", v.variable_id},
                    {"kind", std::string(to_string(v.kind))},
                    {"units", v.units},
                    {"cell_count", v.cell_count}});
  }
  return ojson{{"schema_version", kSchemaVersion}, {"variables", list}}.dump();
}

std::string Service::create_analysis(std::string_view request_json) {
  bool seed_given = false;
  AnalysisParams params = parse_analysis_request(request_json, seed_given);
  if (!seed_given) params.seed = generate_seed();

  if (!fs::exists(collection_path(params.collection_id))) {
    throw Error(ErrorKind::not_found, "unknown collection '" + params.collection_id + "'");
  }
  const LayerSummary layer = catalog_.describe(params.variable_id);
  if (const auto* mask = std::get_if<MaskSpec>(&params.extent)) {
    if (catalog_.describe(mask->variable_id).kind != VariableKind::categorical) {
      throw Error(ErrorKind::contract, "mask variable '" + mask->variable_id +
                                           "' is not categorical");
    }
  }
  resolve_binning(params, layer.kind);

  auto record = std::make_shared<Record>();
  record->params = params;
  record->request_json = analysis_request_json(params);
  record->created_at = now_utc();
  for (;;) {
    record->analysis_id = "a" + random_hex(16);
    std::error_code ec;
    if (fs::create_directory(analysis_dir(record->analysis_id), ec)) break;
    if (ec) throw Error(ErrorKind::io, "cannot create analysis directory: " + ec.message());
  }
  persist(*record);
  const std::string id = record->analysis_id;
  std::string body = record_json(*record);
  publish(std::move(record));
  enqueue(id);
  return body;
}

std::string Service::get_analysis(const std::string& analysis_id) const {
  return record_json(*find(analysis_id));
}

std::string Service::list_analyses() const {
  ojson list = ojson::array();
  std::shared_lock lock(records_mutex_);
  for (const auto& [id, r] : records_) {
    list.push_back({{"analysis_id", id},
                    {"status", std::string(to_string(r->status))},
                    {"created_at", r->created_at}});
  }
  return ojson{{"schema_version", kSchemaVersion}, {"analyses", list}}.dump();
}

std::string Service::get_map(const std::string& analysis_id) const {
  auto record = find(analysis_id);
  if (record->status != AnalysisStatus::done) {
    throw Error(ErrorKind::conflict, "analysis '" + analysis_id + "' is " +
                                         std::string(to_string(record->status)));
  }
  return text::read_file((analysis_dir(analysis_id) / "map.json").string());
}

std::string Service::get_report_csv(const std::string& analysis_id) const {
  auto record = find(analysis_id);
  if (record->status != AnalysisStatus::done) {
    throw Error(ErrorKind::conflict, "analysis '" + analysis_id + "' is " +
                                         std::string(to_string(record->status)));
  }
  return text::read_file((analysis_dir(analysis_id) / "bins.csv").string());
}

AnalysisStatus Service::wait(const std::string& analysis_id,
                             std::chrono::milliseconds timeout) const {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  std::shared_lock lock(records_mutex_);
  for (;;) {
    auto it = records_.find(analysis_id);
    if (it == records_.end()) {
      throw Error(ErrorKind::not_found, "unknown analysis '" + analysis_id + "'");
    }
    const auto status = it->second->status;
    if (status == AnalysisStatus::done || status == AnalysisStatus::failed) return status;
    if (record_changed_.wait_until(lock, deadline) == std::cv_status::timeout) {
      return records_.at(analysis_id)->status;
    }
  }
}

std::shared_ptr<const Service::Record> Service::find(const std::string& id) const {
  std::shared_lock lock(records_mutex_);
  auto it = records_.find(id);
  if (it == records_.end()) throw Error(ErrorKind::not_found, "unknown analysis '" + id + "'");
  return it->second;
}

void Service::publish(std::shared_ptr<const Record> record) {
  {
    std::unique_lock lock(records_mutex_);
    records_[record->analysis_id] = std::move(record);
  }
  record_changed_.notify_all();
}

void Service::persist(const Record& r) const {
  ojson doc{{"schema_version", kSchemaVersion},
            {"analysis_id", r.analysis_id},
            {"status", std::string(to_string(r.status))},
            {"created_at", r.created_at},
            {"request", ojson::parse(r.request_json)}};
  if (r.status == AnalysisStatus::failed) doc["error"] = r.error;
  text::write_file_atomic((analysis_dir(r.analysis_id) / "record.json").string(),
                          doc.dump(2) + "\n");
}

std::string Service::record_json(const Record& r) const {
  ojson doc{{"schema_version", kSchemaVersion},
            {"analysis_id", r.analysis_id},
            {"status", std::string(to_string(r.status))},
            {"created_at", r.created_at},
            {"request", ojson::parse(r.request_json)}};
  if (r.status == AnalysisStatus::failed) doc["error"] = r.error;
  if (r.status == AnalysisStatus::done) doc["result"] = ojson::parse(r.result_json);
  return doc.dump();
}

void Service::load_records() {
  std::vector<std::string> requeue;
  for (const auto& entry : fs::directory_iterator(config_.data_dir / "analyses")) {
    const fs::path record_path = entry.path() / "record.json";
    if (!fs::exists(record_path)) continue;
    const ojson doc = parse_json(text::read_file(record_path.string()), record_path.string());
    auto r = std::make_shared<Record>();
    r->analysis_id = doc.at("analysis_id").get<std::string>();
    r->created_at = doc.at("created_at").get<std::string>();
    r->request_json = doc.at("request").dump();
    bool seed_given = false;
    r->params = parse_analysis_request(r->request_json, seed_given);
    r->status = parse_status(doc.at("status").get<std::string>());
    if (doc.contains("error")) r->error = doc["error"].get<std::string>();
    if (r->status == AnalysisStatus::done) {
      const fs::path result = entry.path() / "result.json";
      if (fs::exists(result)) {
        r->result_json = text::read_file(result.string());
      } else {
        r->status = AnalysisStatus::pending;
      }
    }
    if (r->status == AnalysisStatus::pending || r->status == AnalysisStatus::running) {
      r->status = AnalysisStatus::pending;
      requeue.push_back(r->analysis_id);
    }
    records_[r->analysis_id] = std::move(r);
  }
  std::sort(requeue.begin(), requeue.end(), [this](const auto& a, const auto& b) {
    return records_.at(a)->created_at < records_.at(b)->created_at;
  });
  for (const auto& id : requeue) queue_.push_back(id);
}

void Service::enqueue(const std::string& id) {
  {
    std::lock_guard lock(queue_mutex_);
    queue_.push_back(id);
  }
  queue_cv_.notify_one();
}

void Service::worker_loop(std::stop_token stop) {
  for (;;) {
    std::string id;
    {
      std::unique_lock lock(queue_mutex_);
      if (!queue_cv_.wait(lock, stop, [this] { return !queue_.empty(); })) return;
      id = std::move(queue_.front());
      queue_.pop_front();
    }
    run_one(id);
  }
}

void Service::run_one(const std::string& id) {
  auto current = find(id);
  auto running = std::make_shared<Record>(*current);
  running->status = AnalysisStatus::running;
  persist(*running);
  publish(running);

  auto finished = std::make_shared<Record>(*running);
  try {
    const std::string csv = text::read_file(collection_path(finished->params.collection_id).string());
    Collection collection = parse_sites_csv(csv, finished->params.collection_id);
    AnalysisOutput output =
        run_analysis(grid_, catalog_, collection, finished->params, config_.analysis_threads);
    write_analysis_dir(output, grid_, analysis_dir(id));
    finished->result_json = result_json(output);
    finished->status = AnalysisStatus::done;
  } catch (const std::exception& e) {
    finished->status = AnalysisStatus::failed;
    finished->error = e.what();
  }
  persist(*finished);
  publish(std::move(finished));
}

}  // namespace sitebias::service
