#include "cli.hpp"

#include "report.hpp"

#include "sitebias/documents.hpp"
#include "sitebias/engine.hpp"
#include "sitebias/error.hpp"
#include "sitebias/raster.hpp"
#include "sitebias/text.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>

namespace sitebias::cli {
namespace {

using ojson = nlohmann::ordered_json;

struct IngestFlags {
  std::string raster;
  std::string variable;
  std::string kind;
  std::string stat;
  std::string units;
  double resample = 0.0;
  int fill = 0;
  double cell_area = 0.0;
};

struct AnalyzeFlags {
  std::string collection;
  std::string collection_id;
  std::string variable;
  std::string mask;
  std::string bbox;
  std::size_t bins = kDefaultBinCount;
  std::size_t samples = kDefaultReplicates;
  std::uint64_t seed = kDefaultSeed;
  std::string indicator = "intersection";
  std::string binning;
  std::size_t sample_size = 0;
  bool with_replacement = false;
  bool dedupe = false;
  unsigned threads = 0;
  std::string out;
};

struct ReportFlags {
  std::string analysis;
  std::string format;
  std::string out;
};

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::conflict ? kExitUsage : kExitFailure;
}

int cmd_ingest(const std::string& catalog_root, const IngestFlags& f, bool json,
               std::ostream& out) {
  std::optional<GridConfig> grid_config;
  if (f.cell_area > 0.0) {
    GridConfig config;
    config.target_cell_area_km2 = f.cell_area;
    grid_config = config;
  }
  Catalog catalog = Catalog::open_or_create(catalog_root, grid_config);
  text::require_identifier(f.variable, "variable id");
  if (catalog.contains(f.variable)) {
    throw Error(ErrorKind::conflict, "variable '" + f.variable + "' is already registered");
  }
  const VariableKind kind = parse_variable_kind(f.kind);
  ZonalOptions options;
  if (!f.stat.empty()) options.stat = parse_zonal_stat(f.stat);
  options.variable_id = f.variable;
  options.units = f.units;
  options.provenance = std::filesystem::path(f.raster).filename().string();

  Raster raster = read_ascii_grid_file(f.raster);
  if (f.resample > 0.0) raster = resample_nearest(raster, f.resample);
  if (f.fill > 0) raster = focal_fill(raster, f.fill);
  const Grid grid = Grid::build(catalog.grid_config());
  VariableLayer layer = zonal_aggregate(raster, grid, kind, options);
  catalog.register_layer(layer);

  if (json) {
    ojson doc{{"schema_version", kSchemaVersion},
              {"command", "ingest"},
              {"variable_id", layer.id()},
              {"kind", std::string(to_string(layer.kind()))},
              {"cell_count", layer.size()},
              {"catalog", catalog.root().string()}};
    out << doc.dump() << '\n';
  } else {
    out << "registered " << layer.id() << ": " << layer.size() << " cells\n";
  }
  return kExitOk;
}

AnalysisParams analyze_params(const AnalyzeFlags& f) {
  AnalysisParams p;
  p.variable_id = f.variable;
  if (!f.mask.empty()) p.extent = parse_mask_arg(f.mask);
  if (!f.bbox.empty()) p.extent = parse_bbox_arg(f.bbox);
  if (!f.binning.empty()) p.binning = parse_binning_kind(f.binning);
  p.bins = f.bins;
  p.indicator = parse_indicator_kind(f.indicator);
  p.replicates = f.samples;
  if (f.sample_size > 0) p.effective_sample_size = f.sample_size;
  p.seed = f.seed;
  p.sampling = f.with_replacement ? SamplingMode::with_replacement
                                  : SamplingMode::without_replacement;
  p.dedupe = f.dedupe;
  p.validate();
  return p;
}

int cmd_analyze(const std::string& catalog_root, const AnalyzeFlags& f, bool json,
                std::ostream& out, std::ostream& err) {
  AnalysisParams params;
  try {
    params = analyze_params(f);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const Catalog catalog = Catalog::open(catalog_root);
  const Grid grid = Grid::build(catalog.grid_config());
  std::string collection_id = f.collection_id;
  if (collection_id.empty()) collection_id = std::filesystem::path(f.collection).stem().string();
  Collection collection = parse_sites_csv(text::read_file(f.collection), collection_id);

  AnalysisOutput output = run_analysis(grid, catalog, collection, params, f.threads);
  write_analysis_dir(output, grid, f.out);

  const auto& rep = output.representativeness;
  if (json) {
    ojson doc{{"schema_version", kSchemaVersion},
              {"command", "analyze"},
              {"out", f.out},
              {"collection_id", output.params.collection_id},
              {"variable_id", output.params.variable_id},
              {"extent", describe(output.params.extent)},
              {"indicator", rep.indicator},
              {"percentile_rank", rep.percentile_rank},
              {"biased", rep.biased},
              {"null_mean", rep.null.mean()},
              {"m", rep.null.replicate_count},
              {"n", rep.null.sample_size},
              {"seed", output.params.seed}};
    out << doc.dump() << '\n';
  } else {
    out << "indicator: " << text::format_double(rep.indicator) << '\n'
        << "null mean: " << text::format_double(rep.null.mean()) << '\n'
        << "percentile: " << text::format_double(rep.percentile_rank) << '\n'
        << "biased: " << (rep.biased ? "yes" : "no") << '\n'
        << "wrote " << f.out << '\n';
  }
  return kExitOk;
}

int cmd_report(const ReportFlags& f, bool json, std::ostream& out) {
  const std::filesystem::path analysis = f.analysis;
  if (!std::filesystem::is_directory(analysis)) {
    throw Error(ErrorKind::not_found, "analysis directory '" + f.analysis + "' does not exist");
  }
  const std::filesystem::path dir = f.out.empty() ? analysis / "report" : std::filesystem::path(f.out);
  auto files = write_report(analysis, f.format == "csv" ? ReportFormat::csv : ReportFormat::svg, dir);
  if (json) {
    ojson list = ojson::array();
    for (const auto& p : files) list.push_back(p.string());
    out << ojson{{"schema_version", kSchemaVersion}, {"command", "report"}, {"files", list}}.dump()
        << '\n';
  } else {
    for (const auto& p : files) out << "wrote " << p.string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Representativeness of site collections against gridded global variables",
               "sitebias"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string catalog_root = "catalog";
  bool json = false;
  app.add_option("--catalog", catalog_root, "Catalog directory")
      ->envname(kCatalogEnv)
      ->capture_default_str();
  app.add_flag("--json", json, "Print a machine-readable summary");

  IngestFlags ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Aggregate an ASCII grid into the catalog");
  ingest_cmd->add_option("--raster", ingest.raster, "ESRI ASCII grid (.asc or .asc.gz)")->required();
  ingest_cmd->add_option("--variable", ingest.variable, "Variable id")->required();
  ingest_cmd->add_option("--kind", ingest.kind, "Variable kind")
      ->required()
      ->check(CLI::IsMember({"continuous", "categorical"}));
  ingest_cmd->add_option("--stat", ingest.stat, "Zonal statistic")
      ->check(CLI::IsMember({"mean", "majority"}));
  ingest_cmd->add_option("--units", ingest.units, "Units label");
  ingest_cmd->add_option("--resample", ingest.resample, "Nearest-neighbour resample to DEG")
      ->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--fill", ingest.fill, "Focal fill radius in pixels")
      ->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--cell-area", ingest.cell_area, "Grid cell area for a new catalog (km2)")
      ->check(CLI::PositiveNumber);

  AnalyzeFlags analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run a representativeness analysis");
  analyze_cmd->add_option("--collection", analyze.collection, "Sites CSV")->required();
  analyze_cmd->add_option("--collection-id", analyze.collection_id,
                          "Collection id (default: file stem)");
  analyze_cmd->add_option("--variable", analyze.variable, "Variable id")->required();
  auto* mask = analyze_cmd->add_option("--mask", analyze.mask, "Extent mask VAR:v1,v2,...");
  auto* bbox = analyze_cmd->add_option("--bbox", analyze.bbox, "Extent box S,W,N,E");
  mask->excludes(bbox);
  analyze_cmd->add_option("--bins", analyze.bins, "Bin count")->capture_default_str();
  analyze_cmd->add_option("--samples", analyze.samples, "Null replicates m")->capture_default_str();
  analyze_cmd->add_option("--seed", analyze.seed, "Random seed")->capture_default_str();
  analyze_cmd->add_option("--indicator", analyze.indicator, "Indicator kind")
      ->check(CLI::IsMember({"intersection", "bhattacharyya"}))
      ->capture_default_str();
  analyze_cmd->add_option("--binning", analyze.binning, "equal_width, log_width or categorical");
  analyze_cmd->add_option("--sample-size", analyze.sample_size, "Null sample size override")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_flag("--with-replacement", analyze.with_replacement,
                        "Draw null samples with replacement");
  analyze_cmd->add_flag("--dedupe", analyze.dedupe, "Count each occupied cell once");
  analyze_cmd->add_option("--threads", analyze.threads, "Worker threads (0 = all cores)");
  analyze_cmd->add_option("--out", analyze.out, "Output directory")->required();

  ReportFlags report;
  auto* report_cmd = app.add_subcommand("report", "Render charts for an analysis directory");
  report_cmd->add_option("--analysis", report.analysis, "Analysis directory")->required();
  report_cmd->add_option("--format", report.format, "Output format")
      ->required()
      ->check(CLI::IsMember({"svg", "csv"}));
  report_cmd->add_option("--out", report.out, "Output directory (default: ANALYSIS/report)");

  std::vector<const char*> argv{"sitebias"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    err << "error: " << e.what() << "\n\n" << target->help();
    return kExitUsage;
  }

  try {
    if (ingest_cmd->parsed()) return cmd_ingest(catalog_root, ingest, json, out);
    if (analyze_cmd->parsed()) return cmd_analyze(catalog_root, analyze, json, out, err);
    return cmd_report(report, json, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace sitebias::cli
