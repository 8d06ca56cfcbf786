#include "sitebias/engine.hpp"

#include "sitebias/error.hpp"
#include "sitebias/text.hpp"

namespace sitebias {

void AnalysisParams::validate() const {
  if (replicates < 1) throw Error(ErrorKind::domain, "replicate count m must be >= 1");
  if (effective_sample_size && *effective_sample_size < 1) {
    throw Error(ErrorKind::domain, "effective_sample_size must be >= 1");
  }
  if (binning != BinningKind::categorical && bins < 2) {
    throw Error(ErrorKind::domain, "bins must be >= 2");
  }
  thresholds.validate();
  if (const auto* mask = std::get_if<MaskSpec>(&extent)) {
    text::require_identifier(mask->variable_id, "mask variable_id");
    if (mask->included_values.empty()) {
      throw Error(ErrorKind::domain, "mask needs at least one included value");
    }
  }
}

BinningKind resolve_binning(const AnalysisParams& params, VariableKind layer_kind) {
  if (layer_kind == VariableKind::categorical) {
    if (params.binning && *params.binning != BinningKind::categorical) {
      throw Error(ErrorKind::contract, "categorical variables need categorical binning");
    }
    return BinningKind::categorical;
  }
  if (params.binning == BinningKind::categorical) {
    throw Error(ErrorKind::contract, "categorical binning needs a categorical variable");
  }
  return params.binning.value_or(BinningKind::equal_width);
}

AnalysisOutput run_analysis(const Grid& grid, const MappedCollection& mapped,
                            const VariableLayer& layer, Extent extent,
                            const AnalysisParams& params, unsigned threads) {
  params.validate();
  if (!(layer.meta().grid == grid.config())) {
    throw Error(ErrorKind::contract, "layer '" + layer.id() + "' belongs to a different grid");
  }

  AnalysisOutput out;
  out.params = params;
  out.params.binning = resolve_binning(params, layer.kind());
  out.population = gather_population(extent, layer);
  out.site_count = mapped.assignments.size();

  Binning binning = make_binning(*out.params.binning, params.bins, out.population.values);

  RepresentativenessOptions options;
  options.kind = params.indicator;
  options.replicates = params.replicates;
  options.seed = params.seed;
  options.sampling = params.sampling;
  options.dedupe = params.dedupe;
  options.effective_sample_size = params.effective_sample_size;
  options.threads = threads;
  out.representativeness = representativeness(mapped, out.population, binning, options);

  auto& rep = out.representativeness;
  rep.off_extent_site_count = 0;
  rep.missing_data_site_count = 0;
  for (const auto& assignment : mapped.assignments) {
    if (out.population.find(assignment.cell) != Population::npos) continue;
    if (extent.contains(assignment.cell)) {
      ++rep.missing_data_site_count;
    } else {
      ++rep.off_extent_site_count;
    }
  }

  out.representedness = representedness(rep.sample_histogram, rep.population_histogram,
                                        out.population, params.thresholds);
  out.areas = area_summary(out.representedness, extent, grid);
  out.extent = std::move(extent);
  return out;
}

AnalysisOutput run_analysis(const Grid& grid, const Catalog& catalog, const Collection& collection,
                            const AnalysisParams& params, unsigned threads) {
  params.validate();
  VariableLayer layer = catalog.load_layer(params.variable_id);
  Extent extent = build_extent(params.extent, grid, catalog);
  MappedCollection mapped = map_collection(collection, grid);
  AnalysisParams resolved = params;
  resolved.collection_id = collection.collection_id;
  return run_analysis(grid, mapped, layer, std::move(extent), resolved, threads);
}

}  // namespace sitebias
