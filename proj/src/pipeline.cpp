#include "edgesift/pipeline.hpp"

#include <algorithm>
#include <cctype>

#include "edgesift/aggregate.hpp"

namespace edgesift {

namespace {

void check_options(const PipelineOptions& options) {
  if (options.bins == 0) throw UsageError("pipeline: bins must be positive");
  if (options.epsilon < 0.0)
    throw UsageError("pipeline: epsilon must be non-negative");
  options.xmeans.validate();
}

// (object type, relation) pairs in schema order, with the relations each
// type participates in.
struct TypeRelations {
  std::size_t object_type;
  std::vector<std::size_t> relations;
};

std::vector<TypeRelations> schema_participation(const GraphSchema& schema) {
  std::vector<TypeRelations> out;
  for (std::size_t t = 0; t < schema.object_types.size(); ++t) {
    TypeRelations tr{t, {}};
    for (std::size_t r = 0; r < schema.relations.size(); ++r) {
      const auto& rel = schema.relations[r];
      if (schema.object_type_index(rel.source) == t ||
          schema.object_type_index(rel.target) == t)
        tr.relations.push_back(r);
    }
    out.push_back(std::move(tr));
  }
  return out;
}

struct AggregateCache {
  // aggregates[t] holds one entry per relation of object type t.
  std::vector<std::vector<RelationAggregate>> per_type;
};

AggregateCache build_aggregates(const AttributedMultigraph& g,
                                const std::vector<TypeRelations>& parts) {
  const auto& schema = g.schema();
  AggregateCache cache;
  cache.per_type.resize(parts.size());
  for (const auto& tr : parts) {
    for (auto r : tr.relations)
      cache.per_type[tr.object_type].push_back(
          aggregate(g, schema.object_types[tr.object_type],
                    schema.relations[r].name));
  }
  return cache;
}

ClusterModel fit_from_aggregates(const GraphSchema& schema,
                                 const std::vector<TypeRelations>& parts,
                                 const AggregateCache& cache,
                                 const PipelineOptions& options) {
  ClusterModel model;
  std::uint64_t entry_ordinal = 0;
  for (const auto& tr : parts) {
    for (std::size_t ri = 0; ri < tr.relations.size(); ++ri) {
      const auto& rel = schema.relations[tr.relations[ri]];
      const auto& agg = cache.per_type[tr.object_type][ri];
      for (std::size_t w = 0; w < rel.attributes.size(); ++w) {
        const auto& attr = rel.attributes[w];
        AttributeModelEntry entry;
        entry.object_type = schema.object_types[tr.object_type];
        entry.relation = rel.name;
        entry.attribute = attr.name;
        entry.kind = attr.kind;
        entry.bins = choose_binning(attr, agg.stats[w], options.bins);

        PointMatrix points;
        for (const auto& node : agg.nodes) {
          if (node.values[w].empty()) continue;
          points.push_back(
              bin_and_normalize(node.values[w], entry.bins).masses);
        }
        if (!points.empty()) {
          auto cfg = options.xmeans;
          cfg.rng_seed = splitmix64(cfg.rng_seed ^ entry_ordinal);
          if (cfg.k_min > points.size()) cfg.k_min = 1;
          auto clusters = xmeans(points, cfg);
          entry.centers = std::move(clusters.centers);
          entry.proportions = std::move(clusters.proportions);
        }
        model.entries.push_back(std::move(entry));
        ++entry_ordinal;
      }
    }
  }
  return model;
}

std::vector<AbnormalityRanking> score_from_aggregates(
    const AttributedMultigraph& g, const std::vector<TypeRelations>& parts,
    const AggregateCache& cache, const ClusterModel& model,
    const PipelineOptions& options) {
  const auto& schema = g.schema();
  std::vector<AbnormalityRanking> rankings;

  for (const auto& tr : parts) {
    const auto& type_name = schema.object_types[tr.object_type];

    std::vector<std::pair<std::string, std::string>> columns;
    std::vector<const AttributeModelEntry*> column_models;
    for (auto r : tr.relations) {
      const auto& rel = schema.relations[r];
      for (const auto& attr : rel.attributes) {
        const auto* entry = model.find(type_name, rel.name, attr.name);
        if (!entry)
          throw ValidationError("model has no entry for (" + type_name +
                                ", " + rel.name + ", " + attr.name + ")");
        if (entry->bins.size() == 0 ||
            (attr.kind == AttributeKind::categorical &&
             entry->bins.categories != attr.domain))
          throw ValidationError("model entry for (" + type_name + ", " +
                                rel.name + ", " + attr.name +
                                ") does not match the schema");
        columns.emplace_back(rel.name, attr.name);
        column_models.push_back(entry);
      }
    }

    std::vector<ScoreBreakdown> scores;
    std::vector<ScorePart> parts_row(columns.size());
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      if (g.node_type(v) != tr.object_type) continue;
      std::vector<std::size_t> cardinalities(tr.relations.size(), 0);
      std::size_t col = 0;
      for (std::size_t ri = 0; ri < tr.relations.size(); ++ri) {
        const auto& rel = schema.relations[tr.relations[ri]];
        const auto* node_entry = cache.per_type[tr.object_type][ri].find(v);
        if (node_entry) cardinalities[ri] = node_entry->edge_count;
        for (std::size_t w = 0; w < rel.attributes.size(); ++w, ++col) {
          parts_row[col].values = node_entry ? &node_entry->values[w] : nullptr;
          parts_row[col].model = column_models[col];
        }
      }
      scores.push_back(score_unified(g.node_id(v), parts_row, options.epsilon,
                                     std::move(cardinalities)));
    }
    rankings.push_back(rank(type_name, std::move(columns), std::move(scores)));
  }
  return rankings;
}

}  // namespace

ClusterModel fit_cluster_model(const AttributedMultigraph& g,
                               const PipelineOptions& options) {
  check_options(options);
  auto parts = schema_participation(g.schema());
  auto cache = build_aggregates(g, parts);
  return fit_from_aggregates(g.schema(), parts, cache, options);
}

std::vector<AbnormalityRanking> score_with_model(
    const AttributedMultigraph& g, const ClusterModel& model,
    const PipelineOptions& options) {
  check_options(options);
  auto parts = schema_participation(g.schema());
  auto cache = build_aggregates(g, parts);
  return score_from_aggregates(g, parts, cache, model, options);
}

std::vector<AbnormalityRanking> run_pipeline(const AttributedMultigraph& g,
                                             const PipelineOptions& options,
                                             ClusterModel* model_out) {
  check_options(options);
  auto parts = schema_participation(g.schema());
  auto cache = build_aggregates(g, parts);
  auto model = fit_from_aggregates(g.schema(), parts, cache, options);
  auto rankings = score_from_aggregates(g, parts, cache, model, options);
  if (model_out) *model_out = std::move(model);
  return rankings;
}

namespace {

std::string safe_filename(std::string_view name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
            c == '_')
               ? c
               : '_';
  return out;
}

}  // namespace

std::vector<std::filesystem::path> run_score_command(
    const ScoreCommandConfig& config) {
  check_options(config.options);
  auto schema = load_schema(config.schema_file);
  auto graph = load_graph(config.edge_file, schema, config.nodes_file);

  std::filesystem::create_directories(config.out_dir);

  ClusterModel model;
  std::vector<AbnormalityRanking> rankings;
  if (config.model_in) {
    model = ClusterModel::load(*config.model_in);
    rankings = score_with_model(graph, model, config.options);
  } else {
    rankings = run_pipeline(graph, config.options, &model);
  }

  std::vector<std::filesystem::path> written;
  const bool json = config.format == OutputFormat::json;
  for (const auto& ranking : rankings) {
    auto file = config.out_dir / ("ranking_" +
                                  safe_filename(ranking.object_type) +
                                  (json ? ".json" : ".csv"));
    write_text_file(file, json ? emit_ranking_json(ranking, config.top_k)
                               : emit_ranking_csv(ranking, config.top_k));
    written.push_back(file);
  }

  auto model_file = config.model_out
                        ? *config.model_out
                        : config.out_dir / "cluster_model.json";
  model.save(model_file);
  written.push_back(model_file);

  auto profiles_file = config.out_dir / "cluster_profiles.csv";
  write_text_file(profiles_file, emit_cluster_profiles_csv(model));
  written.push_back(profiles_file);
  return written;
}

}  // namespace edgesift
