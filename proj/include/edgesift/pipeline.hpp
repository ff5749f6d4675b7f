#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "edgesift/graph.hpp"
#include "edgesift/model.hpp"
#include "edgesift/rank.hpp"
#include "edgesift/score.hpp"

namespace edgesift {

struct PipelineOptions {
  std::size_t bins = 20;
  double epsilon = kDefaultEpsilon;
  XMeansConfig xmeans;
};

// Learns bin layouts and behavior clusters for every (object type, relation,
// attribute) the schema admits.
ClusterModel fit_cluster_model(const AttributedMultigraph& g,
                               const PipelineOptions& options);

// Scores every node of every object type against the model and ranks each
// type separately. Isolated nodes score 0. The model must cover every
// (object type, relation, attribute) combination the schema admits.
std::vector<AbnormalityRanking> score_with_model(const AttributedMultigraph& g,
                                                 const ClusterModel& model,
                                                 const PipelineOptions& options);

// fit + score in one pass over the aggregates.
std::vector<AbnormalityRanking> run_pipeline(const AttributedMultigraph& g,
                                             const PipelineOptions& options,
                                             ClusterModel* model_out = nullptr);

enum class OutputFormat { csv, json };

struct ScoreCommandConfig {
  std::filesystem::path schema_file;
  std::filesystem::path edge_file;
  std::optional<std::filesystem::path> nodes_file;
  std::filesystem::path out_dir;
  PipelineOptions options;
  std::optional<std::size_t> top_k;
  std::optional<std::filesystem::path> model_in;
  std::optional<std::filesystem::path> model_out;
  OutputFormat format = OutputFormat::csv;
};

// Loads inputs, runs (or applies) the model, and writes per-type ranking
// files plus the model and cluster profiles. Returns the written paths.
std::vector<std::filesystem::path> run_score_command(
    const ScoreCommandConfig& config);

}  // namespace edgesift
