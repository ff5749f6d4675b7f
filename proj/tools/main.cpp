#include <chrono>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edgesift/csv.hpp"
#include "edgesift/pipeline.hpp"
#include "edgesift/rank.hpp"
#include "edgesift/synth.hpp"

namespace fs = std::filesystem;
using namespace edgesift;

namespace {

struct CommonOptions {
  std::size_t bins = 20;
  double epsilon = kDefaultEpsilon;
  std::size_t kmax = 25;
  std::uint64_t seed = 0;

  PipelineOptions pipeline() const {
    PipelineOptions o;
    o.bins = bins;
    o.epsilon = epsilon;
    o.xmeans.k_max = kmax;
    o.xmeans.rng_seed = seed;
    return o;
  }
};

void add_common_flags(CLI::App& cmd, CommonOptions& opts) {
  cmd.add_option("--bins", opts.bins, "Bins per numeric attribute")
      ->capture_default_str();
  cmd.add_option("--epsilon", opts.epsilon,
                 "Additive smoothing for model distributions")
      ->capture_default_str();
  cmd.add_option("--kmax", opts.kmax, "Cluster count ceiling")
      ->capture_default_str();
  cmd.add_option("--seed", opts.seed, "Random seed")->capture_default_str();
}

int run_score(const ScoreCommandConfig& config) {
  auto written = run_score_command(config);
  for (const auto& file : written)
    std::cerr << "wrote " << file.string() << "\n";
  return 0;
}

int run_synth(const fs::path& out_dir, std::uint64_t seed, double scale,
              std::size_t products_override) {
  auto config = GeneratorConfig::default_config();
  if (scale != 1.0) config = config.scaled(scale);
  config.seed = seed;
  if (products_override > 0) config.n_products = products_override;

  auto labeled = generate(config);
  fs::create_directories(out_dir);
  write_text_file(out_dir / "schema.json",
                  schema_to_json(labeled.graph.schema()));
  save_graph(labeled.graph, out_dir / "edges.csv");
  write_text_file(out_dir / "nodes.csv", nodes_to_csv(labeled.graph));
  write_text_file(out_dir / "labels.csv", labels_to_csv(labeled));
  std::cerr << "generated " << labeled.graph.node_count() << " nodes, "
            << labeled.graph.edge_count() << " edges\n";
  for (const char* name : {"schema.json", "edges.csv", "nodes.csv",
                           "labels.csv"})
    std::cerr << "wrote " << (out_dir / name).string() << "\n";
  return 0;
}

int run_eval(const fs::path& ranking_file, const fs::path& labels_file,
             const std::vector<std::size_t>& ks) {
  auto ranking = parse_ranking_csv(read_text_file(ranking_file));
  auto labels = parse_labels_csv(read_text_file(labels_file));
  std::cout << "k,precision\n";
  for (auto k : ks)
    std::cout << k << ","
              << csv::format_fixed(precision_at_k(ranking, labels, k), 6)
              << "\n";
  return 0;
}

int run_bench(const fs::path& schema_file, const fs::path& edge_file,
              const std::optional<fs::path>& nodes_file,
              const std::optional<fs::path>& out_file,
              const std::vector<double>& fractions,
              const CommonOptions& common) {
  auto schema = load_schema(schema_file);
  auto graph = load_graph(edge_file, schema, nodes_file);
  auto rows = scaling_benchmark(graph, fractions, common.pipeline(),
                                common.seed);
  auto text = benchmark_to_csv(rows);
  if (out_file) {
    write_text_file(*out_file, text);
    std::cerr << "wrote " << out_file->string() << "\n";
  } else {
    std::cout << text;
  }
  std::cerr << "log-log slope: " << csv::format_fixed(log_log_slope(rows), 4)
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abnormality scoring for edge-attributed multigraphs"};
  app.require_subcommand(1);

  // score
  auto* score = app.add_subcommand(
      "score", "Cluster edge behavior and rank nodes by abnormality");
  ScoreCommandConfig score_config;
  CommonOptions score_common;
  std::string format = "csv";
  std::size_t top_k = 0;
  std::string nodes_file, model_in, model_out;
  score->add_option("--schema", score_config.schema_file, "Schema JSON file")
      ->required();
  score->add_option("--edges", score_config.edge_file, "Edge CSV file")
      ->required();
  score->add_option("--nodes", nodes_file,
                    "Optional node declarations (node,object_type)");
  score->add_option("--out-dir", score_config.out_dir, "Output directory")
      ->required();
  add_common_flags(*score, score_common);
  score->add_option("--top-k", top_k, "Keep only the top k rows per ranking");
  score->add_option("--model-in", model_in,
                    "Score against a previously fitted model");
  score->add_option("--model-out", model_out,
                    "Where to write the fitted model");
  score->add_option("--format", format, "Ranking format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // synth
  auto* synth = app.add_subcommand(
      "synth", "Generate a labeled synthetic review graph");
  fs::path synth_out;
  std::uint64_t synth_seed = 0;
  double synth_scale = 1.0;
  std::size_t synth_products = 0;
  synth->add_option("--out-dir", synth_out, "Output directory")->required();
  synth->add_option("--seed", synth_seed, "Random seed")
      ->capture_default_str();
  synth->add_option("--scale", synth_scale,
                    "Scale the default population by this factor")
      ->capture_default_str();
  synth->add_option("--products", synth_products,
                    "Override the product count");

  // eval
  auto* eval = app.add_subcommand(
      "eval", "Precision of a ranking against ground-truth labels");
  fs::path eval_ranking, eval_labels;
  std::vector<std::size_t> eval_ks{50, 100};
  eval->add_option("--ranking", eval_ranking, "Ranking CSV file")->required();
  eval->add_option("--labels", eval_labels, "Labels CSV file")->required();
  eval->add_option("--k", eval_ks, "Cutoffs to evaluate")
      ->capture_default_str();

  // bench
  auto* bench = app.add_subcommand(
      "bench", "Time the pipeline over growing edge subsamples");
  fs::path bench_schema, bench_edges;
  std::string bench_nodes, bench_out;
  std::vector<double> bench_fractions{0.1, 0.2, 0.3, 0.4, 0.5,
                                      0.6, 0.7, 0.8, 0.9, 1.0};
  CommonOptions bench_common;
  bench->add_option("--schema", bench_schema, "Schema JSON file")->required();
  bench->add_option("--edges", bench_edges, "Edge CSV file")->required();
  bench->add_option("--nodes", bench_nodes, "Optional node declarations");
  bench->add_option("--out", bench_out, "Benchmark CSV file (default stdout)");
  bench->add_option("--fractions", bench_fractions,
                    "Ascending edge fractions to time");
  add_common_flags(*bench, bench_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (score->parsed()) {
      score_config.options = score_common.pipeline();
      if (!nodes_file.empty()) score_config.nodes_file = nodes_file;
      if (top_k > 0) score_config.top_k = top_k;
      if (!model_in.empty()) score_config.model_in = model_in;
      if (!model_out.empty()) score_config.model_out = model_out;
      score_config.format =
          format == "json" ? OutputFormat::json : OutputFormat::csv;
      return run_score(score_config);
    }
    if (synth->parsed())
      return run_synth(synth_out, synth_seed, synth_scale, synth_products);
    if (eval->parsed()) return run_eval(eval_ranking, eval_labels, eval_ks);
    if (bench->parsed()) {
      std::optional<fs::path> nodes, out;
      if (!bench_nodes.empty()) nodes = bench_nodes;
      if (!bench_out.empty()) out = bench_out;
      return run_bench(bench_schema, bench_edges, nodes, out, bench_fractions,
                       bench_common);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
