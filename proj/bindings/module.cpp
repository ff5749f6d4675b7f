#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <utility>
#include <vector>

#include "edgesift/aggregate.hpp"
#include "edgesift/cluster.hpp"
#include "edgesift/graph.hpp"
#include "edgesift/pipeline.hpp"
#include "edgesift/schema.hpp"
#include "edgesift/score.hpp"
#include "edgesift/synth.hpp"

namespace py = pybind11;
using namespace edgesift;

namespace {

PipelineOptions make_options(std::size_t bins, double epsilon,
                             std::size_t k_max, std::uint64_t seed) {
  PipelineOptions options;
  options.bins = bins;
  options.epsilon = epsilon;
  options.xmeans.k_max = k_max;
  options.xmeans.rng_seed = seed;
  return options;
}

AttributedMultigraph graph_from_text(const std::string& schema_json,
                                     const std::string& edge_csv,
                                     const std::string& nodes_csv) {
  auto schema = parse_schema(schema_json);
  return parse_graph_csv(edge_csv, schema, nodes_csv);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "node abnormality scoring over edge-attributed multigraphs";

  m.def(
      "kl_divergence",
      [](const std::vector<double>& p, const std::vector<double>& q,
         double eps) { return kl_divergence(p, q, eps); },
      py::arg("p"), py::arg("q"), py::arg("eps") = 0.0,
      "KL(p || q) in bits; eps > 0 smooths q");

  m.def(
      "entropy",
      [](const std::vector<double>& p) { return entropy(p); }, py::arg("p"),
      "Shannon entropy in bits");

  m.def(
      "score_base",
      [](const std::vector<double>& masses, std::size_t n,
         const std::vector<double>& model, double eps) {
        return score_base({masses, n}, model, eps);
      },
      py::arg("masses"), py::arg("n"), py::arg("model"), py::arg("eps") = 0.0);

  m.def(
      "score_multifaceted",
      [](const std::vector<double>& masses, std::size_t n,
         const PointMatrix& centers, const std::vector<double>& proportions,
         double eps) {
        return score_multifaceted({masses, n}, centers, proportions, eps);
      },
      py::arg("masses"), py::arg("n"), py::arg("centers"),
      py::arg("proportions"), py::arg("eps") = 0.0);

  m.def(
      "description_length",
      [](const std::vector<double>& masses, std::size_t n,
         const std::vector<double>& model, double eps) {
        return description_length({masses, n}, model, eps);
      },
      py::arg("masses"), py::arg("n"), py::arg("model"), py::arg("eps") = 0.0);

  m.def("compute_iat", &compute_iat, py::arg("timestamps"),
        "Sorted first differences; n timestamps give n-1 gaps");

  m.def(
      "xmeans",
      [](const PointMatrix& points, std::size_t k_min, std::size_t k_max,
         std::uint64_t seed) {
        XMeansConfig cfg;
        cfg.k_min = k_min;
        cfg.k_max = k_max;
        cfg.rng_seed = seed;
        auto set = xmeans(points, cfg);
        return py::make_tuple(set.centers, set.proportions, set.assignment);
      },
      py::arg("points"), py::arg("k_min") = 1, py::arg("k_max") = 25,
      py::arg("seed") = 0,
      "Returns (centers, proportions, assignment)");

  m.def(
      "score_graph",
      [](const std::string& schema_json, const std::string& edge_csv,
         const std::string& nodes_csv, std::size_t bins, double epsilon,
         std::size_t k_max, std::uint64_t seed) {
        auto g = graph_from_text(schema_json, edge_csv, nodes_csv);
        auto rankings =
            run_pipeline(g, make_options(bins, epsilon, k_max, seed));
        std::map<std::string, std::vector<std::pair<std::string, double>>> out;
        for (const auto& r : rankings) {
          auto& rows = out[r.object_type];
          rows.reserve(r.entries.size());
          for (const auto& e : r.entries) rows.emplace_back(e.node, e.total);
        }
        return out;
      },
      py::arg("schema_json"), py::arg("edge_csv"), py::arg("nodes_csv") = "",
      py::arg("bins") = 20, py::arg("epsilon") = kDefaultEpsilon,
      py::arg("k_max") = 25, py::arg("seed") = 0,
      "Full pipeline; returns {object_type: [(node, score) descending]}");

  m.def(
      "fit_model_json",
      [](const std::string& schema_json, const std::string& edge_csv,
         const std::string& nodes_csv, std::size_t bins, double epsilon,
         std::size_t k_max, std::uint64_t seed) {
        auto g = graph_from_text(schema_json, edge_csv, nodes_csv);
        auto model =
            fit_cluster_model(g, make_options(bins, epsilon, k_max, seed));
        return model.to_json();
      },
      py::arg("schema_json"), py::arg("edge_csv"), py::arg("nodes_csv") = "",
      py::arg("bins") = 20, py::arg("epsilon") = kDefaultEpsilon,
      py::arg("k_max") = 25, py::arg("seed") = 0,
      "Learned bin layouts and cluster profiles as a JSON document");

  m.def(
      "generate_reviews",
      [](std::uint64_t seed, double scale) {
        auto config = GeneratorConfig::default_config().scaled(scale);
        config.seed = seed;
        auto labeled = generate(config);
        py::dict out;
        out["schema"] = schema_to_json(labeled.graph.schema());
        out["edges"] = graph_to_csv(labeled.graph);
        out["nodes"] = nodes_to_csv(labeled.graph);
        out["labels"] = labeled.labels;
        return out;
      },
      py::arg("seed") = 0, py::arg("scale") = 1.0,
      "Synthetic rating graph with honest and fraud users");
}
