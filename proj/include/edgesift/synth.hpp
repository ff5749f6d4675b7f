#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "edgesift/graph.hpp"
#include "edgesift/pipeline.hpp"
#include "edgesift/rng.hpp"

namespace edgesift {

// Interarrival-time law for one archetype, in seconds.
struct IatLaw {
  enum class Kind { lognormal, fixed, mixture };
  Kind kind = Kind::lognormal;
  double log_mean = 0.0;   // ln-space parameters (lognormal, mixture)
  double log_sigma = 1.0;
  double fixed_value = 0.0;        // fixed, mixture
  double lognormal_weight = 1.0;   // mixture: chance of the lognormal branch

  double sample(Rng& rng) const;
};

// Edges drawn per user.
struct ActivityLaw {
  enum class Kind { fixed, uniform, geometric };
  Kind kind = Kind::fixed;
  std::size_t fixed = 1;
  std::size_t lo = 1, hi = 1;      // uniform, inclusive
  double mean = 1.0;               // geometric
  std::size_t cap = 1000;          // geometric tail clamp

  std::size_t sample(Rng& rng) const;
};

struct BehaviorArchetype {
  std::string name;
  bool fraud = false;
  std::vector<double> rating_mass;  // over stars 1..5
  IatLaw iat;
  ActivityLaw activity;
};

struct ArchetypeShare {
  BehaviorArchetype archetype;
  double proportion = 0.0;  // used when counts are not exact
  std::size_t count = 0;    // used when counts are exact
};

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t n_users = 0;     // ignored when exact_counts
  std::size_t n_products = 0;
  // Exact per-archetype user counts instead of an i.i.d. draw from the
  // proportions.
  bool exact_counts = true;
  std::vector<ArchetypeShare> mix;

  void validate() const;
  std::size_t total_users() const;

  // Review population: four honest archetypes plus a rapid-fire all-5-star
  // one, 10,100 users over 1,000 products.
  static GeneratorConfig default_config();
  // The same mix with every count scaled by `factor` (largest remainder).
  GeneratorConfig scaled(double factor) const;
};

// user --rates--> product with a categorical `stars` (1..5) and a temporal
// `ts` attribute.
GraphSchema rating_schema();

struct LabeledGraph {
  AttributedMultigraph graph;
  // node id -> "honest" or "fraud:<archetype>"; every node appears once,
  // users first, then products.
  std::vector<std::pair<std::string, std::string>> labels;
};

LabeledGraph generate(const GeneratorConfig& config);

std::string labels_to_csv(const LabeledGraph& g);
std::unordered_map<std::string, std::string> parse_labels_csv(
    std::string_view text);

// Fraction of the top k ranked nodes whose label starts with "fraud".
// Every ranked node consulted must be labeled.
double precision_at_k(
    const AbnormalityRanking& ranking,
    const std::unordered_map<std::string, std::string>& labels, std::size_t k);

// Keeps each edge with probability `fraction` (node set unchanged).
AttributedMultigraph subsample_edges(const AttributedMultigraph& g,
                                     double fraction, std::uint64_t seed);

struct BenchmarkRow {
  std::size_t edges = 0;
  double seconds = 0.0;
};

// Times the full pipeline on edge subsamples of increasing size.
std::vector<BenchmarkRow> scaling_benchmark(const AttributedMultigraph& g,
                                            std::span<const double> fractions,
                                            const PipelineOptions& options,
                                            std::uint64_t subsample_seed);

std::string benchmark_to_csv(std::span<const BenchmarkRow> rows);

// Least-squares slope of log(seconds) against log(edges).
double log_log_slope(std::span<const BenchmarkRow> rows);

}  // namespace edgesift
