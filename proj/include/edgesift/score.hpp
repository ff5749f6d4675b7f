#pragma once

#include <span>
#include <string>
#include <vector>

#include "edgesift/cluster.hpp"
#include "edgesift/discretize.hpp"
#include "edgesift/model.hpp"

namespace edgesift {

// Default additive-smoothing epsilon applied to model distributions.
inline constexpr double kDefaultEpsilon = 1e-9;

// KL(p || q) in bits. Zero-mass terms of p contribute nothing. When
// eps > 0 the model q is smoothed to (q_i + eps) / (1 + d * eps), so zero
// model bins stay finite; p is never smoothed.
double kl_divergence(std::span<const double> p, std::span<const double> q,
                     double eps = 0.0);

// Shannon entropy of p, in bits.
double entropy(std::span<const double> p);

// Bits to encode n samples drawn as p against model C: n * (H(p) + KL(p||C)).
double description_length(const DiscreteDistribution& p,
                          std::span<const double> model, double eps = 0.0);

// Single-model surprise: |f| * KL(p || C).
double score_base(const DiscreteDistribution& p, std::span<const double> model,
                  double eps = 0.0);

// Mixture surprise: |f| * sum_g rho_g * KL(p || C_g).
double score_multifaceted(const DiscreteDistribution& p,
                          std::span<const Point> centers,
                          std::span<const double> proportions,
                          double eps = 0.0);
double score_multifaceted(const DiscreteDistribution& p,
                          const ClusterSet& clusters, double eps = 0.0);

// One node's score with per-column contributions; columns are the caller's
// (relation, attribute) list for the node's object type.
struct ScoreBreakdown {
  std::string node;
  double total = 0.0;
  std::vector<double> contributions;
  // Adjacent-edge counts per distinct relation among the columns.
  std::vector<std::size_t> relation_cardinalities;
};

// One column's input: the node's raw samples (already interarrival times for
// temporal attributes; nullptr or empty when the node has none) and the
// learned profile to judge them against.
struct ScorePart {
  const std::vector<double>* values = nullptr;
  const AttributeModelEntry* model = nullptr;
};

double attribute_contribution(std::span<const double> values,
                              const AttributeModelEntry& model, double eps);

ScoreBreakdown score_unified(std::string node,
                             std::span<const ScorePart> parts, double eps,
                             std::vector<std::size_t> relation_cardinalities);

}  // namespace edgesift
