#include "edgesift/score.hpp"

#include <cmath>

namespace edgesift {

double kl_divergence(std::span<const double> p, std::span<const double> q,
                     double eps) {
  if (p.size() != q.size())
    throw UsageError("kl_divergence: dimension mismatch");
  if (p.empty()) throw UsageError("kl_divergence: empty distributions");
  if (eps < 0.0) throw UsageError("kl_divergence: negative epsilon");
  const double denom = 1.0 + static_cast<double>(q.size()) * eps;
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    const double qi = eps > 0.0 ? (q[i] + eps) / denom : q[i];
    sum += p[i] * std::log2(p[i] / qi);
  }
  // Rounding can push a near-zero divergence a hair negative.
  if (sum < 0.0 && sum > -1e-9) sum = 0.0;
  return sum;
}

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double m : p)
    if (m > 0.0) h -= m * std::log2(m);
  return h;
}

double description_length(const DiscreteDistribution& p,
                          std::span<const double> model, double eps) {
  return static_cast<double>(p.n) *
         (entropy(p.masses) + kl_divergence(p.masses, model, eps));
}

double score_base(const DiscreteDistribution& p, std::span<const double> model,
                  double eps) {
  return static_cast<double>(p.n) * kl_divergence(p.masses, model, eps);
}

double score_multifaceted(const DiscreteDistribution& p,
                          std::span<const Point> centers,
                          std::span<const double> proportions, double eps) {
  if (centers.size() != proportions.size())
    throw UsageError("score_multifaceted: centers/proportions size mismatch");
  if (centers.empty())
    throw UsageError("score_multifaceted: no clusters");
  double mix = 0.0;
  for (std::size_t g = 0; g < centers.size(); ++g)
    mix += proportions[g] * kl_divergence(p.masses, centers[g], eps);
  return static_cast<double>(p.n) * mix;
}

double score_multifaceted(const DiscreteDistribution& p,
                          const ClusterSet& clusters, double eps) {
  return score_multifaceted(p, clusters.centers, clusters.proportions, eps);
}

double attribute_contribution(std::span<const double> values,
                              const AttributeModelEntry& model, double eps) {
  if (values.empty() || model.centers.empty()) return 0.0;
  auto dist = bin_and_normalize(values, model.bins);
  return score_multifaceted(dist, model.centers, model.proportions, eps);
}

ScoreBreakdown score_unified(std::string node,
                             std::span<const ScorePart> parts, double eps,
                             std::vector<std::size_t> relation_cardinalities) {
  ScoreBreakdown out;
  out.node = std::move(node);
  out.relation_cardinalities = std::move(relation_cardinalities);
  out.contributions.reserve(parts.size());
  for (const auto& part : parts) {
    if (!part.model) throw UsageError("score_unified: missing model entry");
    double c = 0.0;
    if (part.values && !part.values->empty())
      c = attribute_contribution(*part.values, *part.model, eps);
    out.contributions.push_back(c);
    out.total += c;
  }
  return out;
}

}  // namespace edgesift
