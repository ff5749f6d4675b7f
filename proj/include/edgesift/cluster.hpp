#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "edgesift/errors.hpp"
#include "edgesift/rng.hpp"

namespace edgesift {

using Point = std::vector<double>;
using PointMatrix = std::vector<Point>;

struct XMeansConfig {
  std::size_t k_min = 1;
  std::size_t k_max = 25;
  std::size_t max_iterations = 100;   // Lloyd iterations per k-means run
  double convergence_tolerance = 1e-6;  // max centroid movement, L2
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct KMeansResult {
  PointMatrix centers;
  std::vector<std::uint32_t> assignment;
  double wcss = 0.0;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

// k-means++ seeding: first center uniform, then D^2-weighted draws.
PointMatrix kmeans_pp_seeds(const PointMatrix& points, std::size_t k,
                            Rng& rng);

// Lloyd iterations from the given seeds. An empty cluster is re-seeded from
// the point farthest from its center, once; if it empties again it is
// dropped, so fewer than k centers may come back.
KMeansResult kmeans(const PointMatrix& points, std::size_t k,
                    PointMatrix seeds, const XMeansConfig& config);

// Bayesian information criterion of a clustering under identical spherical
// Gaussians with a shared variance. Natural log; higher is better. Returns
// -infinity when there are fewer points than centers.
double bic_score(const PointMatrix& points, const PointMatrix& centers,
                 std::span<const std::uint32_t> assignment);

struct ClusterSet {
  PointMatrix centers;           // centroid mass vectors, each summing to 1
  std::vector<double> proportions;  // fraction of points nearest each center
  std::vector<std::uint32_t> assignment;

  std::size_t size() const { return centers.size(); }
};

// Nearest-center assignment (squared L2, lowest index wins ties) and the
// resulting cluster proportions.
std::pair<std::vector<std::uint32_t>, std::vector<double>> assign_proportions(
    const PointMatrix& points, const PointMatrix& centers);

// Grows k from k_min by trying a 2-way split of every cluster and keeping
// the splits whose local BIC improves, best gains first, until k_max or no
// split helps. Points are mass vectors; final centroids are renormalized.
ClusterSet xmeans(const PointMatrix& points, const XMeansConfig& config);

}  // namespace edgesift
