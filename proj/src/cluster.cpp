#include "edgesift/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace edgesift {

namespace {

constexpr double kVarianceFloor = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_points(const PointMatrix& points, const char* op) {
  if (points.empty())
    throw UsageError(std::string(op) + ": empty point set");
  const auto dim = points[0].size();
  if (dim == 0) throw UsageError(std::string(op) + ": zero-dimensional points");
  for (const auto& p : points)
    if (p.size() != dim)
      throw UsageError(std::string(op) + ": inconsistent point dimensions");
}

// Assignment pass: fills `assignment` and returns the WCSS.
double assign_nearest(const PointMatrix& points, const PointMatrix& centers,
                      std::vector<std::uint32_t>& assignment) {
  double wcss = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double best = kInf;
    std::uint32_t best_c = 0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      double d2 = squared_distance(points[i], centers[c]);
      if (d2 < best) {
        best = d2;
        best_c = static_cast<std::uint32_t>(c);
      }
    }
    assignment[i] = best_c;
    wcss += best;
  }
  return wcss;
}

Point centroid(const PointMatrix& points, std::span<const std::size_t> members) {
  std::vector<long double> acc(points[0].size(), 0.0L);
  for (auto i : members)
    for (std::size_t w = 0; w < acc.size(); ++w) acc[w] += points[i][w];
  Point mean(acc.size());
  for (std::size_t w = 0; w < acc.size(); ++w)
    mean[w] = static_cast<double>(acc[w] / static_cast<long double>(members.size()));
  return mean;
}

}  // namespace

void XMeansConfig::validate() const {
  if (k_min < 1) throw UsageError("xmeans: k_min must be at least 1");
  if (k_max < k_min) throw UsageError("xmeans: k_max must be >= k_min");
  if (max_iterations == 0)
    throw UsageError("xmeans: max_iterations must be positive");
  if (!(convergence_tolerance > 0.0))
    throw UsageError("xmeans: convergence_tolerance must be positive");
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return d2;
}

PointMatrix kmeans_pp_seeds(const PointMatrix& points, std::size_t k,
                            Rng& rng) {
  check_points(points, "kmeans_pp_seeds");
  if (k == 0) throw UsageError("kmeans_pp_seeds: k must be positive");
  if (k > points.size())
    throw UsageError("kmeans_pp_seeds: k exceeds the number of points");

  PointMatrix seeds;
  seeds.reserve(k);
  seeds.push_back(points[rng.uniform_int(0, points.size() - 1)]);
  std::vector<double> d2(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    d2[i] = squared_distance(points[i], seeds[0]);

  while (seeds.size() < k) {
    double total = 0.0;
    for (double d : d2) total += d;
    std::size_t next;
    if (total > 0.0) {
      const double r = rng.uniform01() * total;
      double cum = 0.0;
      next = points.size() - 1;
      for (std::size_t i = 0; i < points.size(); ++i) {
        cum += d2[i];
        if (r < cum) {
          next = i;
          break;
        }
      }
    } else {
      // All points coincide with a seed already; fall back to uniform.
      next = rng.uniform_int(0, points.size() - 1);
    }
    seeds.push_back(points[next]);
    for (std::size_t i = 0; i < points.size(); ++i)
      d2[i] = std::min(d2[i], squared_distance(points[i], seeds.back()));
  }
  return seeds;
}

KMeansResult kmeans(const PointMatrix& points, std::size_t k,
                    PointMatrix seeds, const XMeansConfig& config) {
  check_points(points, "kmeans");
  if (k == 0) throw UsageError("kmeans: k must be positive");
  if (k > points.size())
    throw UsageError("kmeans: k exceeds the number of points");
  if (seeds.size() != k)
    throw UsageError("kmeans: seed count does not match k");
  for (const auto& s : seeds)
    if (s.size() != points[0].size())
      throw UsageError("kmeans: seed dimension mismatch");

  const double tol2 =
      config.convergence_tolerance * config.convergence_tolerance;
  PointMatrix centers = std::move(seeds);
  std::vector<bool> reseeded(centers.size(), false);
  std::vector<std::uint32_t> assignment(points.size());
  std::vector<std::size_t> counts;
  double prev_wcss = kInf;
  double wcss = kInf;

  for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
    wcss = assign_nearest(points, centers, assignment);
    if (wcss > prev_wcss * (1.0 + 1e-9) + 1e-12)
      throw InternalError("kmeans: objective increased");
    prev_wcss = wcss;

    counts.assign(centers.size(), 0);
    for (auto a : assignment) ++counts[a];

    // A cluster that empties is re-seeded once; if it is empty again on a
    // later pass it is dropped. The snapshot keeps this pass's re-seeds from
    // being mistaken for stale ones.
    const std::vector<bool> was_reseeded = reseeded;
    bool changed = false;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      if (counts[c] > 0 || was_reseeded[c]) continue;
      // Farthest point from its current center takes over, lowest index on
      // ties.
      double best = -1.0;
      std::size_t best_i = 0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        double d2 = squared_distance(points[i], centers[assignment[i]]);
        if (d2 > best) {
          best = d2;
          best_i = i;
        }
      }
      centers[c] = points[best_i];
      reseeded[c] = true;
      changed = true;
    }
    for (std::size_t c = centers.size(); c-- > 0;) {
      if (counts[c] == 0 && was_reseeded[c] && centers.size() > 1) {
        centers.erase(centers.begin() + static_cast<std::ptrdiff_t>(c));
        reseeded.erase(reseeded.begin() + static_cast<std::ptrdiff_t>(c));
        changed = true;
      }
    }
    if (changed) continue;

    double movement2 = 0.0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      std::vector<long double> acc(points[0].size(), 0.0L);
      for (std::size_t i = 0; i < points.size(); ++i)
        if (assignment[i] == c)
          for (std::size_t w = 0; w < acc.size(); ++w) acc[w] += points[i][w];
      Point mean(acc.size());
      for (std::size_t w = 0; w < acc.size(); ++w)
        mean[w] =
            static_cast<double>(acc[w] / static_cast<long double>(counts[c]));
      movement2 = std::max(movement2, squared_distance(mean, centers[c]));
      centers[c] = std::move(mean);
    }
    if (movement2 < tol2) break;
  }

  KMeansResult result;
  result.wcss = assign_nearest(points, centers, assignment);
  result.centers = std::move(centers);
  result.assignment = std::move(assignment);
  return result;
}

double bic_score(const PointMatrix& points, const PointMatrix& centers,
                 std::span<const std::uint32_t> assignment) {
  check_points(points, "bic_score");
  if (centers.empty()) throw UsageError("bic_score: no centers");
  for (const auto& c : centers)
    if (c.size() != points[0].size())
      throw UsageError("bic_score: center dimension mismatch");
  if (assignment.size() != points.size())
    throw UsageError("bic_score: assignment size mismatch");
  const auto R = static_cast<double>(points.size());
  const auto K = centers.size();
  const auto M = static_cast<double>(points[0].size());
  if (points.size() < K) return -kInf;

  std::vector<std::size_t> counts(K, 0);
  double wcss = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (assignment[i] >= K)
      throw UsageError("bic_score: assignment index out of range");
    ++counts[assignment[i]];
    wcss += squared_distance(points[i], centers[assignment[i]]);
  }

  const double dof = R - static_cast<double>(K);
  double sigma2 = dof > 0.0 ? wcss / dof : 0.0;
  if (sigma2 < kVarianceFloor) sigma2 = kVarianceFloor;

  double ll = -R * std::log(R) - 0.5 * R * M * std::log(2.0 * M_PI * sigma2) -
              0.5 * dof;
  for (auto c : counts)
    if (c > 0)
      ll += static_cast<double>(c) * std::log(static_cast<double>(c));

  const double params = static_cast<double>(K) * (M + 1.0);
  return ll - 0.5 * params * std::log(R);
}

std::pair<std::vector<std::uint32_t>, std::vector<double>> assign_proportions(
    const PointMatrix& points, const PointMatrix& centers) {
  check_points(points, "assign_proportions");
  if (centers.empty()) throw UsageError("assign_proportions: no centers");
  for (const auto& c : centers)
    if (c.size() != points[0].size())
      throw UsageError("assign_proportions: center dimension mismatch");
  std::vector<std::uint32_t> assignment(points.size());
  assign_nearest(points, centers, assignment);
  std::vector<double> proportions(centers.size(), 0.0);
  for (auto a : assignment) proportions[a] += 1.0;
  for (auto& p : proportions) p /= static_cast<double>(points.size());
  return {std::move(assignment), std::move(proportions)};
}

ClusterSet xmeans(const PointMatrix& points, const XMeansConfig& config) {
  config.validate();
  check_points(points, "xmeans");
  if (config.k_min > points.size())
    throw UsageError("xmeans: fewer points than k_min");

  Rng seed_rng(config.rng_seed);
  auto result = kmeans(points, config.k_min,
                       kmeans_pp_seeds(points, config.k_min, seed_rng),
                       config);

  for (std::uint64_t round = 0; result.centers.size() < config.k_max;
       ++round) {
    const auto k = result.centers.size();
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < points.size(); ++i)
      members[result.assignment[i]].push_back(i);

    struct SplitCandidate {
      std::size_t cluster;
      double gain;
      PointMatrix children;
    };
    std::vector<SplitCandidate> candidates;

    for (std::size_t c = 0; c < k; ++c) {
      if (members[c].size() < 2) continue;
      PointMatrix sub;
      sub.reserve(members[c].size());
      for (auto i : members[c]) sub.push_back(points[i]);

      Rng split_rng(splitmix64(config.rng_seed ^
                               (round * 0x9e3779b97f4a7c15ULL + c + 1)));
      auto local = kmeans(sub, 2, kmeans_pp_seeds(sub, 2, split_rng), config);
      if (local.centers.size() < 2) continue;  // split collapsed

      Point parent = centroid(points, members[c]);
      std::vector<std::uint32_t> all_first(sub.size(), 0);
      const double bic1 = bic_score(sub, {parent}, all_first);
      const double bic2 = bic_score(sub, local.centers, local.assignment);
      if (bic2 > bic1)
        candidates.push_back({c, bic2 - bic1, std::move(local.centers)});
    }
    if (candidates.empty()) break;

    std::sort(candidates.begin(), candidates.end(),
              [](const SplitCandidate& a, const SplitCandidate& b) {
                if (a.gain != b.gain) return a.gain > b.gain;
                return a.cluster < b.cluster;
              });
    std::vector<const PointMatrix*> split_children(k, nullptr);
    std::size_t budget = config.k_max - k;
    for (const auto& cand : candidates) {
      if (budget == 0) break;
      split_children[cand.cluster] = &cand.children;
      --budget;
    }

    PointMatrix next_centers;
    for (std::size_t c = 0; c < k; ++c) {
      if (split_children[c]) {
        next_centers.push_back((*split_children[c])[0]);
        next_centers.push_back((*split_children[c])[1]);
      } else {
        next_centers.push_back(result.centers[c]);
      }
    }
    const auto next_k = next_centers.size();
    result = kmeans(points, next_k, std::move(next_centers), config);
    if (result.centers.size() <= k) break;  // refinement collapsed the gains
  }

  // Mass vectors drift off the simplex as means of means; pull them back.
  for (auto& center : result.centers) {
    double sum = 0.0;
    for (double m : center) sum += m;
    if (!(sum > 0.0)) throw InternalError("xmeans: centroid mass vanished");
    for (auto& m : center) m /= sum;
  }

  ClusterSet set;
  set.centers = std::move(result.centers);
  for (;;) {
    auto [assignment, proportions] = assign_proportions(points, set.centers);
    std::size_t empty = set.centers.size();
    for (std::size_t c = 0; c < proportions.size(); ++c)
      if (proportions[c] == 0.0) {
        empty = c;
        break;
      }
    if (empty == set.centers.size() || set.centers.size() == 1) {
      set.assignment = std::move(assignment);
      set.proportions = std::move(proportions);
      break;
    }
    set.centers.erase(set.centers.begin() +
                      static_cast<std::ptrdiff_t>(empty));
  }
  return set;
}

}  // namespace edgesift
