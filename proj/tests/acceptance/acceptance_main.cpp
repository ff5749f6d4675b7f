// Acceptance gate: one line per criterion, [PASS]/[FAIL], nonzero exit when
// anything fails. Run with --cli <path> to exercise the installed binary in
// the determinism check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "edgesift/aggregate.hpp"
#include "edgesift/cluster.hpp"
#include "edgesift/discretize.hpp"
#include "edgesift/graph.hpp"
#include "edgesift/pipeline.hpp"
#include "edgesift/rank.hpp"
#include "edgesift/rng.hpp"
#include "edgesift/schema.hpp"
#include "edgesift/score.hpp"
#include "edgesift/synth.hpp"

namespace fs = std::filesystem;
using namespace edgesift;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  std::string detail;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (first_failure.empty()) first_failure = what;
    }
  }
};

int g_failed_criteria = 0;

void run_criterion(const std::string& name,
                   const std::function<void(Criterion&)>& body) {
  Criterion c;
  const auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s", seconds);
  if (c.failures == 0) {
    std::printf("[PASS] %s (%s%s%s)\n", name.c_str(), c.detail.c_str(),
                c.detail.empty() ? "" : ", ", timing);
  } else {
    ++g_failed_criteria;
    std::printf("[FAIL] %s (%zu/%zu checks failed, %s): %s\n", name.c_str(),
                c.failures, c.checks, timing, c.first_failure.c_str());
  }
  std::fflush(stdout);
}

std::vector<double> random_distribution(Rng& rng, std::size_t d,
                                        double floor = 0.01) {
  std::vector<double> p(d);
  double total = 0.0;
  for (auto& m : p) {
    m = floor + rng.uniform01();
    total += m;
  }
  for (auto& m : p) m /= total;
  return p;
}

// Direct-summation reference in extended precision.
long double kl_reference(const std::vector<double>& p,
                         const std::vector<double>& q, double eps) {
  const long double denom = 1.0L + static_cast<long double>(q.size()) *
                                       static_cast<long double>(eps);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    const long double pi = p[i];
    long double qi = q[i];
    if (eps > 0.0) qi = (qi + static_cast<long double>(eps)) / denom;
    sum += pi * (std::log2(pi) - std::log2(qi));
  }
  return sum;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---- criterion bodies -----------------------------------------------------

void criterion_kl_reference(Criterion& c) {
  const std::size_t dims[] = {2, 5, 20};
  Rng rng(2024);
  double max_err = 0.0;
  const auto start = Clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    const auto d = dims[trial % 3];
    auto p = random_distribution(rng, d);
    auto q = random_distribution(rng, d);

    for (double eps : {0.0, 1e-9}) {
      const double got = kl_divergence(p, q, eps);
      const double want = static_cast<double>(kl_reference(p, q, eps));
      const double err = std::abs(got - want);
      max_err = std::max(max_err, err);
      c.expect(err <= 1e-9, "mismatch vs reference: " + format_value(err));
      c.expect(got >= 0.0, "negative divergence: " + format_value(got));
      c.expect(std::isfinite(got), "non-finite divergence");
    }
    c.expect(kl_divergence(p, p) == 0.0, "KL(p||p) != 0");
  }
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  c.expect(seconds < 5.0, "too slow: " + format_value(seconds) + " s");
  c.detail = "1000 pairs, max err " + format_value(max_err);
}

void criterion_divergence_properties(Criterion& c) {
  Rng rng(77);
  // matching the profile never scores above deviating from it
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + rng.uniform_int(0, 18);
    auto model = random_distribution(rng, d);
    auto deviant = random_distribution(rng, d);
    const std::size_t n = 1 + rng.uniform_int(0, 99);
    DiscreteDistribution match{model, n};
    DiscreteDistribution other{deviant, n};
    const double s_match = score_base(match, model);
    const double s_other = score_base(other, model);
    c.expect(s_match == 0.0, "self-match not zero");
    c.expect(s_match <= s_other, "match outscored a deviant");
  }
  // same habit, more activity, proportionally more suspicion
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + rng.uniform_int(0, 18);
    auto model = random_distribution(rng, d);
    auto habit = random_distribution(rng, d);
    const std::size_t n1 = 1 + rng.uniform_int(0, 99);
    const std::size_t n2 = n1 + 1 + rng.uniform_int(0, 99);
    DiscreteDistribution lo{habit, n1};
    DiscreteDistribution hi{habit, n2};
    const double s_lo = score_base(lo, model);
    const double s_hi = score_base(hi, model);
    if (kl_divergence(habit, model) == 0.0) continue;
    c.expect(s_lo < s_hi, "more activity did not raise the score");
    DiscreteDistribution twice{habit, 2 * n1};
    c.expect(score_base(twice, model) == 2.0 * s_lo,
             "score not linear in the sample count");
  }
  // conforming to the bigger cluster is the safer place to be
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + rng.uniform_int(0, 18);
    auto c1 = random_distribution(rng, d);
    auto c2 = c1;
    std::reverse(c2.begin(), c2.end());
    if (kl_divergence(c1, c2) == 0.0 || kl_divergence(c2, c1) == 0.0)
      continue;
    const double rho1 = 0.6 + 0.35 * rng.uniform01();
    PointMatrix centers = {c1, c2};
    std::vector<double> props = {rho1, 1.0 - rho1};
    const std::size_t n = 1 + rng.uniform_int(0, 99);
    DiscreteDistribution major{c1, n};
    DiscreteDistribution minor{c2, n};
    const double s_major = score_multifaceted(major, centers, props);
    const double s_minor = score_multifaceted(minor, centers, props);
    c.expect(s_major < s_minor,
             "majority conformer outscored the minority one");
  }
  c.detail = "3 properties x 1000 instances";
}

AttributeModelEntry model_entry_for(const std::string& relation,
                                    const std::string& attribute,
                                    PointMatrix centers,
                                    std::vector<double> proportions) {
  AttributeModelEntry e;
  e.object_type = "user";
  e.relation = relation;
  e.attribute = attribute;
  e.kind = AttributeKind::categorical;
  e.bins.kind = BinKind::categorical;
  e.bins.bins = centers[0].size();
  for (std::size_t i = 0; i < centers[0].size(); ++i)
    e.bins.categories.push_back(std::to_string(i));
  e.centers = std::move(centers);
  e.proportions = std::move(proportions);
  return e;
}

void criterion_score_reduction(Criterion& c) {
  Rng rng(4242);
  double max_err = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + rng.uniform_int(0, 6);
    auto center = random_distribution(rng, d);
    auto habit = random_distribution(rng, d);
    const std::size_t n = 1 + rng.uniform_int(0, 49);
    DiscreteDistribution p{habit, n};

    // one cluster: the mixture collapses to the single-model score
    PointMatrix single = {center};
    std::vector<double> all = {1.0};
    c.expect(score_multifaceted(p, single, all) == score_base(p, center),
             "single-cluster mixture != base score");

    // one (relation, attribute): the unified score is that mixture term
    auto clusters = PointMatrix{center, random_distribution(rng, d)};
    const double rho = rng.uniform01();
    std::vector<double> props = {rho, 1.0 - rho};
    auto entry = model_entry_for("rates", "stars", clusters, props);
    std::vector<double> samples;
    for (std::size_t i = 0; i < p.masses.size(); ++i) {
      const auto count = static_cast<std::size_t>(
          std::llround(p.masses[i] * static_cast<double>(n)));
      for (std::size_t j = 0; j < count; ++j)
        samples.push_back(static_cast<double>(i));
    }
    auto binned = bin_and_normalize(samples, entry.bins);
    std::vector<ScorePart> one_part = {{&samples, &entry}};
    auto unified_one = score_unified("v", one_part, 0.0, {samples.size()});
    const double mf = score_multifaceted(binned, clusters, props);
    c.expect(unified_one.total == mf,
             "unified single-attribute score != mixture score");

    // several relations: the unified score is the sum of the per-relation
    // single-attribute scores
    auto entry2 =
        model_entry_for("buys", "amount",
                        PointMatrix{random_distribution(rng, d)},
                        std::vector<double>{1.0});
    std::vector<double> samples2;
    for (int i = 0; i < 30; ++i)
      samples2.push_back(
          static_cast<double>(rng.uniform_int(0, d - 1)));
    std::vector<ScorePart> two_parts = {{&samples, &entry},
                                        {&samples2, &entry2}};
    auto unified_two =
        score_unified("v", two_parts, 0.0, {samples.size(), samples2.size()});
    const double sum_of_parts =
        attribute_contribution(samples, entry, 0.0) +
        attribute_contribution(samples2, entry2, 0.0);
    const double err = std::abs(unified_two.total - sum_of_parts);
    max_err = std::max(max_err, err);
    c.expect(err <= 1e-9, "unified multi-relation sum off by " +
                              format_value(err));
  }
  c.detail = "200 instances, max err " + format_value(max_err);
}

void criterion_mixture_expectation(Criterion& c) {
  Rng rng(31337);
  double max_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + rng.uniform_int(0, 3);      // <= 5 bins
    const std::size_t k = 1 + rng.uniform_int(0, 3);      // <= 4 clusters
    PointMatrix centers;
    for (std::size_t g = 0; g < k; ++g)
      centers.push_back(random_distribution(rng, d));
    auto props = random_distribution(rng, k);
    auto habit = random_distribution(rng, d);
    const std::size_t n = 1 + rng.uniform_int(0, 49);
    DiscreteDistribution p{habit, n};

    const double mf = score_multifaceted(p, centers, props, 1e-9);
    double expectation = 0.0;
    for (std::size_t g = 0; g < k; ++g)
      expectation += props[g] * score_base(p, centers[g], 1e-9);
    const double err = std::abs(mf - expectation);
    max_err = std::max(max_err, err);
    c.expect(err <= 1e-12,
             "mixture differs from its expectation by " + format_value(err));
  }
  c.detail = "100 instances, max err " + format_value(max_err);
}

void criterion_cluster_recovery(Criterion& c) {
  const PointMatrix means = {
      {0.84, 0.04, 0.04, 0.04, 0.04},
      {0.04, 0.04, 0.04, 0.04, 0.84},
      {0.04, 0.04, 0.84, 0.04, 0.04},
  };
  std::size_t recovered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(9000 + seed);
    PointMatrix points;
    for (const auto& mean : means) {
      for (int i = 0; i < 60; ++i) {
        // zero-sum noise keeps the point a mass vector
        Point noise(mean.size());
        double shift = 0.0;
        for (auto& v : noise) {
          v = 0.01 * rng.normal();
          shift += v;
        }
        shift /= static_cast<double>(noise.size());
        Point p(mean.size());
        double total = 0.0;
        for (std::size_t w = 0; w < p.size(); ++w) {
          p[w] = std::max(0.0, mean[w] + noise[w] - shift);
          total += p[w];
        }
        for (auto& v : p) v /= total;
        points.push_back(std::move(p));
      }
    }
    XMeansConfig cfg;
    cfg.k_max = 10;
    cfg.rng_seed = seed;
    auto set = xmeans(points, cfg);
    bool ok = set.size() == 3;
    if (ok)
      for (const auto& mean : means) {
        double best = 1e9;
        for (const auto& center : set.centers)
          best = std::min(best,
                          std::sqrt(squared_distance(mean, center)));
        if (best > 0.05) ok = false;
      }
    if (ok) ++recovered;
  }
  c.expect(recovered >= 95, "recovered " + std::to_string(recovered) +
                                "/100 seed runs (need 95)");

  std::size_t singletons = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PointMatrix same(50, Point{0.2, 0.3, 0.5});
    XMeansConfig cfg;
    cfg.rng_seed = seed;
    if (xmeans(same, cfg).size() == 1) ++singletons;
  }
  c.expect(singletons == 100, "identical points split in " +
                                  std::to_string(100 - singletons) +
                                  " seed runs");
  c.detail = "3-habit recovery " + std::to_string(recovered) +
             "/100, identical-point collapse " + std::to_string(singletons) +
             "/100";
}

void criterion_fraud_recovery(Criterion& c) {
  const auto start = Clock::now();
  auto labeled = generate(GeneratorConfig::default_config());
  PipelineOptions options;
  auto rankings = run_pipeline(labeled.graph, options);
  const auto* users = &rankings[0];
  for (const auto& r : rankings)
    if (r.object_type == "user") users = &r;
  std::unordered_map<std::string, std::string> labels(
      labeled.labels.begin(), labeled.labels.end());
  const double p100 = precision_at_k(*users, labels, 100);
  const double p50 = precision_at_k(*users, labels, 50);
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  c.expect(p100 >= 0.95, "precision@100 = " + format_value(p100));
  c.expect(p50 >= 0.98, "precision@50 = " + format_value(p50));
  c.expect(seconds < 60.0, "end-to-end took " + format_value(seconds) + " s");
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "%zu edges, p@100 %.3f, p@50 %.3f", labeled.graph.edge_count(),
                p100, p50);
  c.detail = buf;
}

void criterion_scaling(Criterion& c) {
  const auto start = Clock::now();
  auto config = GeneratorConfig::default_config().scaled(9.0);
  config.seed = 1;
  auto labeled = generate(config);
  c.expect(labeled.graph.edge_count() >= 900'000,
           "graph too small: " + std::to_string(labeled.graph.edge_count()));

  const std::vector<double> fractions = {0.1, 0.2, 0.3, 0.4, 0.5,
                                         0.6, 0.7, 0.8, 0.9, 1.0};
  PipelineOptions options;
  auto rows = scaling_benchmark(labeled.graph, fractions, options, 5);
  const double slope = log_log_slope(rows);
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  c.expect(slope <= 1.2, "log-log slope " + format_value(slope));
  c.expect(seconds < 900.0, "benchmark took " + format_value(seconds) + " s");
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu edges full size, slope %.3f",
                rows.back().edges, slope);
  c.detail = buf;
}

std::string read_or_empty(const fs::path& file) {
  std::error_code ec;
  if (!fs::exists(file, ec)) return {};
  return read_text_file(file);
}

void criterion_determinism(Criterion& c, const std::string& cli) {
  const auto dir = fs::temp_directory_path() / "edgesift_acceptance_det";
  fs::remove_all(dir);
  fs::create_directories(dir);

  auto config = GeneratorConfig::default_config().scaled(0.02);
  config.seed = 11;
  auto labeled = generate(config);
  write_text_file(dir / "schema.json", schema_to_json(labeled.graph.schema()));
  save_graph(labeled.graph, dir / "edges.csv");
  write_text_file(dir / "nodes.csv", nodes_to_csv(labeled.graph));

  auto run = [&](const fs::path& out_dir) {
    if (!cli.empty()) {
      std::ostringstream cmd;
      cmd << cli << " score --schema " << (dir / "schema.json").string()
          << " --edges " << (dir / "edges.csv").string() << " --nodes "
          << (dir / "nodes.csv").string() << " --out-dir " << out_dir.string()
          << " --seed 7 2>/dev/null";
      return std::system(cmd.str().c_str()) == 0;
    }
    ScoreCommandConfig cfg;
    cfg.schema_file = dir / "schema.json";
    cfg.edge_file = dir / "edges.csv";
    cfg.nodes_file = dir / "nodes.csv";
    cfg.out_dir = out_dir;
    cfg.options.xmeans.rng_seed = 7;
    run_score_command(cfg);
    return true;
  };

  c.expect(run(dir / "run1"), "first run failed");
  c.expect(run(dir / "run2"), "second run failed");
  for (const char* name : {"ranking_user.csv", "ranking_product.csv",
                           "cluster_model.json", "cluster_profiles.csv"}) {
    auto a = read_or_empty(dir / "run1" / name);
    auto b = read_or_empty(dir / "run2" / name);
    c.expect(!a.empty(), std::string(name) + " missing");
    c.expect(a == b, std::string(name) + " differs between runs");
  }
  fs::remove_all(dir);
  c.detail = cli.empty() ? "library runs" : "cli runs";
}

void criterion_binning_rule(Criterion& c) {
  Rng rng(555);
  AttributeSpec attr;
  attr.name = "x";
  attr.kind = AttributeKind::numerical;
  for (int trial = 0; trial < 1000; ++trial) {
    double min = std::pow(10.0, rng.uniform(-4.0, 6.0));
    if (trial % 10 == 0) min = 0.0;
    const double ratio = std::pow(10.0, rng.uniform(-2.0, 4.0));
    const double max = min > 0.0 ? min * (1.0 + ratio) : ratio;
    AttributeRangeStats stats;
    stats.observe(min);
    stats.observe(max);

    auto spec = choose_binning(attr, stats, 20);
    const bool expect_log = max >= 10.0 * std::max(min, 1.0);
    if (!spec.degenerate)
      c.expect(spec.kind ==
                   (expect_log ? BinKind::logarithmic : BinKind::linear),
               "spacing rule missed at min=" + format_value(min) +
                   " max=" + format_value(max));

    for (int i = 0; i < 50; ++i) {
      double v = min + (max - min) * rng.uniform01();
      if (i == 0) v = min;
      if (i == 1) v = max;
      const auto bin = spec.index_of(v);
      c.expect(bin < spec.size(), "bin index out of range");
      if (spec.degenerate || spec.kind == BinKind::categorical) continue;
      if (v < spec.boundaries.front()) {
        c.expect(bin == 0, "sub-floor value escaped bin 0");
      } else {
        c.expect(v >= spec.boundaries[bin], "value below its bin");
        if (bin + 1 < spec.size())
          c.expect(v < spec.boundaries[bin + 1], "value above its bin");
        else
          c.expect(v <= spec.boundaries.back(), "value above the last bin");
      }
    }
    c.expect(spec.index_of(max) + 1 == spec.size(),
             "max not in the last bin");
  }
  c.detail = "1000 ranges x 50 values";
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

  run_criterion("kl-reference", criterion_kl_reference);
  run_criterion("divergence-properties", criterion_divergence_properties);
  run_criterion("score-reduction", criterion_score_reduction);
  run_criterion("mixture-expectation", criterion_mixture_expectation);
  run_criterion("cluster-recovery", criterion_cluster_recovery);
  run_criterion("fraud-recovery", criterion_fraud_recovery);
  run_criterion("scaling", criterion_scaling);
  run_criterion("determinism",
                [&](Criterion& c) { criterion_determinism(c, cli); });
  run_criterion("binning-rule", criterion_binning_rule);

  if (g_failed_criteria == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", g_failed_criteria);
  return 1;
}
