#include "edgesift/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "edgesift/csv.hpp"

namespace edgesift {

double IatLaw::sample(Rng& rng) const {
  switch (kind) {
    case Kind::lognormal:
      return rng.lognormal(log_mean, log_sigma);
    case Kind::fixed:
      return fixed_value;
    case Kind::mixture:
      return rng.uniform01() < lognormal_weight
                 ? rng.lognormal(log_mean, log_sigma)
                 : fixed_value;
  }
  throw InternalError("unknown interarrival law");
}

std::size_t ActivityLaw::sample(Rng& rng) const {
  switch (kind) {
    case Kind::fixed:
      return fixed;
    case Kind::uniform:
      return rng.uniform_int(lo, hi);
    case Kind::geometric:
      return rng.geometric(mean, cap);
  }
  throw InternalError("unknown activity law");
}

void GeneratorConfig::validate() const {
  if (mix.empty()) throw UsageError("generator: empty archetype mix");
  if (n_products == 0) throw UsageError("generator: need at least 1 product");
  for (const auto& share : mix) {
    const auto& a = share.archetype;
    if (a.name.empty()) throw UsageError("generator: unnamed archetype");
    if (a.rating_mass.size() != 5)
      throw UsageError("generator: archetype '" + a.name +
                       "' needs 5 rating masses");
    double sum = 0.0;
    for (double m : a.rating_mass) {
      if (m < 0.0)
        throw UsageError("generator: archetype '" + a.name +
                         "' has a negative rating mass");
      sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw UsageError("generator: archetype '" + a.name +
                       "' rating masses must sum to 1");
    if (a.iat.kind != IatLaw::Kind::lognormal && a.iat.fixed_value < 0.0)
      throw UsageError("generator: archetype '" + a.name +
                       "' has a negative fixed gap");
    if (a.iat.kind == IatLaw::Kind::mixture &&
        (a.iat.lognormal_weight < 0.0 || a.iat.lognormal_weight > 1.0))
      throw UsageError("generator: archetype '" + a.name +
                       "' mixture weight must be in [0, 1]");
    if (a.activity.kind == ActivityLaw::Kind::uniform &&
        (a.activity.lo < 1 || a.activity.hi < a.activity.lo))
      throw UsageError("generator: archetype '" + a.name +
                       "' has an empty activity range");
    if (a.activity.kind == ActivityLaw::Kind::fixed && a.activity.fixed < 1)
      throw UsageError("generator: archetype '" + a.name +
                       "' must rate at least once");
  }
  if (exact_counts) {
    if (total_users() == 0) throw UsageError("generator: zero users");
  } else {
    if (n_users == 0) throw UsageError("generator: zero users");
    double total = 0.0;
    for (const auto& share : mix) {
      if (share.proportion < 0.0)
        throw UsageError("generator: negative proportion");
      total += share.proportion;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw UsageError("generator: proportions must sum to 1");
  }
}

std::size_t GeneratorConfig::total_users() const {
  if (!exact_counts) return n_users;
  std::size_t total = 0;
  for (const auto& share : mix) total += share.count;
  return total;
}

GraphSchema rating_schema() {
  GraphSchema schema;
  schema.object_types = {"user", "product"};
  RelationType rates;
  rates.name = "rates";
  rates.source = "user";
  rates.target = "product";
  rates.directed = true;
  AttributeSpec stars;
  stars.name = "stars";
  stars.kind = AttributeKind::categorical;
  stars.domain = {"1", "2", "3", "4", "5"};
  AttributeSpec ts;
  ts.name = "ts";
  ts.kind = AttributeKind::temporal;
  rates.attributes = {std::move(stars), std::move(ts)};
  schema.relations = {std::move(rates)};
  return schema;
}

namespace {

// Review traffic starts in early 2011 and first edges spread over ~90 days.
constexpr std::uint64_t kEpochLo = 1'300'000'000;
constexpr std::uint64_t kEpochSpan = 7'776'000;

BehaviorArchetype honest_archetype(std::string name,
                                   std::vector<double> rating_mass,
                                   IatLaw iat, ActivityLaw activity) {
  BehaviorArchetype a;
  a.name = std::move(name);
  a.fraud = false;
  a.rating_mass = std::move(rating_mass);
  a.iat = iat;
  a.activity = activity;
  return a;
}

std::string padded_id(char prefix, std::size_t index, std::size_t width) {
  auto digits = std::to_string(index);
  std::string out(1, prefix);
  out.append(width > digits.size() ? width - digits.size() : 0, '0');
  out += digits;
  return out;
}

std::size_t id_width(std::size_t count) {
  std::size_t width = 1;
  for (std::size_t v = count > 0 ? count - 1 : 0; v >= 10; v /= 10) ++width;
  return width;
}

}  // namespace

GeneratorConfig GeneratorConfig::default_config() {
  GeneratorConfig config;
  config.seed = 0;
  config.n_products = 1000;
  config.exact_counts = true;

  IatLaw steady{IatLaw::Kind::lognormal, 13.9, 1.0, 0.0, 1.0};
  IatLaw bursty{IatLaw::Kind::mixture, 14.4, 0.9, 7200.0, 0.7};
  IatLaw critic_gap{IatLaw::Kind::lognormal, 13.2, 1.1, 0.0, 1.0};
  IatLaw fan_gap{IatLaw::Kind::lognormal, 13.5, 1.0, 0.0, 1.0};

  ActivityLaw casual{ActivityLaw::Kind::geometric, 1, 1, 1, 8.0, 150};
  ActivityLaw regular{ActivityLaw::Kind::geometric, 1, 1, 1, 12.0, 150};
  ActivityLaw light{ActivityLaw::Kind::geometric, 1, 1, 1, 5.0, 100};
  ActivityLaw devoted{ActivityLaw::Kind::geometric, 1, 1, 1, 10.0, 150};

  config.mix.push_back(
      {honest_archetype("steady", {0.15, 0.05, 0.05, 0.20, 0.55}, steady,
                        casual),
       0.0, 5500});
  config.mix.push_back(
      {honest_archetype("bimodal", {0.10, 0.10, 0.15, 0.25, 0.40}, bursty,
                        regular),
       0.0, 2500});
  config.mix.push_back(
      {honest_archetype("critic", {0.45, 0.25, 0.12, 0.10, 0.08}, critic_gap,
                        light),
       0.0, 1500});
  config.mix.push_back(
      {honest_archetype("enthusiast", {0.02, 0.02, 0.06, 0.15, 0.75}, fan_gap,
                        devoted),
       0.0, 500});

  BehaviorArchetype rapid;
  rapid.name = "rapid-fire";
  rapid.fraud = true;
  rapid.rating_mass = {0.0, 0.0, 0.0, 0.0, 1.0};
  rapid.iat = {IatLaw::Kind::fixed, 0.0, 1.0, 5.0, 0.0};
  rapid.activity = {ActivityLaw::Kind::uniform, 1, 200, 500, 1.0, 500};
  config.mix.push_back({std::move(rapid), 0.0, 100});
  return config;
}

GeneratorConfig GeneratorConfig::scaled(double factor) const {
  if (!(factor > 0.0)) throw UsageError("generator: scale must be positive");
  GeneratorConfig out = *this;
  out.n_products = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(
             static_cast<double>(n_products) * factor)));
  if (exact_counts) {
    for (auto& share : out.mix)
      share.count = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::llround(
                 static_cast<double>(share.count) * factor)));
  } else {
    out.n_users = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(
               static_cast<double>(n_users) * factor)));
  }
  return out;
}

LabeledGraph generate(const GeneratorConfig& config) {
  config.validate();
  const auto n_users = config.total_users();
  const auto n_products = config.n_products;

  LabeledGraph out;
  out.graph = AttributedMultigraph(rating_schema());
  auto& g = out.graph;

  const auto user_width = id_width(n_users);
  const auto product_width = id_width(n_products);

  Rng rng(config.seed);

  // Archetype per user: exact blocks, or one categorical draw each.
  std::vector<std::uint32_t> archetype_of(n_users);
  if (config.exact_counts) {
    std::size_t next = 0;
    for (std::size_t a = 0; a < config.mix.size(); ++a)
      for (std::size_t i = 0; i < config.mix[a].count; ++i)
        archetype_of[next++] = static_cast<std::uint32_t>(a);
  } else {
    std::vector<double> props;
    for (const auto& share : config.mix) props.push_back(share.proportion);
    for (auto& a : archetype_of)
      a = static_cast<std::uint32_t>(rng.categorical(props));
  }

  std::vector<NodeIndex> users(n_users);
  for (std::size_t u = 0; u < n_users; ++u)
    users[u] = g.add_node(padded_id('u', u, user_width), 0);
  std::vector<NodeIndex> products(n_products);
  for (std::size_t p = 0; p < n_products; ++p)
    products[p] = g.add_node(padded_id('p', p, product_width), 1);

  double values[2];
  for (std::size_t u = 0; u < n_users; ++u) {
    const auto& arch = config.mix[archetype_of[u]].archetype;
    const auto n_edges = arch.activity.sample(rng);
    double t = static_cast<double>(
        rng.uniform_int(kEpochLo, kEpochLo + kEpochSpan));
    for (std::size_t e = 0; e < n_edges; ++e) {
      if (e > 0) t += arch.iat.sample(rng);
      values[0] = static_cast<double>(rng.categorical(arch.rating_mass));
      values[1] = t;
      const auto p = products[rng.uniform_int(0, n_products - 1)];
      g.add_edge(0, users[u], p, values);
    }
  }

  out.labels.reserve(n_users + n_products);
  for (std::size_t u = 0; u < n_users; ++u) {
    const auto& arch = config.mix[archetype_of[u]].archetype;
    out.labels.emplace_back(g.node_id(users[u]),
                            arch.fraud ? "fraud:" + arch.name : "honest");
  }
  for (std::size_t p = 0; p < n_products; ++p)
    out.labels.emplace_back(g.node_id(products[p]), "honest");
  return out;
}

std::string labels_to_csv(const LabeledGraph& g) {
  std::string out = "node,label\n";
  for (const auto& [node, label] : g.labels)
    out += csv::join_row({node, label});
  return out;
}

std::unordered_map<std::string, std::string> parse_labels_csv(
    std::string_view text) {
  auto lines = csv::split_lines(text);
  if (lines.empty()) throw DataError("labels file: empty");
  auto header = csv::split_row(lines[0]);
  if (header.size() != 2 || header[0] != "node" || header[1] != "label")
    throw DataError("labels file line 1: expected header 'node,label'");
  std::unordered_map<std::string, std::string> labels;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto row = csv::split_row(lines[i]);
    const auto ctx = "labels file line " + std::to_string(i + 1);
    if (row.size() != 2) throw DataError(ctx + ": expected 2 fields");
    if (row[0].empty() || row[1].empty())
      throw DataError(ctx + ": empty field");
    if (!labels.emplace(row[0], row[1]).second)
      throw DataError(ctx + ": duplicate node '" + row[0] + "'");
  }
  return labels;
}

double precision_at_k(
    const AbnormalityRanking& ranking,
    const std::unordered_map<std::string, std::string>& labels,
    std::size_t k) {
  if (k == 0) throw UsageError("precision_at_k: k must be positive");
  if (k > ranking.entries.size())
    throw UsageError("precision_at_k: k exceeds the ranking length");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < k; ++i) {
    auto it = labels.find(ranking.entries[i].node);
    if (it == labels.end())
      throw ValidationError("precision_at_k: node '" +
                            ranking.entries[i].node + "' is unlabeled");
    if (it->second.starts_with("fraud")) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

AttributedMultigraph subsample_edges(const AttributedMultigraph& g,
                                     double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw UsageError("subsample_edges: fraction must be in (0, 1]");
  AttributedMultigraph out(g.schema());
  for (NodeIndex v = 0; v < g.node_count(); ++v)
    out.add_node(g.node_id(v), g.node_type(v));
  Rng rng(seed);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (fraction < 1.0 && rng.uniform01() >= fraction) continue;
    const auto& edge = g.edges()[e];
    out.add_edge(edge.relation, edge.source, edge.target, g.edge_values(e));
  }
  return out;
}

std::vector<BenchmarkRow> scaling_benchmark(const AttributedMultigraph& g,
                                            std::span<const double> fractions,
                                            const PipelineOptions& options,
                                            std::uint64_t subsample_seed) {
  if (fractions.empty())
    throw UsageError("scaling_benchmark: no fractions");
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] > 0.0) || fractions[i] > 1.0)
      throw UsageError("scaling_benchmark: fractions must be in (0, 1]");
    if (i > 0 && fractions[i] <= fractions[i - 1])
      throw UsageError("scaling_benchmark: fractions must be ascending");
  }
  std::vector<BenchmarkRow> rows;
  for (double f : fractions) {
    auto sample = f < 1.0 ? subsample_edges(g, f, subsample_seed) : g;
    const auto start = std::chrono::steady_clock::now();
    run_pipeline(sample, options);
    const auto stop = std::chrono::steady_clock::now();
    rows.push_back({sample.edge_count(),
                    std::chrono::duration<double>(stop - start).count()});
  }
  return rows;
}

std::string benchmark_to_csv(std::span<const BenchmarkRow> rows) {
  std::string out = "edges,seconds\n";
  for (const auto& row : rows) {
    out += std::to_string(row.edges);
    out += ',';
    out += csv::format_double(row.seconds);
    out += '\n';
  }
  return out;
}

double log_log_slope(std::span<const BenchmarkRow> rows) {
  if (rows.size() < 2)
    throw UsageError("log_log_slope: need at least two rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(rows.size());
  for (const auto& row : rows) {
    if (row.edges == 0 || !(row.seconds > 0.0))
      throw UsageError("log_log_slope: rows must be positive");
    const double x = std::log(static_cast<double>(row.edges));
    const double y = std::log(row.seconds);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0))
    throw UsageError("log_log_slope: degenerate edge counts");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace edgesift
