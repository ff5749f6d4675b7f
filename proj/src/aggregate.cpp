#include "edgesift/aggregate.hpp"

#include <algorithm>

namespace edgesift {

const NodeAttributeVectors* RelationAggregate::find(NodeIndex v) const {
  auto it = std::lower_bound(
      nodes.begin(), nodes.end(), v,
      [](const NodeAttributeVectors& a, NodeIndex b) { return a.node < b; });
  if (it == nodes.end() || it->node != v) return nullptr;
  return &*it;
}

std::vector<double> compute_iat(std::vector<double> timestamps) {
  if (timestamps.size() < 2) return {};
  std::sort(timestamps.begin(), timestamps.end());
  std::vector<double> iat(timestamps.size() - 1);
  for (std::size_t i = 1; i < timestamps.size(); ++i)
    iat[i - 1] = timestamps[i] - timestamps[i - 1];
  return iat;
}

RelationAggregate aggregate(const AttributedMultigraph& g,
                            std::string_view object_type,
                            std::string_view relation) {
  const auto& schema = g.schema();
  auto type_idx = schema.object_type_index(object_type);
  if (type_idx == GraphSchema::npos)
    throw UsageError("aggregate: unknown object type '" +
                     std::string(object_type) + "'");
  auto rel_idx = schema.relation_index(relation);
  if (rel_idx == GraphSchema::npos)
    throw UsageError("aggregate: unknown relation '" + std::string(relation) +
                     "'");
  const auto& rel = schema.relations[rel_idx];
  const bool at_source = schema.object_type_index(rel.source) == type_idx;
  const bool at_target = schema.object_type_index(rel.target) == type_idx;
  if (!at_source && !at_target)
    throw UsageError("aggregate: object type '" + std::string(object_type) +
                     "' is not an endpoint of relation '" +
                     std::string(relation) + "'");

  const auto n_attrs = rel.attributes.size();
  RelationAggregate agg;
  agg.object_type = static_cast<std::uint32_t>(type_idx);
  agg.relation = static_cast<std::uint32_t>(rel_idx);
  agg.stats.resize(n_attrs);

  // slot[v]: position of node v in agg.nodes, first-touch order.
  std::vector<std::int64_t> slot(g.node_count(), -1);
  auto collect = [&](NodeIndex v, std::span<const double> values) {
    if (slot[v] < 0) {
      slot[v] = static_cast<std::int64_t>(agg.nodes.size());
      agg.nodes.push_back({v, 0, std::vector<std::vector<double>>(n_attrs)});
    }
    auto& entry = agg.nodes[static_cast<std::size_t>(slot[v])];
    ++entry.edge_count;
    for (std::size_t w = 0; w < n_attrs; ++w)
      entry.values[w].push_back(values[w]);
  };

  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    if (edge.relation != rel_idx) continue;
    auto values = g.edge_values(e);
    if (at_source) collect(edge.source, values);
    if (at_target) {
      // An undirected self-loop is one adjacency; a directed one is both an
      // outgoing and an incoming edge.
      const bool dup = !rel.directed && at_source && edge.source == edge.target;
      if (!dup) collect(edge.target, values);
    }
    for (std::size_t w = 0; w < n_attrs; ++w)
      if (rel.attributes[w].kind != AttributeKind::temporal)
        agg.stats[w].observe(values[w]);
  }

  std::sort(agg.nodes.begin(), agg.nodes.end(),
            [](const NodeAttributeVectors& a, const NodeAttributeVectors& b) {
              return a.node < b.node;
            });

  for (std::size_t w = 0; w < n_attrs; ++w) {
    if (rel.attributes[w].kind != AttributeKind::temporal) continue;
    for (auto& entry : agg.nodes) {
      entry.values[w] = compute_iat(std::move(entry.values[w]));
      for (double gap : entry.values[w]) agg.stats[w].observe(gap);
    }
  }
  return agg;
}

}  // namespace edgesift
