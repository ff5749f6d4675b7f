#pragma once

#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "edgesift/graph.hpp"

namespace edgesift {

// Raw per-node samples for one (object type, relation). values[w] holds the
// samples of the relation's w-th attribute gathered from the node's adjacent
// edges; for temporal attributes it holds the interarrival times instead.
struct NodeAttributeVectors {
  NodeIndex node = 0;
  std::size_t edge_count = 0;
  std::vector<std::vector<double>> values;
};

struct AttributeRangeStats {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  std::size_t count = 0;

  void observe(double v) {
    if (v < min) min = v;
    if (v > max) max = v;
    ++count;
  }
  bool empty() const { return count == 0; }
};

struct RelationAggregate {
  std::uint32_t object_type = 0;
  std::uint32_t relation = 0;
  // Ascending node index; only nodes adjacent to at least one edge.
  std::vector<NodeAttributeVectors> nodes;
  // Per attribute. Non-temporal stats cover every edge once; temporal stats
  // cover the pooled interarrival times of this object type's nodes.
  std::vector<AttributeRangeStats> stats;

  const NodeAttributeVectors* find(NodeIndex v) const;
};

// Sorts ascending and first-differences; n timestamps give max(0, n-1)
// interarrival times. Zero gaps are kept.
std::vector<double> compute_iat(std::vector<double> timestamps);

// Gathers each node's adjacent-edge values for the relation. Directed
// relations: the source side collects outgoing edges, the target side
// incoming ones; when both sides have the same type a node collects both.
// Undirected relations collect at both endpoints (once for a self-loop).
RelationAggregate aggregate(const AttributedMultigraph& g,
                            std::string_view object_type,
                            std::string_view relation);

}  // namespace edgesift
