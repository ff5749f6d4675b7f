#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "edgesift/schema.hpp"

namespace edgesift {

using NodeIndex = std::uint32_t;

struct EdgeRecord {
  std::uint32_t relation;  // index into schema().relations
  NodeIndex source;
  NodeIndex target;

  bool operator==(const EdgeRecord&) const = default;
};

// Heterogeneous multigraph with typed nodes and per-edge attribute values.
// Parallel edges and self-loops are allowed. Categorical values are stored
// as indices into the attribute's declared domain; numerical and temporal
// values are stored as-is. Each edge stores exactly the values of its
// relation's attributes, in declaration order.
class AttributedMultigraph {
 public:
  AttributedMultigraph() = default;
  explicit AttributedMultigraph(GraphSchema schema)
      : schema_(std::move(schema)) {}

  const GraphSchema& schema() const { return schema_; }
  std::size_t node_count() const { return node_ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  // Returns the node's index, creating it on first sight. `conflict` is set
  // when the id already exists under a different object type.
  NodeIndex intern_node(std::string_view id, std::uint32_t object_type,
                        bool& conflict);
  NodeIndex add_node(std::string_view id, std::uint32_t object_type);

  void add_edge(std::uint32_t relation, NodeIndex source, NodeIndex target,
                std::span<const double> values);

  const std::string& node_id(NodeIndex v) const { return node_ids_[v]; }
  std::uint32_t node_type(NodeIndex v) const { return node_types_[v]; }
  std::optional<NodeIndex> find_node(std::string_view id) const;

  const std::vector<EdgeRecord>& edges() const { return edges_; }
  std::span<const double> edge_values(std::size_t edge) const {
    return {values_.data() + value_offsets_[edge],
            values_.data() + value_offsets_[edge + 1]};
  }

  bool same_contents(const AttributedMultigraph& other) const;

 private:
  GraphSchema schema_;
  std::vector<std::string> node_ids_;
  std::vector<std::uint32_t> node_types_;
  std::unordered_map<std::string, NodeIndex> node_lookup_;
  std::vector<EdgeRecord> edges_;
  std::vector<std::size_t> value_offsets_{0};
  std::vector<double> values_;
};

// Edge CSV: header `relation,source,target,<attr>...`, where the attribute
// columns are the union over all relations; a row fills exactly its
// relation's attributes and leaves the rest empty. The optional nodes CSV
// (`node,object_type`) pre-declares nodes, letting isolated nodes exist.
AttributedMultigraph parse_graph_csv(std::string_view edge_csv,
                                     const GraphSchema& schema,
                                     std::string_view nodes_csv = {});
AttributedMultigraph load_graph(
    const std::filesystem::path& edge_file, const GraphSchema& schema,
    const std::optional<std::filesystem::path>& nodes_file = {});

std::string graph_to_csv(const AttributedMultigraph& g);
std::string nodes_to_csv(const AttributedMultigraph& g);
void save_graph(const AttributedMultigraph& g,
                const std::filesystem::path& edge_file);

// The canonical attribute column order for a schema: union of attribute
// names over relations, in first-declaration order.
std::vector<std::string> attribute_columns(const GraphSchema& schema);

}  // namespace edgesift
