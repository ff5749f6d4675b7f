#include "edgesift/graph.hpp"

#include <cmath>
#include <limits>

#include "edgesift/csv.hpp"

namespace edgesift {

NodeIndex AttributedMultigraph::intern_node(std::string_view id,
                                            std::uint32_t object_type,
                                            bool& conflict) {
  conflict = false;
  auto it = node_lookup_.find(std::string(id));
  if (it != node_lookup_.end()) {
    conflict = node_types_[it->second] != object_type;
    return it->second;
  }
  if (node_ids_.size() >= std::numeric_limits<NodeIndex>::max())
    throw InternalError("node index overflow");
  auto index = static_cast<NodeIndex>(node_ids_.size());
  node_ids_.emplace_back(id);
  node_types_.push_back(object_type);
  node_lookup_.emplace(node_ids_.back(), index);
  return index;
}

NodeIndex AttributedMultigraph::add_node(std::string_view id,
                                         std::uint32_t object_type) {
  bool conflict = false;
  auto v = intern_node(id, object_type, conflict);
  if (conflict)
    throw DataError("node '" + std::string(id) +
                    "' already declared with a different object type");
  return v;
}

void AttributedMultigraph::add_edge(std::uint32_t relation, NodeIndex source,
                                    NodeIndex target,
                                    std::span<const double> values) {
  if (relation >= schema_.relations.size())
    throw UsageError("add_edge: relation index out of range");
  const auto& rel = schema_.relations[relation];
  if (values.size() != rel.attributes.size())
    throw UsageError("add_edge: expected " +
                     std::to_string(rel.attributes.size()) + " values for '" +
                     rel.name + "', got " + std::to_string(values.size()));
  if (source >= node_count() || target >= node_count())
    throw UsageError("add_edge: node index out of range");
  edges_.push_back({relation, source, target});
  values_.insert(values_.end(), values.begin(), values.end());
  value_offsets_.push_back(values_.size());
}

std::optional<NodeIndex> AttributedMultigraph::find_node(
    std::string_view id) const {
  auto it = node_lookup_.find(std::string(id));
  if (it == node_lookup_.end()) return std::nullopt;
  return it->second;
}

bool AttributedMultigraph::same_contents(
    const AttributedMultigraph& other) const {
  return schema_ == other.schema_ && node_ids_ == other.node_ids_ &&
         node_types_ == other.node_types_ && edges_ == other.edges_ &&
         value_offsets_ == other.value_offsets_ && values_ == other.values_;
}

std::vector<std::string> attribute_columns(const GraphSchema& schema) {
  std::vector<std::string> cols;
  for (const auto& rel : schema.relations)
    for (const auto& attr : rel.attributes) {
      bool present = false;
      for (const auto& c : cols)
        if (c == attr.name) { present = true; break; }
      if (!present) cols.push_back(attr.name);
    }
  return cols;
}

namespace {

std::string line_ctx(const char* what, std::size_t line_no) {
  return std::string(what) + " line " + std::to_string(line_no);
}

double parse_attr_value(const AttributeSpec& attr, std::string_view text,
                        const std::string& ctx) {
  switch (attr.kind) {
    case AttributeKind::categorical: {
      auto idx = attr.domain_index(text);
      if (idx == AttributeSpec::npos)
        throw DataError(ctx + ": value '" + std::string(text) +
                        "' not in the domain of '" + attr.name + "'");
      return static_cast<double>(idx);
    }
    case AttributeKind::numerical: {
      double v = csv::parse_double(text, ctx + ", attribute '" + attr.name +
                                             "'");
      if (!std::isfinite(v))
        throw DataError(ctx + ": attribute '" + attr.name +
                        "' must be finite");
      return v;
    }
    case AttributeKind::temporal: {
      double v = csv::parse_double(text, ctx + ", attribute '" + attr.name +
                                             "'");
      if (!std::isfinite(v) || v < 0.0)
        throw DataError(ctx + ": timestamp '" + attr.name +
                        "' must be finite and non-negative");
      return v;
    }
  }
  throw InternalError("unknown attribute kind");
}

}  // namespace

AttributedMultigraph parse_graph_csv(std::string_view edge_csv,
                                     const GraphSchema& schema,
                                     std::string_view nodes_csv) {
  AttributedMultigraph g(schema);

  if (!nodes_csv.empty()) {
    auto lines = csv::split_lines(nodes_csv);
    if (lines.empty()) throw DataError("nodes file: empty");
    auto header = csv::split_row(lines[0]);
    if (header.size() != 2 || header[0] != "node" ||
        header[1] != "object_type")
      throw DataError("nodes file line 1: expected header 'node,object_type'");
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      auto row = csv::split_row(lines[i]);
      const auto ctx = line_ctx("nodes file", i + 1);
      if (row.size() != 2) throw DataError(ctx + ": expected 2 fields");
      if (row[0].empty()) throw DataError(ctx + ": empty node id");
      auto type = schema.object_type_index(row[1]);
      if (type == GraphSchema::npos)
        throw DataError(ctx + ": unknown object type '" + row[1] + "'");
      bool conflict = false;
      g.intern_node(row[0], static_cast<std::uint32_t>(type), conflict);
      if (conflict)
        throw DataError(ctx + ": node '" + row[0] +
                        "' already declared with a different object type");
    }
  }

  auto lines = csv::split_lines(edge_csv);
  if (lines.empty()) throw DataError("edge file: empty");
  auto header = csv::split_row(lines[0]);
  if (header.size() < 3 || header[0] != "relation" || header[1] != "source" ||
      header[2] != "target")
    throw DataError(
        "edge file line 1: header must start 'relation,source,target'");
  // Column index per attribute name, resolved once from the header.
  std::unordered_map<std::string, std::size_t> column_of;
  for (std::size_t c = 3; c < header.size(); ++c) {
    if (header[c].empty())
      throw DataError("edge file line 1: empty attribute column name");
    if (!column_of.emplace(header[c], c).second)
      throw DataError("edge file line 1: duplicate column '" + header[c] +
                      "'");
  }
  // Every attribute of every relation must have a column.
  for (const auto& rel : schema.relations)
    for (const auto& attr : rel.attributes)
      if (!column_of.count(attr.name))
        throw DataError("edge file line 1: missing column for attribute '" +
                        attr.name + "' of relation '" + rel.name + "'");

  std::vector<double> values;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto row = csv::split_row(lines[i]);
    const auto ctx = line_ctx("edge file", i + 1);
    if (row.size() != header.size())
      throw DataError(ctx + ": expected " + std::to_string(header.size()) +
                      " fields, got " + std::to_string(row.size()));
    auto rel_idx = schema.relation_index(row[0]);
    if (rel_idx == GraphSchema::npos)
      throw DataError(ctx + ": unknown relation '" + row[0] + "'");
    const auto& rel = schema.relations[rel_idx];
    if (row[1].empty() || row[2].empty())
      throw DataError(ctx + ": empty endpoint id");

    auto src_type = schema.object_type_index(rel.source);
    auto tgt_type = schema.object_type_index(rel.target);
    bool conflict = false;
    auto src = g.intern_node(row[1], static_cast<std::uint32_t>(src_type),
                             conflict);
    if (conflict)
      throw DataError(ctx + ": node '" + row[1] + "' is not a '" +
                      rel.source + "'");
    auto tgt = g.intern_node(row[2], static_cast<std::uint32_t>(tgt_type),
                             conflict);
    if (conflict)
      throw DataError(ctx + ": node '" + row[2] + "' is not a '" +
                      rel.target + "'");

    values.clear();
    for (const auto& attr : rel.attributes) {
      const auto col = column_of.at(attr.name);
      if (row[col].empty())
        throw DataError(ctx + ": missing value for attribute '" + attr.name +
                        "'");
      values.push_back(parse_attr_value(attr, row[col], ctx));
    }
    // Columns that belong to no attribute of this relation must stay empty.
    for (const auto& [name, col] : column_of) {
      if (!row[col].empty() && !rel.find_attribute(name))
        throw DataError(ctx + ": column '" + name +
                        "' must be empty for relation '" + rel.name + "'");
    }
    g.add_edge(static_cast<std::uint32_t>(rel_idx), src, tgt, values);
  }
  return g;
}

AttributedMultigraph load_graph(
    const std::filesystem::path& edge_file, const GraphSchema& schema,
    const std::optional<std::filesystem::path>& nodes_file) {
  std::string nodes_text;
  if (nodes_file) nodes_text = read_text_file(*nodes_file);
  return parse_graph_csv(read_text_file(edge_file), schema, nodes_text);
}

std::string graph_to_csv(const AttributedMultigraph& g) {
  const auto& schema = g.schema();
  auto cols = attribute_columns(schema);

  std::vector<std::string> header = {"relation", "source", "target"};
  header.insert(header.end(), cols.begin(), cols.end());
  std::string out = csv::join_row(header);

  // Per relation, the output column of each of its attributes.
  std::vector<std::vector<std::size_t>> col_of_attr(schema.relations.size());
  for (std::size_t r = 0; r < schema.relations.size(); ++r)
    for (const auto& attr : schema.relations[r].attributes)
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (cols[c] == attr.name) {
          col_of_attr[r].push_back(c);
          break;
        }

  std::vector<std::string> row(3 + cols.size());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    const auto& rel = schema.relations[edge.relation];
    for (auto& f : row) f.clear();
    row[0] = rel.name;
    row[1] = g.node_id(edge.source);
    row[2] = g.node_id(edge.target);
    auto values = g.edge_values(e);
    for (std::size_t w = 0; w < rel.attributes.size(); ++w) {
      const auto& attr = rel.attributes[w];
      auto c = 3 + col_of_attr[edge.relation][w];
      if (attr.kind == AttributeKind::categorical)
        row[c] = attr.domain[static_cast<std::size_t>(values[w])];
      else
        row[c] = csv::format_double(values[w]);
    }
    out += csv::join_row(row);
  }
  return out;
}

std::string nodes_to_csv(const AttributedMultigraph& g) {
  std::string out = "node,object_type\n";
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    out += csv::join_row({g.node_id(static_cast<NodeIndex>(v)),
                          g.schema().object_types[g.node_type(
                              static_cast<NodeIndex>(v))]});
  }
  return out;
}

void save_graph(const AttributedMultigraph& g,
                const std::filesystem::path& edge_file) {
  write_text_file(edge_file, graph_to_csv(g));
}

}  // namespace edgesift
