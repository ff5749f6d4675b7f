#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "edgesift/errors.hpp"

namespace edgesift {

enum class AttributeKind { categorical, numerical, temporal };

std::string_view to_string(AttributeKind kind);

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::categorical;
  // Categorical only: the ordered set of admissible values.
  std::vector<std::string> domain;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t domain_index(std::string_view value) const;

  bool operator==(const AttributeSpec&) const = default;
};

struct RelationType {
  std::string name;
  std::string source;
  std::string target;
  bool directed = false;
  std::vector<AttributeSpec> attributes;

  const AttributeSpec* find_attribute(std::string_view name) const;
  std::size_t attribute_index(std::string_view name) const;  // npos if absent

  bool operator==(const RelationType&) const = default;
};

struct GraphSchema {
  std::vector<std::string> object_types;
  std::vector<RelationType> relations;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t object_type_index(std::string_view name) const;  // npos if absent
  std::size_t relation_index(std::string_view name) const;     // npos if absent
  const RelationType* find_relation(std::string_view name) const;

  bool operator==(const GraphSchema&) const = default;
};

// Parses and validates a schema document. Error messages name the offending
// path within the document.
GraphSchema parse_schema(const std::string& json_text);
GraphSchema load_schema(const std::filesystem::path& file);
std::string schema_to_json(const GraphSchema& schema);

std::string read_text_file(const std::filesystem::path& file);
void write_text_file(const std::filesystem::path& file,
                     std::string_view content);

}  // namespace edgesift
