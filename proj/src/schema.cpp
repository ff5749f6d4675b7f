#include "edgesift/schema.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "edgesift/csv.hpp"
#include "json.hpp"

namespace edgesift {

using nlohmann::ordered_json;

std::string_view to_string(AttributeKind kind) {
  switch (kind) {
    case AttributeKind::categorical: return "categorical";
    case AttributeKind::numerical: return "numerical";
    case AttributeKind::temporal: return "temporal";
  }
  throw InternalError("unknown attribute kind");
}

std::size_t AttributeSpec::domain_index(std::string_view value) const {
  for (std::size_t i = 0; i < domain.size(); ++i)
    if (domain[i] == value) return i;
  return npos;
}

const AttributeSpec* RelationType::find_attribute(std::string_view n) const {
  for (const auto& a : attributes)
    if (a.name == n) return &a;
  return nullptr;
}

std::size_t RelationType::attribute_index(std::string_view n) const {
  for (std::size_t i = 0; i < attributes.size(); ++i)
    if (attributes[i].name == n) return i;
  return GraphSchema::npos;
}

std::size_t GraphSchema::object_type_index(std::string_view name) const {
  for (std::size_t i = 0; i < object_types.size(); ++i)
    if (object_types[i] == name) return i;
  return npos;
}

std::size_t GraphSchema::relation_index(std::string_view name) const {
  for (std::size_t i = 0; i < relations.size(); ++i)
    if (relations[i].name == name) return i;
  return npos;
}

const RelationType* GraphSchema::find_relation(std::string_view name) const {
  auto i = relation_index(name);
  return i == npos ? nullptr : &relations[i];
}

namespace {

AttributeKind parse_kind(const std::string& s, const std::string& path) {
  if (s == "categorical") return AttributeKind::categorical;
  if (s == "numerical") return AttributeKind::numerical;
  if (s == "temporal") return AttributeKind::temporal;
  throw SchemaError(path + ": unknown attribute kind '" + s +
                    "' (expected categorical, numerical, or temporal)");
}

std::string require_string(const ordered_json& obj, const char* key,
                           const std::string& path) {
  if (!obj.contains(key))
    throw SchemaError(path + ": missing required key '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_string())
    throw SchemaError(path + "." + key + ": expected a string");
  auto s = v.get<std::string>();
  if (s.empty()) throw SchemaError(path + "." + key + ": must not be empty");
  return s;
}

std::string domain_value_to_string(const ordered_json& v,
                                   const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer())
    return std::to_string(v.get<long long>());
  if (v.is_number_unsigned())
    return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return csv::format_double(v.get<double>());
  throw SchemaError(path + ": domain values must be strings or numbers");
}

AttributeSpec parse_attribute(const ordered_json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
  AttributeSpec attr;
  attr.name = require_string(j, "name", path);
  attr.kind = parse_kind(require_string(j, "kind", path), path + ".kind");
  const bool has_domain = j.contains("domain");
  if (attr.kind == AttributeKind::categorical) {
    if (!has_domain)
      throw SchemaError(path + ": categorical attribute '" + attr.name +
                        "' requires a domain");
    const auto& dom = j.at("domain");
    if (!dom.is_array() || dom.empty())
      throw SchemaError(path + ".domain: expected a non-empty array");
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      auto v = domain_value_to_string(
          dom[i], path + ".domain[" + std::to_string(i) + "]");
      if (!seen.insert(v).second)
        throw SchemaError(path + ".domain[" + std::to_string(i) +
                          "]: duplicate value '" + v + "'");
      attr.domain.push_back(std::move(v));
    }
  } else if (has_domain) {
    throw SchemaError(path + ".domain: only categorical attributes take a "
                      "declared domain");
  }
  return attr;
}

RelationType parse_relation(const ordered_json& j, const GraphSchema& schema,
                            const std::string& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
  RelationType rel;
  rel.name = require_string(j, "name", path);
  rel.source = require_string(j, "source", path);
  rel.target = require_string(j, "target", path);
  for (const char* key : {"source", "target"}) {
    const auto& type_name = key[0] == 's' ? rel.source : rel.target;
    if (schema.object_type_index(type_name) == GraphSchema::npos)
      throw SchemaError(path + "." + key + ": '" + type_name +
                        "' is not a declared object type");
  }
  if (j.contains("directed")) {
    if (!j.at("directed").is_boolean())
      throw SchemaError(path + ".directed: expected a boolean");
    rel.directed = j.at("directed").get<bool>();
  }
  if (!j.contains("attributes"))
    throw SchemaError(path + ": missing required key 'attributes'");
  const auto& attrs = j.at("attributes");
  if (!attrs.is_array() || attrs.empty())
    throw SchemaError(path + ".attributes: every relation needs at least one "
                      "attribute");
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    auto a = parse_attribute(attrs[i],
                             path + ".attributes[" + std::to_string(i) + "]");
    if (!names.insert(a.name).second)
      throw SchemaError(path + ".attributes[" + std::to_string(i) +
                        "]: duplicate attribute name '" + a.name + "'");
    rel.attributes.push_back(std::move(a));
  }
  return rel;
}

}  // namespace

GraphSchema parse_schema(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("schema is not valid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw SchemaError("schema: top level must be an object");

  GraphSchema schema;
  if (!doc.contains("object_types"))
    throw SchemaError("schema: missing required key 'object_types'");
  const auto& types = doc.at("object_types");
  if (!types.is_array() || types.empty())
    throw SchemaError("object_types: expected a non-empty array");
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (!types[i].is_string())
      throw SchemaError("object_types[" + std::to_string(i) +
                        "]: expected a string");
    auto name = types[i].get<std::string>();
    if (name.empty())
      throw SchemaError("object_types[" + std::to_string(i) +
                        "]: must not be empty");
    if (schema.object_type_index(name) != GraphSchema::npos)
      throw SchemaError("object_types[" + std::to_string(i) +
                        "]: duplicate object type '" + name + "'");
    schema.object_types.push_back(std::move(name));
  }

  if (!doc.contains("relations"))
    throw SchemaError("schema: missing required key 'relations'");
  const auto& rels = doc.at("relations");
  if (!rels.is_array())
    throw SchemaError("relations: expected an array");
  if (rels.empty()) throw SchemaError("relations: relation list empty");
  for (std::size_t i = 0; i < rels.size(); ++i) {
    auto rel = parse_relation(rels[i], schema,
                              "relations[" + std::to_string(i) + "]");
    if (schema.relation_index(rel.name) != GraphSchema::npos)
      throw SchemaError("relations[" + std::to_string(i) +
                        "]: duplicate relation name '" + rel.name + "'");
    schema.relations.push_back(std::move(rel));
  }
  return schema;
}

std::string schema_to_json(const GraphSchema& schema) {
  ordered_json doc;
  doc["object_types"] = schema.object_types;
  auto rels = ordered_json::array();
  for (const auto& rel : schema.relations) {
    ordered_json r;
    r["name"] = rel.name;
    r["source"] = rel.source;
    r["target"] = rel.target;
    r["directed"] = rel.directed;
    auto attrs = ordered_json::array();
    for (const auto& a : rel.attributes) {
      ordered_json aj;
      aj["name"] = a.name;
      aj["kind"] = std::string(to_string(a.kind));
      if (a.kind == AttributeKind::categorical) aj["domain"] = a.domain;
      attrs.push_back(std::move(aj));
    }
    r["attributes"] = std::move(attrs);
    rels.push_back(std::move(r));
  }
  doc["relations"] = std::move(rels);
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ValidationError("failed reading file: " + file.string());
  return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& file,
                     std::string_view content) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open file for writing: " +
                                  file.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw ValidationError("failed writing file: " + file.string());
}

GraphSchema load_schema(const std::filesystem::path& file) {
  try {
    return parse_schema(read_text_file(file));
  } catch (const SchemaError& e) {
    throw SchemaError(file.string() + ": " + e.what());
  }
}

}  // namespace edgesift
