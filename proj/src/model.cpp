#include "edgesift/model.hpp"

#include <cmath>

#include "edgesift/csv.hpp"
#include "edgesift/schema.hpp"
#include "json.hpp"

namespace edgesift {

using nlohmann::ordered_json;

const AttributeModelEntry* ClusterModel::find(std::string_view object_type,
                                              std::string_view relation,
                                              std::string_view attribute) const {
  for (const auto& e : entries)
    if (e.object_type == object_type && e.relation == relation &&
        e.attribute == attribute)
      return &e;
  return nullptr;
}

namespace {

AttributeKind kind_from_string(const std::string& s, const std::string& path) {
  if (s == "categorical") return AttributeKind::categorical;
  if (s == "numerical") return AttributeKind::numerical;
  if (s == "temporal") return AttributeKind::temporal;
  throw ValidationError(path + ": unknown attribute kind '" + s + "'");
}

BinKind bin_kind_from_string(const std::string& s, const std::string& path) {
  if (s == "categorical") return BinKind::categorical;
  if (s == "linear") return BinKind::linear;
  if (s == "logarithmic") return BinKind::logarithmic;
  throw ValidationError(path + ": unknown bin kind '" + s + "'");
}

ordered_json bins_to_json(const BinSpec& bins) {
  ordered_json j;
  j["kind"] = std::string(to_string(bins.kind));
  if (bins.kind == BinKind::categorical) {
    j["categories"] = bins.categories;
  } else {
    j["bins"] = bins.bins;
    j["boundaries"] = bins.boundaries;
    j["degenerate"] = bins.degenerate;
  }
  return j;
}

BinSpec bins_from_json(const ordered_json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path + ": expected an object");
  BinSpec bins;
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw ValidationError(path + ".kind: expected a string");
  bins.kind = bin_kind_from_string(j.at("kind").get<std::string>(),
                                   path + ".kind");
  if (bins.kind == BinKind::categorical) {
    if (!j.contains("categories") || !j.at("categories").is_array() ||
        j.at("categories").empty())
      throw ValidationError(path + ".categories: expected a non-empty array");
    for (const auto& c : j.at("categories")) {
      if (!c.is_string())
        throw ValidationError(path + ".categories: expected strings");
      bins.categories.push_back(c.get<std::string>());
    }
    bins.bins = bins.categories.size();
    return bins;
  }
  if (!j.contains("bins") || !j.at("bins").is_number_unsigned())
    throw ValidationError(path + ".bins: expected a non-negative integer");
  bins.bins = j.at("bins").get<std::size_t>();
  if (bins.bins == 0) throw ValidationError(path + ".bins: must be positive");
  if (!j.contains("boundaries") || !j.at("boundaries").is_array())
    throw ValidationError(path + ".boundaries: expected an array");
  for (const auto& b : j.at("boundaries")) {
    if (!b.is_number())
      throw ValidationError(path + ".boundaries: expected numbers");
    bins.boundaries.push_back(b.get<double>());
  }
  if (bins.boundaries.size() != bins.bins + 1)
    throw ValidationError(path + ".boundaries: expected " +
                          std::to_string(bins.bins + 1) + " edges");
  for (std::size_t i = 0; i + 1 < bins.boundaries.size(); ++i)
    if (bins.boundaries[i] > bins.boundaries[i + 1])
      throw ValidationError(path + ".boundaries: not ascending");
  if (j.contains("degenerate")) {
    if (!j.at("degenerate").is_boolean())
      throw ValidationError(path + ".degenerate: expected a boolean");
    bins.degenerate = j.at("degenerate").get<bool>();
  }
  return bins;
}

}  // namespace

std::string ClusterModel::to_json() const {
  ordered_json doc;
  auto models = ordered_json::array();
  for (const auto& e : entries) {
    ordered_json m;
    m["object_type"] = e.object_type;
    m["relation"] = e.relation;
    m["attribute"] = e.attribute;
    m["kind"] = std::string(to_string(e.kind));
    m["bins"] = bins_to_json(e.bins);
    m["centers"] = e.centers;
    m["proportions"] = e.proportions;
    models.push_back(std::move(m));
  }
  doc["models"] = std::move(models);
  return doc.dump(2) + "\n";
}

ClusterModel ClusterModel::from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("model is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("models") ||
      !doc.at("models").is_array())
    throw ValidationError("model: expected an object with a 'models' array");

  ClusterModel model;
  const auto& models = doc.at("models");
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto path = "models[" + std::to_string(i) + "]";
    const auto& m = models[i];
    if (!m.is_object()) throw ValidationError(path + ": expected an object");
    AttributeModelEntry e;
    for (const char* key : {"object_type", "relation", "attribute", "kind"}) {
      if (!m.contains(key) || !m.at(key).is_string())
        throw ValidationError(path + "." + key + ": expected a string");
    }
    e.object_type = m.at("object_type").get<std::string>();
    e.relation = m.at("relation").get<std::string>();
    e.attribute = m.at("attribute").get<std::string>();
    e.kind = kind_from_string(m.at("kind").get<std::string>(), path + ".kind");
    if (!m.contains("bins"))
      throw ValidationError(path + ": missing 'bins'");
    e.bins = bins_from_json(m.at("bins"), path + ".bins");
    if (!m.contains("centers") || !m.at("centers").is_array())
      throw ValidationError(path + ".centers: expected an array");
    for (const auto& c : m.at("centers")) {
      if (!c.is_array())
        throw ValidationError(path + ".centers: expected arrays of numbers");
      Point center;
      for (const auto& v : c) {
        if (!v.is_number())
          throw ValidationError(path + ".centers: expected numbers");
        center.push_back(v.get<double>());
      }
      if (center.size() != e.bins.size())
        throw ValidationError(path + ".centers: center size " +
                              std::to_string(center.size()) +
                              " does not match bin count " +
                              std::to_string(e.bins.size()));
      double sum = 0.0;
      for (double v : center) {
        if (v < 0.0)
          throw ValidationError(path + ".centers: negative mass");
        sum += v;
      }
      if (std::abs(sum - 1.0) > 1e-6)
        throw ValidationError(path + ".centers: masses must sum to 1");
      center.shrink_to_fit();
      e.centers.push_back(std::move(center));
    }
    if (!m.contains("proportions") || !m.at("proportions").is_array())
      throw ValidationError(path + ".proportions: expected an array");
    for (const auto& p : m.at("proportions")) {
      if (!p.is_number())
        throw ValidationError(path + ".proportions: expected numbers");
      e.proportions.push_back(p.get<double>());
    }
    if (e.proportions.size() != e.centers.size())
      throw ValidationError(path +
                            ".proportions: size does not match centers");
    if (!e.centers.empty()) {
      double sum = 0.0;
      for (double p : e.proportions) {
        if (p < 0.0)
          throw ValidationError(path + ".proportions: negative proportion");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-6)
        throw ValidationError(path + ".proportions: must sum to 1");
    }
    if (model.find(e.object_type, e.relation, e.attribute))
      throw ValidationError(path + ": duplicate entry for (" + e.object_type +
                            ", " + e.relation + ", " + e.attribute + ")");
    model.entries.push_back(std::move(e));
  }
  return model;
}

ClusterModel ClusterModel::load(const std::filesystem::path& file) {
  try {
    return from_json(read_text_file(file));
  } catch (const ValidationError& e) {
    throw ValidationError(file.string() + ": " + e.what());
  }
}

void ClusterModel::save(const std::filesystem::path& file) const {
  write_text_file(file, to_json());
}

}  // namespace edgesift
