#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "edgesift/cluster.hpp"
#include "edgesift/discretize.hpp"

namespace edgesift {

// Learned behavior profile for one (object type, relation, attribute): the
// shared bin layout plus the cluster centroids and their proportions.
// `centers` may be empty when no node contributed a sample.
struct AttributeModelEntry {
  std::string object_type;
  std::string relation;
  std::string attribute;
  AttributeKind kind = AttributeKind::categorical;
  BinSpec bins;
  PointMatrix centers;
  std::vector<double> proportions;
};

struct ClusterModel {
  std::vector<AttributeModelEntry> entries;

  const AttributeModelEntry* find(std::string_view object_type,
                                  std::string_view relation,
                                  std::string_view attribute) const;

  std::string to_json() const;
  static ClusterModel from_json(const std::string& text);
  static ClusterModel load(const std::filesystem::path& file);
  void save(const std::filesystem::path& file) const;
};

}  // namespace edgesift
