#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edgesift/model.hpp"
#include "edgesift/score.hpp"

namespace edgesift {

struct AbnormalityRanking {
  std::string object_type;
  // Contribution columns, aligned with every entry's contributions.
  std::vector<std::pair<std::string, std::string>> columns;  // (relation, attribute)
  // Descending score; ties broken by ascending node id.
  std::vector<ScoreBreakdown> entries;
};

AbnormalityRanking rank(std::string object_type,
                        std::vector<std::pair<std::string, std::string>> columns,
                        std::vector<ScoreBreakdown> scores);

// CSV: header `rank,node,score,<relation.attribute>...`, scores with six
// decimals, ranks starting at 1.
std::string emit_ranking_csv(const AbnormalityRanking& ranking,
                             std::optional<std::size_t> top_k = {});
std::string emit_ranking_json(const AbnormalityRanking& ranking,
                              std::optional<std::size_t> top_k = {});
AbnormalityRanking parse_ranking_csv(std::string_view text);

// CSV: one row per (object type, relation, attribute, cluster, bin) with the
// cluster proportion, the bin label, and the centroid mass.
std::string emit_cluster_profiles_csv(const ClusterModel& model);

}  // namespace edgesift
