#include "edgesift/rank.hpp"

#include <algorithm>

#include "edgesift/csv.hpp"
#include "json.hpp"

namespace edgesift {

using nlohmann::ordered_json;

AbnormalityRanking rank(std::string object_type,
                        std::vector<std::pair<std::string, std::string>> columns,
                        std::vector<ScoreBreakdown> scores) {
  for (const auto& s : scores)
    if (s.contributions.size() != columns.size())
      throw UsageError("rank: contribution count does not match columns for "
                       "node '" + s.node + "'");
  std::sort(scores.begin(), scores.end(),
            [](const ScoreBreakdown& a, const ScoreBreakdown& b) {
              if (a.total != b.total) return a.total > b.total;
              return a.node < b.node;
            });
  return {std::move(object_type), std::move(columns), std::move(scores)};
}

namespace {

std::size_t emitted_rows(const AbnormalityRanking& ranking,
                         std::optional<std::size_t> top_k) {
  auto n = ranking.entries.size();
  return top_k && *top_k < n ? *top_k : n;
}

}  // namespace

std::string emit_ranking_csv(const AbnormalityRanking& ranking,
                             std::optional<std::size_t> top_k) {
  std::vector<std::string> header = {"rank", "node", "score"};
  for (const auto& [rel, attr] : ranking.columns)
    header.push_back(rel + "." + attr);
  std::string out = csv::join_row(header);

  const auto rows = emitted_rows(ranking, top_k);
  std::vector<std::string> row;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& e = ranking.entries[i];
    row.clear();
    row.push_back(std::to_string(i + 1));
    row.push_back(e.node);
    row.push_back(csv::format_fixed(e.total, 6));
    for (double c : e.contributions) row.push_back(csv::format_fixed(c, 6));
    out += csv::join_row(row);
  }
  return out;
}

std::string emit_ranking_json(const AbnormalityRanking& ranking,
                              std::optional<std::size_t> top_k) {
  ordered_json doc;
  doc["object_type"] = ranking.object_type;
  auto cols = ordered_json::array();
  for (const auto& [rel, attr] : ranking.columns)
    cols.push_back(rel + "." + attr);
  doc["columns"] = std::move(cols);
  auto entries = ordered_json::array();
  const auto rows = emitted_rows(ranking, top_k);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& e = ranking.entries[i];
    ordered_json row;
    row["rank"] = i + 1;
    row["node"] = e.node;
    row["score"] = e.total;
    row["contributions"] = e.contributions;
    entries.push_back(std::move(row));
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

AbnormalityRanking parse_ranking_csv(std::string_view text) {
  auto lines = csv::split_lines(text);
  if (lines.empty()) throw DataError("ranking file: empty");
  auto header = csv::split_row(lines[0]);
  if (header.size() < 3 || header[0] != "rank" || header[1] != "node" ||
      header[2] != "score")
    throw DataError("ranking file line 1: header must start "
                    "'rank,node,score'");
  AbnormalityRanking ranking;
  for (std::size_t c = 3; c < header.size(); ++c) {
    auto dot = header[c].find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == header[c].size())
      throw DataError("ranking file line 1: column '" + header[c] +
                      "' is not relation.attribute");
    ranking.columns.emplace_back(header[c].substr(0, dot),
                                 header[c].substr(dot + 1));
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto row = csv::split_row(lines[i]);
    const auto ctx = "ranking file line " + std::to_string(i + 1);
    if (row.size() != header.size())
      throw DataError(ctx + ": expected " + std::to_string(header.size()) +
                      " fields");
    auto rank_no = csv::parse_size(row[0], ctx);
    if (rank_no != ranking.entries.size() + 1)
      throw DataError(ctx + ": rank out of order");
    ScoreBreakdown e;
    e.node = row[1];
    e.total = csv::parse_double(row[2], ctx);
    for (std::size_t c = 3; c < row.size(); ++c)
      e.contributions.push_back(csv::parse_double(row[c], ctx));
    ranking.entries.push_back(std::move(e));
  }
  return ranking;
}

std::string emit_cluster_profiles_csv(const ClusterModel& model) {
  std::string out =
      "object_type,relation,attribute,cluster,proportion,bin,bin_label,mass\n";
  std::vector<std::string> row;
  for (const auto& e : model.entries) {
    for (std::size_t g = 0; g < e.centers.size(); ++g) {
      for (std::size_t b = 0; b < e.centers[g].size(); ++b) {
        row = {e.object_type,
               e.relation,
               e.attribute,
               std::to_string(g),
               csv::format_fixed(e.proportions[g], 6),
               std::to_string(b),
               e.bins.bin_label(b),
               csv::format_fixed(e.centers[g][b], 6)};
        out += csv::join_row(row);
      }
    }
  }
  return out;
}

}  // namespace edgesift
