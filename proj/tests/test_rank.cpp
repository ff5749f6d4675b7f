#include "edgesift/rank.hpp"

#include "doctest.h"

using namespace edgesift;

namespace {

ScoreBreakdown entry(std::string node, double total,
                     std::vector<double> contributions) {
  ScoreBreakdown e;
  e.node = std::move(node);
  e.total = total;
  e.contributions = std::move(contributions);
  return e;
}

AbnormalityRanking sample_ranking() {
  std::vector<ScoreBreakdown> scores;
  scores.push_back(entry("u1", 1.5, {1.0, 0.5}));
  scores.push_back(entry("u2", 7.25, {6.0, 1.25}));
  scores.push_back(entry("u3", 1.5, {0.5, 1.0}));
  scores.push_back(entry("u4", 0.0, {0.0, 0.0}));
  return rank("user", {{"rates", "stars"}, {"rates", "ts"}},
              std::move(scores));
}

}  // namespace

TEST_CASE("ranking sorts by score with id tie-breaks") {
  auto ranking = sample_ranking();
  REQUIRE(ranking.entries.size() == 4);
  CHECK(ranking.entries[0].node == "u2");
  CHECK(ranking.entries[1].node == "u1");  // ties resolve by node id
  CHECK(ranking.entries[2].node == "u3");
  CHECK(ranking.entries[3].node == "u4");

  // ranking an already ranked list changes nothing
  auto again = rank(ranking.object_type, ranking.columns, ranking.entries);
  for (std::size_t i = 0; i < ranking.entries.size(); ++i)
    CHECK(again.entries[i].node == ranking.entries[i].node);
}

TEST_CASE("ranking rejects mismatched contribution widths") {
  std::vector<ScoreBreakdown> scores;
  scores.push_back(entry("u1", 1.0, {1.0}));
  CHECK_THROWS_AS(rank("user", {{"rates", "stars"}, {"rates", "ts"}},
                       std::move(scores)),
                  UsageError);
}

TEST_CASE("ranking CSV layout") {
  auto text = emit_ranking_csv(sample_ranking());
  CHECK(text ==
        "rank,node,score,rates.stars,rates.ts\n"
        "1,u2,7.250000,6.000000,1.250000\n"
        "2,u1,1.500000,1.000000,0.500000\n"
        "3,u3,1.500000,0.500000,1.000000\n"
        "4,u4,0.000000,0.000000,0.000000\n");
  auto top = emit_ranking_csv(sample_ranking(), 2);
  CHECK(top ==
        "rank,node,score,rates.stars,rates.ts\n"
        "1,u2,7.250000,6.000000,1.250000\n"
        "2,u1,1.500000,1.000000,0.500000\n");
}

TEST_CASE("ranking CSV parses back") {
  auto ranking = sample_ranking();
  auto parsed = parse_ranking_csv(emit_ranking_csv(ranking));
  CHECK(parsed.columns == ranking.columns);
  REQUIRE(parsed.entries.size() == 4);
  CHECK(parsed.entries[0].node == "u2");
  CHECK(parsed.entries[0].total == 7.25);
  CHECK(parsed.entries[0].contributions == std::vector<double>{6.0, 1.25});

  CHECK_THROWS_AS(parse_ranking_csv(""), DataError);
  CHECK_THROWS_AS(parse_ranking_csv("a,b,c\n"), DataError);
  CHECK_THROWS_AS(parse_ranking_csv("rank,node,score,plain\n"), DataError);
  CHECK_THROWS_AS(
      parse_ranking_csv("rank,node,score\n2,u1,1.0\n"), DataError);
  CHECK_THROWS_AS(
      parse_ranking_csv("rank,node,score\n1,u1,abc\n"), DataError);
}

TEST_CASE("ranking JSON carries the same rows") {
  auto text = emit_ranking_json(sample_ranking(), 1);
  CHECK(text.find("\"object_type\": \"user\"") != std::string::npos);
  CHECK(text.find("\"node\": \"u2\"") != std::string::npos);
  CHECK(text.find("\"rates.stars\"") != std::string::npos);
  CHECK(text.find("\"u1\"") == std::string::npos);
}

TEST_CASE("cluster model JSON round trip") {
  ClusterModel model;
  AttributeModelEntry e;
  e.object_type = "user";
  e.relation = "rates";
  e.attribute = "stars";
  e.kind = AttributeKind::categorical;
  e.bins.kind = BinKind::categorical;
  e.bins.categories = {"1", "2", "3", "4", "5"};
  e.bins.bins = 5;
  e.centers = {{0.15, 0.1, 0.05, 0.3, 0.4}, {0.0, 0.0, 0.0, 0.0, 1.0}};
  e.proportions = {0.8, 0.2};
  model.entries.push_back(e);

  AttributeModelEntry t;
  t.object_type = "user";
  t.relation = "rates";
  t.attribute = "ts";
  t.kind = AttributeKind::temporal;
  t.bins.kind = BinKind::logarithmic;
  t.bins.bins = 3;
  t.bins.boundaries = {1.0, 10.0, 100.0, 1000.0};
  t.centers = {{0.25, 0.5, 0.25}};
  t.proportions = {1.0};
  model.entries.push_back(t);

  auto parsed = ClusterModel::from_json(model.to_json());
  REQUIRE(parsed.entries.size() == 2);
  const auto* stars = parsed.find("user", "rates", "stars");
  REQUIRE(stars != nullptr);
  CHECK(stars->bins == model.entries[0].bins);
  CHECK(stars->centers == model.entries[0].centers);
  CHECK(stars->proportions == model.entries[0].proportions);
  const auto* ts = parsed.find("user", "rates", "ts");
  REQUIRE(ts != nullptr);
  CHECK(ts->bins.boundaries == t.bins.boundaries);
  CHECK(parsed.find("user", "rates", "ghost") == nullptr);
}

TEST_CASE("cluster model JSON validation") {
  CHECK_THROWS_AS(ClusterModel::from_json("nope"), ValidationError);
  CHECK_THROWS_AS(ClusterModel::from_json("{}"), ValidationError);
  // center mass must match the bin count
  CHECK_THROWS_AS(ClusterModel::from_json(R"({"models": [{
    "object_type": "u", "relation": "r", "attribute": "a",
    "kind": "categorical",
    "bins": {"kind": "categorical", "categories": ["x", "y"]},
    "centers": [[1.0]], "proportions": [1.0]}]})"),
                  ValidationError);
  // masses must sum to 1
  CHECK_THROWS_AS(ClusterModel::from_json(R"({"models": [{
    "object_type": "u", "relation": "r", "attribute": "a",
    "kind": "categorical",
    "bins": {"kind": "categorical", "categories": ["x", "y"]},
    "centers": [[0.9, 0.9]], "proportions": [1.0]}]})"),
                  ValidationError);
  // proportions must match centers
  CHECK_THROWS_AS(ClusterModel::from_json(R"({"models": [{
    "object_type": "u", "relation": "r", "attribute": "a",
    "kind": "categorical",
    "bins": {"kind": "categorical", "categories": ["x", "y"]},
    "centers": [[0.5, 0.5]], "proportions": [0.5, 0.5]}]})"),
                  ValidationError);
}

TEST_CASE("cluster profile rows expose every bin of every cluster") {
  ClusterModel model;
  AttributeModelEntry e;
  e.object_type = "user";
  e.relation = "rates";
  e.attribute = "stars";
  e.kind = AttributeKind::categorical;
  e.bins.kind = BinKind::categorical;
  e.bins.categories = {"1", "2"};
  e.bins.bins = 2;
  e.centers = {{0.25, 0.75}, {1.0, 0.0}};
  e.proportions = {0.6, 0.4};
  model.entries.push_back(e);

  auto text = emit_cluster_profiles_csv(model);
  CHECK(text ==
        "object_type,relation,attribute,cluster,proportion,bin,bin_label,"
        "mass\n"
        "user,rates,stars,0,0.600000,0,1,0.250000\n"
        "user,rates,stars,0,0.600000,1,2,0.750000\n"
        "user,rates,stars,1,0.400000,0,1,1.000000\n"
        "user,rates,stars,1,0.400000,1,2,0.000000\n");
}
