// Copyright 2026 The osum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "osum/selection.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "osum/common.hpp"
#include "test_util.hpp"

namespace osum {
namespace {

using testing::make_store;
using testing::triple;

std::vector<std::string> phrases_of(const OpinionCluster& c) {
  std::vector<std::string> out;
  for (const auto& m : c.members) out.push_back(m.opinion.phrase());
  return out;
}

TEST(FilterTest, AspectFilterKeepsOnlyThatAspect) {
  const std::vector<OpinionTriple> ops = {
      triple({"spotless"}, Polarity::kPositive, "cleanliness"),
      triple({"rude"}, Polarity::kNegative, "service"),
      triple({"dusty"}, Polarity::kNegative, "cleanliness")};
  SelectionConfig config;
  config.aspect_filter = std::set<std::string>{"cleanliness"};
  const auto out = filter_opinions(ops, config);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], ops[0]);
  EXPECT_EQ(out[1], ops[2]);
}

TEST(FilterTest, NoFiltersIsIdentity) {
  const std::vector<OpinionTriple> ops = {triple({"a"}, Polarity::kPositive, "x"),
                                          triple({"b"}, Polarity::kNeutral, "y")};
  EXPECT_EQ(filter_opinions(ops, SelectionConfig{}), ops);
}

TEST(FilterTest, PolarityFilterCanEmpty) {
  const std::vector<OpinionTriple> ops = {triple({"a"}, Polarity::kPositive, "x")};
  SelectionConfig config;
  config.polarity_filter = Polarity::kNegative;
  EXPECT_TRUE(filter_opinions(ops, config).empty());
}

TEST(MergeTest, SingleOpinion) {
  const auto store = make_store({{"a", {1, 0}}});
  const auto clusters =
      merge_opinions({triple({"a"}, Polarity::kPositive, "x")}, store, SelectionConfig{});
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].size(), 1u);
  EXPECT_EQ(clusters[0].centroid, (std::vector<double>{1, 0}));
}

TEST(MergeTest, IdenticalPhrasesMerge) {
  const auto store = make_store({{"great", {0.3, 0.7}}, {"location", {0.9, 0.1}}});
  const auto op = triple({"great", "location"}, Polarity::kPositive, "location");
  const auto clusters = merge_opinions({op, op}, store, SelectionConfig{});
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].size(), 2u);
}

TEST(MergeTest, TwoPairsInTwoDimensions) {
  const auto store = make_store(
      {{"a", {1, 0}}, {"b", {0.95, 0.31}}, {"c", {0, 1}}, {"d", {0.31, 0.95}}});
  std::vector<OpinionTriple> ops;
  for (const char* w : {"a", "b", "c", "d"}) ops.push_back(triple({w}, Polarity::kPositive, "x"));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SelectionConfig config;
    config.theta = 0.9;
    config.seed = seed;
    const auto clusters = merge_opinions(ops, store, config);
    ASSERT_EQ(clusters.size(), 2u);
    EXPECT_EQ(phrases_of(clusters[0]), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(phrases_of(clusters[1]), (std::vector<std::string>{"c", "d"}));
  }
}

TEST(MergeTest, JoinRequiresEveryMember) {
  // b is close to a and to c, but a and c are far apart.
  const auto store = make_store({{"a", {1, 0}}, {"b", {1, 1}}, {"c", {0, 1}}});
  SelectionConfig config;
  config.theta = 0.7;
  const auto clusters = merge_opinions({triple({"a"}, Polarity::kPositive, "x"),
                                        triple({"b"}, Polarity::kPositive, "x"),
                                        triple({"c"}, Polarity::kPositive, "x")},
                                       store, config);
  ASSERT_EQ(clusters.size(), 2u);
  EXPECT_EQ(phrases_of(clusters[0]), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(phrases_of(clusters[1]), (std::vector<std::string>{"c"}));
}

TEST(MergeTest, AllOovPhrasesStaySingletons) {
  const auto store = make_store({{"a", {1, 0}}});
  const auto op = triple({"zzz"}, Polarity::kPositive, "x");
  const auto clusters = merge_opinions({op, op, op}, store, SelectionConfig{});
  EXPECT_EQ(clusters.size(), 3u);
}

TEST(MergeTest, ThetaOneWithDistinctVectorsGivesSingletons) {
  Rng rng(3);
  EmbeddingStore store(4);
  std::vector<OpinionTriple> ops;
  for (int i = 0; i < 20; ++i) {
    std::vector<double> v(4);
    for (auto& x : v) x = rng.normal();
    store.insert("w" + std::to_string(i), v);
    ops.push_back(triple({"w" + std::to_string(i)}, Polarity::kPositive, "x"));
  }
  SelectionConfig config;
  config.theta = 1.0;
  EXPECT_EQ(merge_opinions(ops, store, config).size(), 20u);
}

TEST(MergeTest, InvalidTheta) {
  const auto store = make_store({{"a", {1, 0}}});
  SelectionConfig config;
  config.theta = 0.0;
  EXPECT_THROW(merge_opinions({}, store, config), InvalidArgument);
  config.theta = 1.5;
  EXPECT_THROW(merge_opinions({}, store, config), InvalidArgument);
  config.theta = 0.5;
  config.k = 0;
  EXPECT_THROW(select({}, store, config), InvalidArgument);
}

struct RandomSet {
  EmbeddingStore store{3};
  std::vector<OpinionTriple> opinions;
};

RandomSet random_set(Rng& rng, std::size_t vocab, std::size_t count) {
  RandomSet s;
  for (std::size_t i = 0; i < vocab; ++i) {
    std::vector<double> v(3);
    for (auto& x : v) x = rng.normal() + 1.0;
    s.store.insert("w" + std::to_string(i), v);
  }
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::string> tokens;
    const auto len = 1 + rng.uniform_index(2);
    for (std::size_t t = 0; t < len; ++t) tokens.push_back("w" + std::to_string(rng.uniform_index(vocab)));
    s.opinions.push_back(triple(tokens, rng.uniform() < 0.5 ? Polarity::kPositive : Polarity::kNegative,
                                rng.uniform() < 0.5 ? "room" : "service", "r" + std::to_string(i)));
  }
  return s;
}

TEST(MergeTest, PartitionCriterionAndCentroidProperties) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_set(rng, 6, 1 + rng.uniform_index(30));
    SelectionConfig config;
    config.theta = 0.5 + 0.5 * rng.uniform();
    config.seed = rng.next();
    const auto clusters = merge_opinions(s.opinions, s.store, config);
    std::multiset<std::string> seen, expected;
    for (const auto& o : s.opinions) expected.insert(o.review_id);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      const auto& cluster = clusters[c];
      ASSERT_FALSE(cluster.members.empty());
      EXPECT_EQ(cluster.creation_index, c);
      std::vector<double> mean(3, 0.0);
      for (std::size_t i = 0; i < cluster.size(); ++i) {
        seen.insert(cluster.members[i].opinion.review_id);
        for (std::size_t d = 0; d < 3; ++d) mean[d] += cluster.members[i].vector.values[d] / cluster.size();
        for (std::size_t j = i + 1; j < cluster.size(); ++j) {
          ASSERT_GE(cosine(cluster.members[i].vector.values, cluster.members[j].vector.values),
                    config.theta);
        }
      }
      for (std::size_t d = 0; d < 3; ++d) EXPECT_NEAR(mean[d], cluster.centroid[d], 1e-9);
    }
    EXPECT_EQ(seen, expected);
  }
}

TEST(RepresentativeTest, Singleton) {
  const auto store = make_store({{"a", {1, 2}}});
  const auto clusters =
      merge_opinions({triple({"a"}, Polarity::kPositive, "x")}, store, SelectionConfig{});
  EXPECT_EQ(representative(clusters[0]).phrase(), "a");
}

TEST(RepresentativeTest, ClosestToCentroid) {
  OpinionCluster cluster;
  for (auto [name, v] : {std::pair{"p", std::vector<double>{1, 0}},
                         std::pair{"q", std::vector<double>{0, 1}},
                         std::pair{"r", std::vector<double>{1, 1}}}) {
    cluster.members.push_back({triple({name}, Polarity::kPositive, "x"), PhraseVector{v, 0, 1}});
  }
  cluster.centroid = {2.0 / 3, 2.0 / 3};
  EXPECT_EQ(representative_index(cluster), 2u);
  EXPECT_EQ(representative(cluster).phrase(), "r");
}

TEST(RepresentativeTest, TieGoesToEarliest) {
  OpinionCluster cluster;
  cluster.members.push_back({triple({"first"}, Polarity::kPositive, "x"), PhraseVector{{1, 1}, 0, 1}});
  cluster.members.push_back({triple({"second"}, Polarity::kPositive, "x"), PhraseVector{{1, 1}, 0, 1}});
  cluster.centroid = {1, 1};
  EXPECT_EQ(representative(cluster).phrase(), "first");
}

TEST(SelectTest, PlantedOpinionRanksFirst) {
  const auto store = make_store({{"great", {0.9, 0.1, 0.0}},
                                 {"location", {0.1, 0.9, 0.0}},
                                 {"rude", {-0.8, 0.0, 0.5}},
                                 {"staff", {0.0, -0.3, 0.9}}});
  std::vector<OpinionTriple> ops(30, triple({"great", "location"}, Polarity::kPositive, "location"));
  ops.push_back(triple({"rude", "staff"}, Polarity::kNegative, "service"));
  SelectionConfig config;
  config.k = 2;
  const auto selected = select(ops, store, config);
  ASSERT_EQ(selected.size(), 2u);
  EXPECT_EQ(selected.items[0].representative.phrase(), "great location");
  EXPECT_EQ(selected.items[0].cluster_size, 30u);
  EXPECT_EQ(selected.items[1].representative.phrase(), "rude staff");
  EXPECT_EQ(selected.items[1].cluster_size, 1u);
}

TEST(SelectTest, FewerClustersThanK) {
  const auto store = make_store({{"a", {1, 0, 0}}, {"b", {0, 1, 0}}, {"c", {0, 0, 1}}});
  std::vector<OpinionTriple> ops;
  for (const char* w : {"a", "b", "c", "a"}) ops.push_back(triple({w}, Polarity::kPositive, "x"));
  const auto selected = select(ops, store, SelectionConfig{});
  EXPECT_EQ(selected.size(), 3u);
  EXPECT_EQ(selected.items[0].cluster_size, 2u);
}

TEST(SelectTest, FilterExcludingEverythingIsEmpty) {
  const auto store = make_store({{"a", {1, 0}}});
  SelectionConfig config;
  config.aspect_filter = std::set<std::string>{"nope"};
  EXPECT_TRUE(select({triple({"a"}, Polarity::kPositive, "x")}, store, config).empty());
}

TEST(SelectTest, AfterRankingFilterDropsRepresentatives) {
  const auto store = make_store({{"a", {1, 0}}, {"b", {0, 1}}});
  std::vector<OpinionTriple> ops = {triple({"a"}, Polarity::kPositive, "x"),
                                    triple({"a"}, Polarity::kPositive, "x"),
                                    triple({"b"}, Polarity::kNegative, "y")};
  SelectionConfig config;
  config.k = 1;
  config.polarity_filter = Polarity::kNegative;
  EXPECT_EQ(select(ops, store, config).items.at(0).representative.phrase(), "b");
  config.filter_stage = FilterStage::kAfterRanking;
  EXPECT_TRUE(select(ops, store, config).empty());
}

TEST(SelectTest, SizesNonIncreasingCountAndDeterminism) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_set(rng, 5, rng.uniform_index(40));
    SelectionConfig config;
    config.theta = 0.6 + 0.4 * rng.uniform();
    config.k = 1 + rng.uniform_index(10);
    config.seed = rng.next();
    if (rng.uniform() < 0.3) config.polarity_filter = Polarity::kPositive;
    const auto result = select_with_clusters(s.opinions, s.store, config);
    const auto again = select(s.opinions, s.store, config);
    ASSERT_EQ(result.selected.size(), again.size());
    EXPECT_EQ(result.selected.size(), std::min(config.k, result.ranked_clusters.size()));
    for (std::size_t i = 0; i < again.size(); ++i) {
      EXPECT_EQ(again.items[i].representative, result.selected.items[i].representative);
      if (i > 0) {
        EXPECT_GE(again.items[i - 1].cluster_size, again.items[i].cluster_size);
      }
      const auto& members = result.ranked_clusters[i].members;
      EXPECT_TRUE(std::any_of(members.begin(), members.end(), [&](const ClusterMember& m) {
        return m.opinion == again.items[i].representative;
      }));
      EXPECT_EQ(again.items[i].representative.polarity == Polarity::kPositive ||
                    !config.polarity_filter,
                true);
    }
  }
}

TEST(RankTest, SizeThenCreationIndex) {
  std::vector<OpinionCluster> clusters(3);
  clusters[0].members.resize(1);
  clusters[1].members.resize(2);
  clusters[2].members.resize(2);
  for (std::size_t i = 0; i < 3; ++i) clusters[i].creation_index = i;
  const auto ranked = rank_clusters(clusters);
  EXPECT_EQ(ranked[0].creation_index, 1u);
  EXPECT_EQ(ranked[1].creation_index, 2u);
  EXPECT_EQ(ranked[2].creation_index, 0u);
}

}  // namespace
}  // namespace osum
