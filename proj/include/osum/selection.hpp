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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "osum/embedding.hpp"
#include "osum/extraction.hpp"

namespace osum {

// Where aspect/polarity filters apply. kBeforeMerge filters raw opinions so
// top-k is computed over on-topic opinions; kAfterRanking takes the top-k
// clusters first and then drops representatives that fail the filters.
enum class FilterStage { kBeforeMerge, kAfterRanking };

struct SelectionConfig {
  double theta = 0.8;
  std::size_t k = 15;
  std::uint64_t seed = 0;
  std::optional<std::set<std::string>> aspect_filter;
  std::optional<Polarity> polarity_filter;
  FilterStage filter_stage = FilterStage::kBeforeMerge;

  // Throws InvalidArgument unless theta is in (0, 1] and k >= 1.
  void validate() const;
};

struct ClusterMember {
  OpinionTriple opinion;
  PhraseVector vector;
};

// Members in insertion order. Every member pair has cosine >= theta.
struct OpinionCluster {
  std::vector<ClusterMember> members;
  std::vector<double> centroid;
  std::size_t creation_index = 0;

  std::size_t size() const { return members.size(); }
};

struct SelectedOpinion {
  OpinionTriple representative;
  std::size_t cluster_size = 0;
};

// Sizes are non-increasing.
struct SelectedOpinions {
  std::vector<SelectedOpinion> items;

  bool empty() const { return items.empty(); }
  std::size_t size() const { return items.size(); }
};

bool passes_filters(const OpinionTriple& opinion, const SelectionConfig& config);

// Subsequence of `opinions` passing every active filter.
std::vector<OpinionTriple> filter_opinions(const std::vector<OpinionTriple>& opinions,
                                           const SelectionConfig& config);

// Greedy merge. Opinions are visited in input order; for each one the current
// clusters are scanned in an order freshly shuffled by an Rng seeded once
// with config.seed, and the opinion joins the first cluster whose every
// member has cosine >= theta with it. Otherwise it starts a new cluster.
// Centroids are computed after all insertions.
std::vector<OpinionCluster> merge_opinions(const std::vector<OpinionTriple>& opinions,
                                           const EmbeddingStore& store,
                                           const SelectionConfig& config);

// Index of the member with maximal cosine to the centroid; ties go to the
// earliest-inserted member.
std::size_t representative_index(const OpinionCluster& cluster);
const OpinionTriple& representative(const OpinionCluster& cluster);

// Sorted by size descending, ties by creation index ascending.
std::vector<OpinionCluster> rank_clusters(std::vector<OpinionCluster> clusters);

// Full selection result, ranked clusters kept for provenance.
struct SelectionResult {
  std::vector<OpinionCluster> ranked_clusters;
  SelectedOpinions selected;
};

SelectionResult select_with_clusters(const std::vector<OpinionTriple>& opinions,
                                     const EmbeddingStore& store,
                                     const SelectionConfig& config);

// filter -> merge -> rank -> top-k representatives.
SelectedOpinions select(const std::vector<OpinionTriple>& opinions,
                        const EmbeddingStore& store, const SelectionConfig& config);

}  // namespace osum
