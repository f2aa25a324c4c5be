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

#include <algorithm>
#include <cmath>

#include "osum/common.hpp"

namespace osum {

void SelectionConfig::validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw InvalidArgument("theta must be in (0, 1], got " + std::to_string(theta));
  }
  if (k == 0) throw InvalidArgument("k must be at least 1");
}

bool passes_filters(const OpinionTriple& opinion, const SelectionConfig& config) {
  if (config.aspect_filter && !config.aspect_filter->contains(opinion.aspect)) {
    return false;
  }
  if (config.polarity_filter && opinion.polarity != *config.polarity_filter) {
    return false;
  }
  return true;
}

std::vector<OpinionTriple> filter_opinions(const std::vector<OpinionTriple>& opinions,
                                           const SelectionConfig& config) {
  std::vector<OpinionTriple> out;
  std::copy_if(opinions.begin(), opinions.end(), std::back_inserter(out),
               [&](const OpinionTriple& o) { return passes_filters(o, config); });
  return out;
}

std::vector<OpinionCluster> merge_opinions(const std::vector<OpinionTriple>& opinions,
                                           const EmbeddingStore& store,
                                           const SelectionConfig& config) {
  config.validate();
  Rng rng(config.seed);
  std::vector<OpinionCluster> clusters;
  for (const auto& opinion : opinions) {
    PhraseVector vec = phrase_vector(store, opinion.phrase_tokens);
    const auto order = shuffled_indices(clusters.size(), rng);
    OpinionCluster* target = nullptr;
    for (const std::size_t c : order) {
      const auto& members = clusters[c].members;
      const bool fits = std::all_of(members.begin(), members.end(),
                                    [&](const ClusterMember& m) {
                                      return cosine(vec.values, m.vector.values) >=
                                             config.theta;
                                    });
      if (fits) {
        target = &clusters[c];
        break;
      }
    }
    if (target == nullptr) {
      clusters.emplace_back();
      target = &clusters.back();
      target->creation_index = clusters.size() - 1;
    }
    target->members.push_back(ClusterMember{opinion, std::move(vec)});
  }
  for (auto& cluster : clusters) {
    cluster.centroid.assign(store.dim(), 0.0);
    for (const auto& m : cluster.members) {
      for (std::size_t d = 0; d < store.dim(); ++d) cluster.centroid[d] += m.vector.values[d];
    }
    for (auto& v : cluster.centroid) v /= static_cast<double>(cluster.members.size());
  }
  return clusters;
}

std::size_t representative_index(const OpinionCluster& cluster) {
  if (cluster.members.empty()) throw InvalidArgument("representative of empty cluster");
  std::size_t best = 0;
  double best_score = cosine(cluster.members[0].vector.values, cluster.centroid);
  for (std::size_t i = 1; i < cluster.members.size(); ++i) {
    const double score = cosine(cluster.members[i].vector.values, cluster.centroid);
    if (score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

const OpinionTriple& representative(const OpinionCluster& cluster) {
  return cluster.members[representative_index(cluster)].opinion;
}

std::vector<OpinionCluster> rank_clusters(std::vector<OpinionCluster> clusters) {
  std::stable_sort(clusters.begin(), clusters.end(),
                   [](const OpinionCluster& a, const OpinionCluster& b) {
                     if (a.size() != b.size()) return a.size() > b.size();
                     return a.creation_index < b.creation_index;
                   });
  return clusters;
}

SelectionResult select_with_clusters(const std::vector<OpinionTriple>& opinions,
                                     const EmbeddingStore& store,
                                     const SelectionConfig& config) {
  config.validate();
  const bool early = config.filter_stage == FilterStage::kBeforeMerge;
  SelectionResult result;
  result.ranked_clusters = rank_clusters(
      merge_opinions(early ? filter_opinions(opinions, config) : opinions, store, config));
  const std::size_t top = std::min(config.k, result.ranked_clusters.size());
  for (std::size_t i = 0; i < top; ++i) {
    const auto& cluster = result.ranked_clusters[i];
    const auto& repr = representative(cluster);
    if (!early && !passes_filters(repr, config)) continue;
    result.selected.items.push_back(SelectedOpinion{repr, cluster.size()});
  }
  return result;
}

SelectedOpinions select(const std::vector<OpinionTriple>& opinions,
                        const EmbeddingStore& store, const SelectionConfig& config) {
  return select_with_clusters(opinions, store, config).selected;
}

}  // namespace osum
