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

#include "osum/pipeline.hpp"

#include <chrono>
#include <sstream>

#include "osum/baselines.hpp"
#include "osum/checkpoint.hpp"
#include "osum/common.hpp"
#include "osum/digest.hpp"

namespace osum {
namespace {

std::vector<ClusterInfo> describe(const std::vector<OpinionCluster>& clusters) {
  std::vector<ClusterInfo> out;
  out.reserve(clusters.size());
  for (const auto& cluster : clusters) {
    ClusterInfo info;
    info.size = cluster.size();
    info.representative = representative(cluster);
    for (const auto& member : cluster.members) info.members.push_back(member.opinion);
    out.push_back(std::move(info));
  }
  return out;
}

nlohmann::json selection_json(const SelectionConfig& config) {
  nlohmann::json out = {{"k", config.k},
                        {"theta", config.theta},
                        {"seed", config.seed},
                        {"filter_stage", config.filter_stage == FilterStage::kBeforeMerge
                                             ? "before_merge"
                                             : "after_ranking"}};
  out["aspects"] = config.aspect_filter
                       ? nlohmann::json(std::vector<std::string>(config.aspect_filter->begin(),
                                                                 config.aspect_filter->end()))
                       : nlohmann::json(nullptr);
  out["polarity"] = config.polarity_filter
                        ? nlohmann::json(std::string(to_string(*config.polarity_filter)))
                        : nlohmann::json(nullptr);
  return out;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kDigest:
      return "digest";
    case Method::kLexRank:
      return "lexrank";
    case Method::kBestReview:
      return "best_review";
    case Method::kWorstReview:
      return "worst_review";
  }
  return "digest";
}

std::optional<Method> parse_method(std::string_view text) {
  if (text == "digest") return Method::kDigest;
  if (text == "lexrank") return Method::kLexRank;
  if (text == "best_review") return Method::kBestReview;
  if (text == "worst_review") return Method::kWorstReview;
  return std::nullopt;
}

std::string_view to_string(SummaryStatus status) {
  return status == SummaryStatus::kOk ? "ok" : "empty_selection";
}

void PipelineBundle::validate() const {
  for (const auto& [review_id, set] : extractions) {
    if (corpus.find_review(review_id) == nullptr) {
      throw InvalidArgument("extractions reference unknown review '" + review_id + "'");
    }
  }
  if (model && model->vocab().id(std::string(kSepToken)) != kSepId) {
    throw InvalidArgument("model vocabulary lacks the delimiter token");
  }
  selection.validate();
  decode.validate();
}

std::size_t infer_embedding_dim(const std::string& content) {
  for (const auto& line : split_lines(content)) {
    if (is_blank(line)) continue;
    std::istringstream in(line);
    std::string field;
    std::size_t fields = 0;
    while (in >> field) ++fields;
    if (fields < 2) throw FormatError("embeddings", 1, "line has no vector values");
    return fields - 1;
  }
  throw FormatError("embeddings", 0, "embedding file is empty");
}

PipelineBundle load_bundle(const BundlePaths& paths) {
  PipelineBundle bundle;
  bundle.corpus = ingest_reviews(paths.reviews, paths.domain).corpus;
  bundle.lexicons =
      paths.lexicon.empty() ? default_lexicons(paths.domain) : load_lexicons(paths.lexicon);
  bundle.extractions = paths.opinions.empty() ? extract_corpus(bundle.corpus, bundle.lexicons)
                                              : load_pretagged(paths.opinions, bundle.corpus);
  if (!paths.embeddings.empty()) {
    const std::string content = read_file(paths.embeddings);
    const std::size_t dim =
        paths.embedding_dim != 0 ? paths.embedding_dim : infer_embedding_dim(content);
    bundle.store = parse_embeddings(content, paths.embeddings, dim);
  }
  if (!paths.model.empty()) bundle.model = load_model(paths.model);
  bundle.validate();
  return bundle;
}

SelectionConfig apply_overrides(SelectionConfig base, const SummarizeOverrides& overrides) {
  if (overrides.k) base.k = *overrides.k;
  if (overrides.theta) base.theta = *overrides.theta;
  if (overrides.seed) base.seed = *overrides.seed;
  if (overrides.aspects) base.aspect_filter = overrides.aspects;
  if (overrides.polarity) base.polarity_filter = overrides.polarity;
  if (overrides.filter_stage) base.filter_stage = *overrides.filter_stage;
  base.validate();
  return base;
}

DecodeConfig apply_overrides(DecodeConfig base, const SummarizeOverrides& overrides) {
  if (overrides.beam_size) base.beam_size = *overrides.beam_size;
  if (overrides.max_len) base.max_len = *overrides.max_len;
  base.validate();
  return base;
}

SummarizeResult run_summarize(const PipelineBundle& bundle, const std::string& entity_id,
                              const SummarizeOverrides& overrides) {
  const auto start = std::chrono::steady_clock::now();
  const auto& reviews = bundle.corpus.entity_reviews(entity_id);
  SummarizeResult result;
  result.entity_id = entity_id;
  result.method = overrides.method;
  result.selection = apply_overrides(bundle.selection, overrides);
  result.decode = apply_overrides(bundle.decode, overrides);

  switch (overrides.method) {
    case Method::kDigest: {
      if (!bundle.model) throw InvalidArgument("the digest method needs a trained model");
      const auto opinions = entity_opinion_set(bundle.extractions, bundle.corpus, entity_id);
      auto digest =
          digest_opinions(opinions, bundle.store, *bundle.model, result.selection, result.decode);
      result.clusters = describe(digest.selection.ranked_clusters);
      result.selected = std::move(digest.selection.selected.items);
      if (digest.summary) {
        result.summary = std::move(*digest.summary);
        result.input = digest.input->text;
      } else {
        result.status = SummaryStatus::kEmptySelection;
      }
      break;
    }
    case Method::kLexRank:
      result.summary = lexrank_summarize(reviews, overrides.budget_tokens);
      break;
    case Method::kBestReview:
    case Method::kWorstReview: {
      if (reviews.size() == 1) {
        result.summary = reviews.front().text;
      } else {
        const auto& pick = overrides.method == Method::kBestReview ? best_review(reviews)
                                                                   : worst_review(reviews);
        result.summary = pick.text;
      }
      break;
    }
  }
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<ClusterInfo> entity_clusters(const PipelineBundle& bundle,
                                         const std::string& entity_id,
                                         const SelectionConfig& config) {
  if (!bundle.corpus.has_entity(entity_id)) {
    throw NotFound("unknown entity '" + entity_id + "'");
  }
  config.validate();
  const auto opinions = entity_opinion_set(bundle.extractions, bundle.corpus, entity_id);
  return describe(select_with_clusters(opinions, bundle.store, config).ranked_clusters);
}

nlohmann::json to_json(const OpinionTriple& opinion) {
  return {{"phrase", opinion.phrase()},
          {"aspect", opinion.aspect},
          {"polarity", std::string(to_string(opinion.polarity))},
          {"review_id", opinion.review_id},
          {"token_indices", opinion.token_indices}};
}

nlohmann::json to_json(const ClusterInfo& cluster) {
  nlohmann::json members = nlohmann::json::array();
  for (const auto& member : cluster.members) members.push_back(to_json(member));
  return {{"size", cluster.size},
          {"representative", to_json(cluster.representative)},
          {"members", std::move(members)}};
}

nlohmann::json to_json(const SummarizeResult& result, bool include_timing) {
  nlohmann::json selected = nlohmann::json::array();
  for (const auto& item : result.selected) {
    auto entry = to_json(item.representative);
    entry["cluster_size"] = item.cluster_size;
    selected.push_back(std::move(entry));
  }
  nlohmann::json clusters = nlohmann::json::array();
  for (const auto& cluster : result.clusters) clusters.push_back(to_json(cluster));
  nlohmann::json out = {
      {"entity_id", result.entity_id},
      {"method", std::string(to_string(result.method))},
      {"status", std::string(to_string(result.status))},
      {"summary", result.summary},
      {"input", result.input},
      {"selected", std::move(selected)},
      {"clusters", std::move(clusters)},
      {"selection", selection_json(result.selection)},
      {"decode",
       {{"beam_size", result.decode.beam_size},
        {"max_len", result.decode.max_len},
        {"length_penalty_alpha", result.decode.length_penalty_alpha},
        {"ngram_block", result.decode.ngram_block}}}};
  if (include_timing) out["timing"] = {{"elapsed_ms", result.elapsed_ms}};
  return out;
}

}  // namespace osum
