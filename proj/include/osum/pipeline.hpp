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
#include <string_view>
#include <vector>

#include <json.hpp>

#include "osum/corpus.hpp"
#include "osum/decoder.hpp"
#include "osum/embedding.hpp"
#include "osum/extraction.hpp"
#include "osum/model.hpp"
#include "osum/selection.hpp"

namespace osum {

enum class Method { kDigest, kLexRank, kBestReview, kWorstReview };

std::string_view to_string(Method method);
// Accepts digest, lexrank, best_review, worst_review.
std::optional<Method> parse_method(std::string_view text);

// Everything a summarization request needs. Read-only once built, so one
// bundle can serve concurrent requests.
struct PipelineBundle {
  Corpus corpus;
  Extractions extractions;
  EmbeddingStore store{1};
  std::optional<GeneratorModel> model;  // required by the digest method
  Lexicons lexicons;
  SelectionConfig selection;
  DecodeConfig decode;

  // Throws InvalidArgument when extractions name reviews missing from the
  // corpus, or when the model vocabulary lacks the delimiter.
  void validate() const;
};

struct BundlePaths {
  std::string reviews;
  std::string opinions;    // pre-tagged opinions; empty runs the rule extractor
  std::string embeddings;  // empty leaves the store empty
  std::string model;       // empty skips loading a model
  std::string lexicon;     // empty uses the built-in lexicon for `domain`
  std::string domain = "hotel";
  std::size_t embedding_dim = 0;  // 0 infers it from the first line
};

PipelineBundle load_bundle(const BundlePaths& paths);

// Number of values on the first non-blank line, minus the token.
std::size_t infer_embedding_dim(const std::string& content);

// Per-request changes to the bundle defaults.
struct SummarizeOverrides {
  Method method = Method::kDigest;
  std::optional<std::size_t> k;
  std::optional<double> theta;
  std::optional<std::uint64_t> seed;
  std::optional<std::set<std::string>> aspects;
  std::optional<Polarity> polarity;
  std::optional<FilterStage> filter_stage;
  std::optional<std::size_t> beam_size;
  std::optional<std::size_t> max_len;
  std::size_t budget_tokens = 60;  // lexrank budget
};

enum class SummaryStatus { kOk, kEmptySelection };

std::string_view to_string(SummaryStatus status);

struct ClusterInfo {
  std::size_t size = 0;
  OpinionTriple representative;
  std::vector<OpinionTriple> members;
};

struct SummarizeResult {
  std::string entity_id;
  Method method = Method::kDigest;
  SummaryStatus status = SummaryStatus::kOk;
  std::string summary;  // empty for kEmptySelection
  std::string input;    // textualized selection fed to the generator
  std::vector<SelectedOpinion> selected;
  std::vector<ClusterInfo> clusters;  // ranked
  SelectionConfig selection;
  DecodeConfig decode;
  double elapsed_ms = 0.0;
};

SelectionConfig apply_overrides(SelectionConfig base, const SummarizeOverrides& overrides);
DecodeConfig apply_overrides(DecodeConfig base, const SummarizeOverrides& overrides);

// Throws NotFound for an unknown entity and InvalidArgument for invalid
// settings or a digest request without a model.
SummarizeResult run_summarize(const PipelineBundle& bundle, const std::string& entity_id,
                              const SummarizeOverrides& overrides = {});

// Ranked clusters of an entity under `config`.
std::vector<ClusterInfo> entity_clusters(const PipelineBundle& bundle,
                                         const std::string& entity_id,
                                         const SelectionConfig& config);

nlohmann::json to_json(const OpinionTriple& opinion);
nlohmann::json to_json(const ClusterInfo& cluster);
// `include_timing` adds {"timing": {"elapsed_ms": ...}}.
nlohmann::json to_json(const SummarizeResult& result, bool include_timing = true);

}  // namespace osum
