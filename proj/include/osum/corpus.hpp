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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace osum {

// Delimiter between textualized opinion phrases; the tokenizer never splits it.
inline constexpr std::string_view kSepToken = "[SEP]";

// Lowercases and splits text into word tokens and single-character
// punctuation tokens. Whitespace separates tokens and is dropped. The literal
// "[SEP]" is kept as one token. Input is UTF-8; lowercasing covers ASCII,
// Latin-1, Latin Extended-A, Greek and Cyrillic.
std::vector<std::string> tokenize(std::string_view text);

// Joins tokens with single spaces.
std::string join_tokens(const std::vector<std::string>& tokens);

bool is_punctuation_token(std::string_view token);

struct Review {
  std::string review_id;
  std::string entity_id;
  std::string text;
  std::vector<std::string> tokens;
  std::optional<std::string> split;  // train / dev / test
};

class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::string domain_label)
      : domain_label_(std::move(domain_label)) {}

  // Appends a review, tokenizing its text. Throws InvalidArgument when the
  // review_id is already present.
  void add(std::string review_id, std::string entity_id, std::string text,
           std::optional<std::string> split = std::nullopt);

  // All reviews of one entity in ingestion order. Throws NotFound.
  const std::vector<Review>& entity_reviews(const std::string& entity_id) const;

  bool has_entity(const std::string& entity_id) const;
  const Review* find_review(const std::string& review_id) const;
  const Review& review(const std::string& review_id) const;

  // Entity ids in order of first appearance.
  const std::vector<std::string>& entity_ids() const { return entity_order_; }
  std::size_t entity_count() const { return entity_order_.size(); }
  std::size_t review_count() const { return review_count_; }

  const std::string& domain_label() const { return domain_label_; }
  void set_domain_label(std::string label) { domain_label_ = std::move(label); }

  // Every review, entity by entity, each entity in ingestion order.
  std::vector<const Review*> all_reviews() const;

  bool operator==(const Corpus& other) const;

 private:
  std::string domain_label_;
  std::map<std::string, std::vector<Review>> entities_;
  std::vector<std::string> entity_order_;
  std::unordered_map<std::string, std::pair<std::string, std::size_t>>
      review_index_;
  std::size_t review_count_ = 0;
};

bool operator==(const Review& a, const Review& b);

struct IngestResult {
  Corpus corpus;
  std::size_t records_read = 0;
};

// Reads a JSON Lines review file: one object per line with string fields
// review_id, entity_id, text and an optional split. Blank lines are skipped.
// Errors carry the 1-based line number.
// JSON Lines in the ingestion format, corpus order.
std::string format_reviews(const Corpus& corpus);

IngestResult ingest_reviews(const std::string& path,
                            const std::string& domain_label = "");

IngestResult parse_reviews(const std::string& content,
                           const std::string& source_name,
                           const std::string& domain_label = "");

}  // namespace osum
