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
#include <unordered_set>
#include <vector>

#include "osum/corpus.hpp"

namespace osum {

enum class Polarity { kPositive, kNeutral, kNegative };

std::string_view to_string(Polarity polarity);
std::optional<Polarity> parse_polarity(std::string_view text);

// One opinion: a (possibly non-contiguous) token subsequence of a review with
// its sentiment and aspect category.
struct OpinionTriple {
  std::vector<std::string> phrase_tokens;
  std::vector<std::size_t> token_indices;  // strictly increasing
  Polarity polarity = Polarity::kNeutral;
  std::string aspect;
  std::string review_id;

  // Space-joined phrase tokens.
  std::string phrase() const { return join_tokens(phrase_tokens); }

  bool operator==(const OpinionTriple&) const = default;
};

// Opinions of one review, ordered by first token index then last token index.
struct OpinionSet {
  std::string review_id;
  std::vector<OpinionTriple> opinions;

  bool operator==(const OpinionSet&) const = default;
};

// review_id -> opinion set.
using Extractions = std::map<std::string, OpinionSet>;

// Token -> aspect category. `categories` is the declared category set for
// the domain and always contains "general".
struct AspectLexicon {
  std::vector<std::string> categories;
  std::unordered_map<std::string, std::string> aspect_of;
};

struct SentimentLexicon {
  std::unordered_map<std::string, Polarity> polarity_of;
  std::unordered_set<std::string> intensifiers;
};

struct Lexicons {
  std::string domain;
  AspectLexicon aspects;
  SentimentLexicon sentiment;
};

inline constexpr std::string_view kGeneralAspect = "general";

// Built-in lexicons for "restaurant" and "hotel". Throws NotFound otherwise.
Lexicons default_lexicons(const std::string& domain);

// JSON lexicon file:
//   {"domain": "...", "aspects": {"<category>": ["noun", ...], ...},
//    "positive": [...], "negative": [...], "intensifiers": [...]}
Lexicons load_lexicons(const std::string& path);
Lexicons parse_lexicons(const std::string& content, const std::string& source_name);

// Builds a triple from review token indices, validating the grounding
// invariants. Throws InvalidArgument when indices are out of range or not
// strictly increasing, or when they select the delimiter token.
OpinionTriple make_triple(const Review& review, std::vector<std::size_t> indices,
                          Polarity polarity, std::string aspect);

// Sorts by first token index, ties by last token index (stable).
void normalize_order(OpinionSet& set);

// Lexicon-driven extractor. For each sentiment word: an immediately preceding
// intensifier, the word itself, and the nearest aspect noun within three
// tokens after it (or, failing that, within three tokens before it). The
// search window stops at punctuation and at other sentiment words. Phrase
// tokens follow review order; the aspect is "general" when no noun is found.
OpinionSet extract_rule_based(const Review& review, const AspectLexicon& aspects,
                              const SentimentLexicon& sentiment);

// Runs the rule extractor over every review of the corpus.
Extractions extract_corpus(const Corpus& corpus, const Lexicons& lexicons);

// Loads externally tagged opinions (JSON Lines with review_id, token_indices,
// polarity, aspect). Every corpus review gets an entry; untagged reviews map
// to an empty set.
Extractions load_pretagged(const std::string& path, const Corpus& corpus);
Extractions parse_pretagged(const std::string& content, const std::string& source_name,
                            const Corpus& corpus);

// Serializes extractions in the pre-tagged format, corpus order.
std::string format_pretagged(const Extractions& extractions, const Corpus& corpus);

// Concatenation of the opinion sets of an entity's reviews in corpus order.
// Reviews absent from `extractions` contribute nothing.
std::vector<OpinionTriple> entity_opinion_set(const Extractions& extractions,
                                              const Corpus& corpus,
                                              const std::string& entity_id);

}  // namespace osum
