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

#include "osum/extraction.hpp"

#include <algorithm>
#include <json.hpp>

#include "osum/common.hpp"

namespace osum {

std::string_view to_string(Polarity polarity) {
  switch (polarity) {
    case Polarity::kPositive:
      return "positive";
    case Polarity::kNeutral:
      return "neutral";
    case Polarity::kNegative:
      return "negative";
  }
  return "neutral";
}

std::optional<Polarity> parse_polarity(std::string_view text) {
  if (text == "positive") return Polarity::kPositive;
  if (text == "neutral") return Polarity::kNeutral;
  if (text == "negative") return Polarity::kNegative;
  return std::nullopt;
}

OpinionTriple make_triple(const Review& review, std::vector<std::size_t> indices,
                          Polarity polarity, std::string aspect) {
  if (indices.empty()) throw InvalidArgument("opinion has no token indices");
  OpinionTriple triple;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= review.tokens.size()) {
      throw InvalidArgument("token index " + std::to_string(indices[i]) +
                            " out of range for review '" + review.review_id +
                            "' with " + std::to_string(review.tokens.size()) +
                            " tokens");
    }
    if (i > 0 && indices[i] <= indices[i - 1]) {
      throw InvalidArgument("token indices must be strictly increasing");
    }
    if (review.tokens[indices[i]] == kSepToken) {
      throw InvalidArgument("opinion phrase may not contain the delimiter token");
    }
    triple.phrase_tokens.push_back(review.tokens[indices[i]]);
  }
  triple.token_indices = std::move(indices);
  triple.polarity = polarity;
  triple.aspect = std::move(aspect);
  triple.review_id = review.review_id;
  return triple;
}

void normalize_order(OpinionSet& set) {
  std::stable_sort(set.opinions.begin(), set.opinions.end(),
                   [](const OpinionTriple& a, const OpinionTriple& b) {
                     if (a.token_indices.front() != b.token_indices.front()) {
                       return a.token_indices.front() < b.token_indices.front();
                     }
                     return a.token_indices.back() < b.token_indices.back();
                   });
}

OpinionSet extract_rule_based(const Review& review, const AspectLexicon& aspects,
                              const SentimentLexicon& sentiment) {
  constexpr std::size_t kWindow = 3;
  const auto& tokens = review.tokens;
  OpinionSet set{review.review_id, {}};
  auto noun_at = [&](std::size_t i) { return aspects.aspect_of.find(tokens[i]); };
  auto stops = [&](std::size_t i) {
    return is_punctuation_token(tokens[i]) || sentiment.polarity_of.contains(tokens[i]);
  };

  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const auto hit = sentiment.polarity_of.find(tokens[t]);
    if (hit == sentiment.polarity_of.end()) continue;

    std::vector<std::size_t> indices;
    if (t > 0 && sentiment.intensifiers.contains(tokens[t - 1])) {
      indices.push_back(t - 1);
    }
    indices.push_back(t);

    std::optional<std::size_t> noun;
    for (std::size_t i = t + 1; i < tokens.size() && i <= t + kWindow; ++i) {
      if (stops(i)) break;
      if (noun_at(i) != aspects.aspect_of.end()) {
        noun = i;
        break;
      }
    }
    if (!noun) {
      for (std::size_t d = 1; d <= kWindow && d <= t; ++d) {
        const std::size_t i = t - d;
        if (stops(i)) break;
        if (i != indices.front() && noun_at(i) != aspects.aspect_of.end()) {
          noun = i;
          break;
        }
      }
    }

    std::string aspect(kGeneralAspect);
    if (noun) {
      aspect = noun_at(*noun)->second;
      indices.push_back(*noun);
      std::sort(indices.begin(), indices.end());
    }
    set.opinions.push_back(make_triple(review, std::move(indices), hit->second,
                                       std::move(aspect)));
  }
  normalize_order(set);
  return set;
}

Extractions extract_corpus(const Corpus& corpus, const Lexicons& lexicons) {
  Extractions out;
  for (const Review* review : corpus.all_reviews()) {
    out.emplace(review->review_id,
                extract_rule_based(*review, lexicons.aspects, lexicons.sentiment));
  }
  return out;
}

Extractions parse_pretagged(const std::string& content, const std::string& source_name,
                            const Corpus& corpus) {
  Extractions out;
  for (const Review* review : corpus.all_reviews()) {
    out.emplace(review->review_id, OpinionSet{review->review_id, {}});
  }
  const auto lines = split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (is_blank(lines[i])) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(source_name, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) {
      throw FormatError(source_name, line_no, "record must be a JSON object");
    }
    for (const char* key : {"review_id", "token_indices", "polarity", "aspect"}) {
      if (!record.contains(key)) {
        throw FormatError(source_name, line_no, std::string("missing field '") + key + "'");
      }
    }
    if (!record["review_id"].is_string() || !record["polarity"].is_string() ||
        !record["aspect"].is_string() || !record["token_indices"].is_array()) {
      throw FormatError(source_name, line_no, "field has the wrong type");
    }
    const auto review_id = record["review_id"].get<std::string>();
    const Review* review = corpus.find_review(review_id);
    if (review == nullptr) {
      throw FormatError(source_name, line_no, "unknown review_id '" + review_id + "'");
    }
    const auto polarity = parse_polarity(record["polarity"].get<std::string>());
    if (!polarity) {
      throw FormatError(source_name, line_no,
                        "polarity must be positive, neutral or negative");
    }
    auto aspect = record["aspect"].get<std::string>();
    if (aspect.empty()) throw FormatError(source_name, line_no, "empty aspect");
    std::vector<std::size_t> indices;
    for (const auto& value : record["token_indices"]) {
      if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw FormatError(source_name, line_no,
                          "token_indices must be non-negative integers");
      }
      indices.push_back(value.get<std::size_t>());
    }
    try {
      out[review_id].opinions.push_back(
          make_triple(*review, std::move(indices), *polarity, std::move(aspect)));
    } catch (const InvalidArgument& e) {
      throw FormatError(source_name, line_no, e.what());
    }
  }
  for (auto& [id, set] : out) normalize_order(set);
  return out;
}

Extractions load_pretagged(const std::string& path, const Corpus& corpus) {
  return parse_pretagged(read_file(path), path, corpus);
}

std::string format_pretagged(const Extractions& extractions, const Corpus& corpus) {
  std::string out;
  for (const Review* review : corpus.all_reviews()) {
    const auto it = extractions.find(review->review_id);
    if (it == extractions.end()) continue;
    for (const auto& triple : it->second.opinions) {
      nlohmann::ordered_json record;
      record["review_id"] = triple.review_id;
      record["token_indices"] = triple.token_indices;
      record["polarity"] = to_string(triple.polarity);
      record["aspect"] = triple.aspect;
      record["phrase"] = triple.phrase();
      out += record.dump();
      out.push_back('\n');
    }
  }
  return out;
}

std::vector<OpinionTriple> entity_opinion_set(const Extractions& extractions,
                                              const Corpus& corpus,
                                              const std::string& entity_id) {
  std::vector<OpinionTriple> out;
  for (const auto& review : corpus.entity_reviews(entity_id)) {
    const auto it = extractions.find(review.review_id);
    if (it == extractions.end()) continue;
    out.insert(out.end(), it->second.opinions.begin(), it->second.opinions.end());
  }
  return out;
}

}  // namespace osum
