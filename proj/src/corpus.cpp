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

#include "osum/corpus.hpp"

#include <json.hpp>

#include "osum/common.hpp"

namespace osum {
namespace {

// Decodes one UTF-8 code point at `pos`, advancing it. Invalid bytes decode
// to U+FFFD and consume one byte.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  int extra = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + extra >= s.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (int i = 1; i <= extra; ++i) {
    const auto byte = static_cast<unsigned char>(s[pos + i]);
    if ((byte & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (byte & 0x3F);
  }
  pos += extra + 1;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v' || cp == 0x00A0 || cp == 0x1680 ||
         (cp >= 0x2000 && cp <= 0x200B) || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x202F || cp == 0x205F || cp == 0x3000 || cp == 0xFEFF;
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  return (cp >= 0x00A1 && cp <= 0x00BF && cp != 0x00AA && cp != 0x00B2 &&
          cp != 0x00B3 && cp != 0x00B5 && cp != 0x00B9 && cp != 0x00BA &&
          cp != 0x00BC && cp != 0x00BD && cp != 0x00BE) ||
         cp == 0x00D7 || cp == 0x00F7 || (cp >= 0x2010 && cp <= 0x205E) ||
         (cp >= 0x3001 && cp <= 0x3003) || (cp >= 0x3008 && cp <= 0x3011) ||
         (cp >= 0xFF01 && cp <= 0xFF0F) || cp == 0xFFFD;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp < 0x80) return cp;
  // Latin-1 supplement, skipping the multiplication sign.
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 32;
  // Latin Extended-A: alternating upper/lower pairs.
  if (cp >= 0x0100 && cp <= 0x0137 && cp % 2 == 0) return cp + 1;
  if (cp >= 0x0139 && cp <= 0x0148 && cp % 2 == 1) return cp + 1;
  if (cp >= 0x014A && cp <= 0x0177 && cp % 2 == 0) return cp + 1;
  if (cp >= 0x0391 && cp <= 0x03AB && cp != 0x03A2) return cp + 32;
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 32;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 80;
  return cp;
}

std::string required_string(const nlohmann::json& record, const char* key,
                            const std::string& source, std::size_t line) {
  const auto it = record.find(key);
  if (it == record.end()) {
    throw FormatError(source, line, std::string("missing field '") + key + "'");
  }
  if (!it->is_string()) {
    throw FormatError(source, line, std::string("field '") + key +
                                        "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) tokens.push_back(std::move(word));
    word.clear();
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text.substr(pos, kSepToken.size()) == kSepToken) {
      flush();
      tokens.emplace_back(kSepToken);
      pos += kSepToken.size();
      continue;
    }
    const char32_t cp = decode_utf8(text, pos);
    if (is_space(cp)) {
      flush();
    } else if (is_punct(cp)) {
      flush();
      std::string punct;
      append_utf8(punct, cp);
      tokens.push_back(std::move(punct));
    } else {
      append_utf8(word, to_lower(cp));
    }
  }
  flush();
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

bool is_punctuation_token(std::string_view token) {
  if (token.empty() || token == kSepToken) return false;
  std::size_t pos = 0;
  const char32_t cp = decode_utf8(token, pos);
  return pos == token.size() && is_punct(cp);
}

bool operator==(const Review& a, const Review& b) {
  return a.review_id == b.review_id && a.entity_id == b.entity_id &&
         a.text == b.text && a.tokens == b.tokens && a.split == b.split;
}

void Corpus::add(std::string review_id, std::string entity_id,
                 std::string text, std::optional<std::string> split) {
  if (review_index_.contains(review_id)) {
    throw InvalidArgument("duplicate review_id '" + review_id + "'");
  }
  auto [it, inserted] = entities_.try_emplace(entity_id);
  if (inserted) entity_order_.push_back(entity_id);
  review_index_.emplace(review_id, std::make_pair(entity_id, it->second.size()));
  Review review;
  review.tokens = tokenize(text);
  review.review_id = std::move(review_id);
  review.entity_id = std::move(entity_id);
  review.text = std::move(text);
  review.split = std::move(split);
  it->second.push_back(std::move(review));
  ++review_count_;
}

const std::vector<Review>& Corpus::entity_reviews(
    const std::string& entity_id) const {
  const auto it = entities_.find(entity_id);
  if (it == entities_.end()) {
    throw NotFound("unknown entity '" + entity_id + "'");
  }
  return it->second;
}

bool Corpus::has_entity(const std::string& entity_id) const {
  return entities_.contains(entity_id);
}

const Review* Corpus::find_review(const std::string& review_id) const {
  const auto it = review_index_.find(review_id);
  if (it == review_index_.end()) return nullptr;
  return &entities_.at(it->second.first)[it->second.second];
}

const Review& Corpus::review(const std::string& review_id) const {
  const Review* found = find_review(review_id);
  if (found == nullptr) throw NotFound("unknown review '" + review_id + "'");
  return *found;
}

std::vector<const Review*> Corpus::all_reviews() const {
  std::vector<const Review*> out;
  out.reserve(review_count_);
  for (const auto& entity : entity_order_) {
    for (const auto& review : entities_.at(entity)) out.push_back(&review);
  }
  return out;
}

bool Corpus::operator==(const Corpus& other) const {
  return domain_label_ == other.domain_label_ &&
         entity_order_ == other.entity_order_ && entities_ == other.entities_;
}

IngestResult parse_reviews(const std::string& content,
                           const std::string& source_name,
                           const std::string& domain_label) {
  IngestResult result{Corpus(domain_label), 0};
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
    auto review_id = required_string(record, "review_id", source_name, line_no);
    auto entity_id = required_string(record, "entity_id", source_name, line_no);
    auto text = required_string(record, "text", source_name, line_no);
    std::optional<std::string> split;
    if (const auto it = record.find("split"); it != record.end() && !it->is_null()) {
      if (!it->is_string()) {
        throw FormatError(source_name, line_no, "field 'split' must be a string");
      }
      split = it->get<std::string>();
      if (*split != "train" && *split != "dev" && *split != "test") {
        throw FormatError(source_name, line_no,
                          "field 'split' must be one of train, dev, test");
      }
    }
    try {
      result.corpus.add(std::move(review_id), std::move(entity_id),
                        std::move(text), std::move(split));
    } catch (const InvalidArgument& e) {
      throw FormatError(source_name, line_no, e.what());
    }
    ++result.records_read;
  }
  return result;
}

std::string format_reviews(const Corpus& corpus) {
  std::string out;
  for (const Review* review : corpus.all_reviews()) {
    nlohmann::json record = {{"review_id", review->review_id},
                             {"entity_id", review->entity_id},
                             {"text", review->text}};
    if (review->split) record["split"] = *review->split;
    out += record.dump();
    out.push_back('\n');
  }
  return out;
}

IngestResult ingest_reviews(const std::string& path,
                            const std::string& domain_label) {
  return parse_reviews(read_file(path), path, domain_label);
}

}  // namespace osum
