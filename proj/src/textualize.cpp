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

#include "osum/textualize.hpp"

#include "osum/common.hpp"

namespace osum {
namespace {

const std::string kDelimiter = " " + std::string(kSepToken) + " ";

}  // namespace

TextualizedOpinions textualize_phrases(const std::vector<std::string>& phrases) {
  if (phrases.empty()) throw InvalidArgument("cannot textualize an empty opinion list");
  TextualizedOpinions out;
  for (const auto& phrase : phrases) {
    if (phrase.empty()) throw InvalidArgument("empty opinion phrase");
    if (phrase.find(kSepToken) != std::string::npos) {
      throw InvalidArgument("opinion phrase contains the delimiter");
    }
    if (out.phrase_count > 0) out.text += kDelimiter;
    out.text += phrase;
    ++out.phrase_count;
  }
  return out;
}

TextualizedOpinions textualize_training(const OpinionSet& opinion_set) {
  std::vector<std::string> phrases;
  for (const auto& opinion : opinion_set.opinions) phrases.push_back(opinion.phrase());
  if (phrases.empty()) {
    throw InvalidArgument("review '" + opinion_set.review_id + "' has no opinions");
  }
  return textualize_phrases(phrases);
}

TextualizedOpinions textualize_selected(const SelectedOpinions& selected) {
  std::vector<std::string> phrases;
  for (const auto& item : selected.items) phrases.push_back(item.representative.phrase());
  if (phrases.empty()) throw InvalidArgument("empty opinion selection");
  return textualize_phrases(phrases);
}

std::vector<std::string> split_textualization(const std::string& text) {
  std::vector<std::string> phrases;
  std::size_t start = 0;
  while (true) {
    const std::size_t hit = text.find(kSepToken, start);
    const std::size_t end = hit == std::string::npos ? text.size() : hit;
    std::string piece = text.substr(start, end - start);
    const bool first = phrases.empty() && start == 0;
    const bool last = hit == std::string::npos;
    // Every delimiter must be written as " [SEP] " between two phrases.
    if (!first) {
      if (piece.empty() || piece.front() != ' ') {
        throw InvalidArgument("malformed textualization: " + text);
      }
      piece.erase(0, 1);
    }
    if (!last) {
      if (piece.empty() || piece.back() != ' ') {
        throw InvalidArgument("malformed textualization: " + text);
      }
      piece.pop_back();
    }
    if (piece.empty() || is_blank(piece) || piece.front() == ' ' || piece.back() == ' ') {
      throw InvalidArgument("malformed textualization: " + text);
    }
    phrases.push_back(std::move(piece));
    if (last) break;
    start = hit + kSepToken.size();
  }
  return phrases;
}

}  // namespace osum
