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

#include "osum/vocabulary.hpp"

#include <algorithm>
#include <map>

#include "osum/common.hpp"
#include "osum/corpus.hpp"

namespace osum {
namespace {

std::vector<std::string> special_tokens() {
  return {"<pad>", "<bos>", "<eos>", "<unk>", std::string(kSepToken)};
}

}  // namespace

Vocabulary::Vocabulary() : Vocabulary(special_tokens()) {}

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  const auto specials = special_tokens();
  if (tokens_.size() < specials.size() ||
      !std::equal(specials.begin(), specials.end(), tokens_.begin())) {
    throw InvalidArgument("vocabulary must start with the special tokens");
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!ids_.emplace(tokens_[i], static_cast<TokenId>(i)).second) {
      throw InvalidArgument("duplicate vocabulary token '" + tokens_[i] + "'");
    }
  }
}

TokenId Vocabulary::id(const std::string& token) const {
  const auto it = ids_.find(token);
  return it == ids_.end() ? kUnkId : it->second;
}

const std::string& Vocabulary::token(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw InvalidArgument("token id " + std::to_string(id) + " out of range");
  }
  return tokens_[static_cast<std::size_t>(id)];
}

std::vector<TokenId> Vocabulary::encode(const std::vector<std::string>& tokens) const {
  std::vector<TokenId> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(id(t));
  return out;
}

std::vector<std::string> Vocabulary::decode(const std::vector<TokenId>& ids) const {
  std::vector<std::string> out;
  for (const TokenId id : ids) {
    if (id == kPadId || id == kBosId || id == kEosId) continue;
    out.push_back(token(id));
  }
  return out;
}

Vocabulary build_vocab(const std::vector<std::vector<std::string>>& streams,
                       std::size_t min_count) {
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;
  for (const auto& stream : streams) {
    for (const auto& token : stream) {
      ++counts[token];
      ++total;
    }
  }
  if (total == 0) throw InvalidArgument("build_vocab: no tokens");
  std::vector<std::pair<std::string, std::size_t>> kept;
  const auto specials = special_tokens();
  for (auto& [token, count] : counts) {
    if (count < min_count) continue;
    if (std::find(specials.begin(), specials.end(), token) != specials.end()) continue;
    kept.emplace_back(token, count);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;  // map iteration already sorted by token
  });
  auto tokens = specials;
  for (auto& [token, count] : kept) tokens.push_back(std::move(token));
  return Vocabulary(std::move(tokens));
}

}  // namespace osum
