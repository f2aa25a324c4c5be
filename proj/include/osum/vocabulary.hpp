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
#include <string>
#include <unordered_map>
#include <vector>

namespace osum {

using TokenId = std::int32_t;

inline constexpr TokenId kPadId = 0;
inline constexpr TokenId kBosId = 1;
inline constexpr TokenId kEosId = 2;
inline constexpr TokenId kUnkId = 3;
inline constexpr TokenId kSepId = 4;
inline constexpr std::size_t kSpecialCount = 5;

// Token inventory. Ids 0-4 are reserved for <pad>, <bos>, <eos>, <unk> and
// the [SEP] delimiter; regular tokens follow in frequency-then-lexicographic
// order.
class Vocabulary {
 public:
  Vocabulary();
  // Rebuilds from a full id-ordered token list whose first five entries are
  // the specials. Throws InvalidArgument otherwise or on duplicates.
  explicit Vocabulary(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  TokenId id(const std::string& token) const;  // kUnkId when absent
  const std::string& token(TokenId id) const;
  bool contains(const std::string& token) const { return ids_.contains(token); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  std::vector<TokenId> encode(const std::vector<std::string>& tokens) const;
  // Drops specials other than [SEP].
  std::vector<std::string> decode(const std::vector<TokenId>& ids) const;

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> ids_;
};

// Counts every token of `streams` and keeps those seen at least `min_count`
// times. Throws InvalidArgument when the streams hold no tokens.
Vocabulary build_vocab(const std::vector<std::vector<std::string>>& streams,
                       std::size_t min_count);

}  // namespace osum
