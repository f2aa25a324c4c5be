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
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace osum {

// Word vectors keyed by token. All vectors share one dimension.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return index_.size(); }

  // Inserts a vector; returns false (and keeps the existing entry) when the
  // token is already present. Throws InvalidArgument on a length mismatch.
  bool insert(const std::string& token, std::span<const double> values);

  // Absent tokens yield an empty optional, never a default vector.
  std::optional<std::span<const double>> lookup(const std::string& token) const;

  bool contains(const std::string& token) const { return index_.contains(token); }

 private:
  std::size_t dim_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> values_;
};

struct PhraseVector {
  std::vector<double> values;
  std::size_t oov_count = 0;
  std::size_t token_count = 0;
};

// Parses the whitespace-separated text format: a token followed by exactly
// `expected_dim` decimal numbers per line. Duplicate tokens keep their first
// occurrence. Blank lines are ignored.
EmbeddingStore load_embeddings(const std::string& path, std::size_t expected_dim);
EmbeddingStore parse_embeddings(const std::string& content,
                                const std::string& source_name,
                                std::size_t expected_dim);

// Mean of the in-vocabulary token vectors; zero vector when every token is
// out of vocabulary. Throws InvalidArgument on an empty token list.
PhraseVector phrase_vector(const EmbeddingStore& store,
                           const std::vector<std::string>& tokens);

// Cosine similarity, clamped to [-1, 1]. Zero when either vector has zero
// norm; exactly 1 for identical non-zero vectors.
double cosine(std::span<const double> u, std::span<const double> v);

}  // namespace osum
