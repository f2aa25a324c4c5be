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

#include "osum/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "osum/common.hpp"

namespace osum {

EmbeddingStore::EmbeddingStore(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidArgument("embedding dimension must be positive");
}

bool EmbeddingStore::insert(const std::string& token,
                            std::span<const double> values) {
  if (values.size() != dim_) {
    throw InvalidArgument("vector for '" + token + "' has " +
                          std::to_string(values.size()) + " values, expected " +
                          std::to_string(dim_));
  }
  if (index_.contains(token)) return false;
  index_.emplace(token, values_.size() / dim_);
  values_.insert(values_.end(), values.begin(), values.end());
  return true;
}

std::optional<std::span<const double>> EmbeddingStore::lookup(
    const std::string& token) const {
  const auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return std::span<const double>(values_.data() + it->second * dim_, dim_);
}

EmbeddingStore parse_embeddings(const std::string& content,
                                const std::string& source_name,
                                std::size_t expected_dim) {
  EmbeddingStore store(expected_dim);
  std::vector<double> row;
  row.reserve(expected_dim);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string::npos) end = content.size();
    const std::string_view line(content.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    if (fields.empty()) continue;
    if (fields.size() - 1 != expected_dim) {
      throw FormatError(source_name, line_no,
                        "expected " + std::to_string(expected_dim) +
                            " values, found " + std::to_string(fields.size() - 1));
    }
    row.clear();
    for (std::size_t f = 1; f < fields.size(); ++f) {
      double value = 0.0;
      const auto* first = fields[f].data();
      const auto* last = first + fields[f].size();
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw FormatError(source_name, line_no,
                          "invalid number '" + std::string(fields[f]) + "'");
      }
      row.push_back(value);
    }
    store.insert(std::string(fields[0]), row);
  }
  return store;
}

EmbeddingStore load_embeddings(const std::string& path, std::size_t expected_dim) {
  return parse_embeddings(read_file(path), path, expected_dim);
}

PhraseVector phrase_vector(const EmbeddingStore& store,
                           const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw InvalidArgument("phrase_vector: empty token list");
  PhraseVector out;
  out.values.assign(store.dim(), 0.0);
  out.token_count = tokens.size();
  std::size_t found = 0;
  for (const auto& token : tokens) {
    const auto vec = store.lookup(token);
    if (!vec) {
      ++out.oov_count;
      continue;
    }
    ++found;
    for (std::size_t d = 0; d < out.values.size(); ++d) out.values[d] += (*vec)[d];
  }
  if (found > 0) {
    for (auto& v : out.values) v /= static_cast<double>(found);
  }
  return out;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw InvalidArgument("cosine: length mismatch (" + std::to_string(u.size()) +
                          " vs " + std::to_string(v.size()) + ")");
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  if (std::equal(u.begin(), u.end(), v.begin())) return 1.0;
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

}  // namespace osum
