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

#include "osum/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "osum/common.hpp"
#include "osum/evaluation.hpp"

namespace osum {
namespace {

bool is_terminal(const std::string& token) {
  return token == "." || token == "!" || token == "?";
}

}  // namespace

std::vector<std::vector<std::string>> split_sentences(const std::vector<std::string>& tokens) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> current;
  auto flush = [&] {
    const bool has_word = std::any_of(current.begin(), current.end(), [](const auto& t) {
      return !is_punctuation_token(t);
    });
    if (has_word) out.push_back(std::move(current));
    current.clear();
  };
  for (const auto& token : tokens) {
    current.push_back(token);
    if (is_terminal(token)) flush();
  }
  flush();
  return out;
}

SentenceGraph build_sentence_graph(std::vector<std::vector<std::string>> sentences,
                                   double damping) {
  if (!(damping > 0.0 && damping < 1.0)) throw InvalidArgument("damping must be in (0, 1)");
  const std::size_t n = sentences.size();
  std::map<std::string, std::size_t> df;
  for (const auto& sentence : sentences) {
    for (const auto& token : std::set<std::string>(sentence.begin(), sentence.end())) ++df[token];
  }
  std::vector<std::map<std::string, double>> vectors(n);
  std::vector<double> norms(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& token : sentences[i]) vectors[i][token] += 1.0;
    for (auto& [token, weight] : vectors[i]) {
      weight *= 1.0 + std::log(static_cast<double>(n) / static_cast<double>(df[token]));
      norms[i] += weight * weight;
    }
    norms[i] = std::sqrt(norms[i]);
  }
  SentenceGraph graph;
  graph.damping = damping;
  graph.adjacency.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dot = 0.0;
      for (const auto& [token, weight] : vectors[i]) {
        const auto it = vectors[j].find(token);
        if (it != vectors[j].end()) dot += weight * it->second;
      }
      const double denom = norms[i] * norms[j];
      const double sim = denom > 0.0 ? std::clamp(dot / denom, 0.0, 1.0) : 0.0;
      graph.adjacency[i][j] = sim;
      graph.adjacency[j][i] = sim;
    }
  }
  graph.sentences = std::move(sentences);
  return graph;
}

std::vector<double> lexrank_centrality(const SentenceGraph& graph, double tolerance,
                                       std::size_t max_iterations) {
  const std::size_t n = graph.sentences.size();
  if (n == 0) throw InvalidArgument("graph has no sentences");
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<std::vector<double>> transition(n, std::vector<double>(n, uniform));
  for (std::size_t i = 0; i < n; ++i) {
    const double row = std::accumulate(graph.adjacency[i].begin(), graph.adjacency[i].end(), 0.0);
    if (row > 0.0) {
      for (std::size_t j = 0; j < n; ++j) transition[i][j] = graph.adjacency[i][j] / row;
    }
  }
  std::vector<double> p(n, uniform), next(n);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += p[i] * transition[i][j];
      next[j] = (1.0 - graph.damping) * uniform + graph.damping * acc;
    }
    double change = 0.0;
    for (std::size_t j = 0; j < n; ++j) change += std::abs(next[j] - p[j]);
    std::swap(p, next);
    if (change < tolerance) break;
  }
  return p;
}

LexRankSummary lexrank(const std::vector<Review>& reviews, std::size_t budget_tokens) {
  std::vector<std::vector<std::string>> sentences;
  for (const auto& review : reviews) {
    for (auto& sentence : split_sentences(review.tokens)) sentences.push_back(std::move(sentence));
  }
  if (sentences.empty()) throw InvalidArgument("lexrank needs at least one sentence");
  LexRankSummary out;
  const SentenceGraph graph = build_sentence_graph(sentences);
  out.centrality = lexrank_centrality(graph);
  out.sentences = std::move(sentences);

  std::vector<std::size_t> order(out.sentences.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.centrality[a] > out.centrality[b];
  });
  std::size_t used = 0;
  std::vector<std::string> truncated;
  for (std::size_t idx : order) {
    const std::size_t len = out.sentences[idx].size();
    if (out.chosen.empty() && len > budget_tokens) {
      truncated.assign(out.sentences[idx].begin(), out.sentences[idx].begin() + budget_tokens);
      out.chosen.push_back(idx);
      break;
    }
    if (used + len > budget_tokens) continue;
    used += len;
    out.chosen.push_back(idx);
  }
  std::sort(out.chosen.begin(), out.chosen.end());
  std::vector<std::string> tokens;
  for (std::size_t idx : out.chosen) {
    const auto& sentence = truncated.empty() ? out.sentences[idx] : truncated;
    tokens.insert(tokens.end(), sentence.begin(), sentence.end());
  }
  out.summary = join_tokens(tokens);
  return out;
}

std::string lexrank_summarize(const std::vector<Review>& reviews, std::size_t budget_tokens) {
  return lexrank(reviews, budget_tokens).summary;
}

std::vector<RankedReview> overlap_rank(const std::vector<Review>& reviews) {
  if (reviews.size() < 2) throw InvalidArgument("overlap_rank needs at least two reviews");
  const std::size_t n = reviews.size();
  std::vector<double> totals(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double f = rouge_n(reviews[i].tokens, reviews[j].tokens, 1).f1;
      totals[i] += f;
      totals[j] += f;
    }
  }
  std::vector<RankedReview> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({&reviews[i], totals[i] / static_cast<double>(n - 1)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedReview& a, const RankedReview& b) { return a.score > b.score; });
  return out;
}

const Review& best_review(const std::vector<Review>& reviews) {
  return *overlap_rank(reviews).front().review;
}

const Review& worst_review(const std::vector<Review>& reviews) {
  return *overlap_rank(reviews).back().review;
}

}  // namespace osum
