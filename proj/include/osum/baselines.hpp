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
#include <string>
#include <vector>

#include "osum/corpus.hpp"

namespace osum {

// Continuous LexRank graph: idf-weighted cosine between sentences, zero
// diagonal.
struct SentenceGraph {
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::vector<double>> adjacency;
  double damping = 0.85;
};

// Splits on '.', '!' and '?' tokens; the terminal mark stays with its
// sentence. Sentences without a word token are dropped.
std::vector<std::vector<std::string>> split_sentences(const std::vector<std::string>& tokens);

// idf(w) = 1 + ln(N / df(w)) over the sentence set.
SentenceGraph build_sentence_graph(std::vector<std::vector<std::string>> sentences,
                                   double damping = 0.85);

// Damped power iteration on the row-normalized graph. Rows with no edges
// teleport uniformly. Stops when the L1 change drops below `tolerance` or
// after `max_iterations`.
std::vector<double> lexrank_centrality(const SentenceGraph& graph, double tolerance = 1e-8,
                                       std::size_t max_iterations = 200);

struct LexRankSummary {
  std::string summary;
  std::vector<std::vector<std::string>> sentences;
  std::vector<double> centrality;
  std::vector<std::size_t> chosen;  // sentence indices in output order
};

// Adds sentences by descending centrality (ties by position) while the token
// budget allows; a first sentence longer than the budget is truncated.
// Output keeps the original sentence order. Throws InvalidArgument when no
// sentence exists.
LexRankSummary lexrank(const std::vector<Review>& reviews, std::size_t budget_tokens = 60);
std::string lexrank_summarize(const std::vector<Review>& reviews, std::size_t budget_tokens = 60);

struct RankedReview {
  const Review* review = nullptr;
  double score = 0.0;
};

// Mean ROUGE-1 F1 against every other review, sorted descending with input
// order kept among ties. Throws InvalidArgument for fewer than two reviews.
std::vector<RankedReview> overlap_rank(const std::vector<Review>& reviews);

const Review& best_review(const std::vector<Review>& reviews);
const Review& worst_review(const std::vector<Review>& reviews);

}  // namespace osum
