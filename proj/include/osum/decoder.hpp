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

#include "osum/model.hpp"
#include "osum/textualize.hpp"

namespace osum {

struct DecodeConfig {
  std::size_t beam_size = 5;
  double length_penalty_alpha = 0.6;
  std::size_t ngram_block = 3;  // 0 disables blocking
  std::size_t max_len = 60;

  void validate() const;
};

// ((5 + n) / 6) ^ alpha
double length_penalty(std::size_t length, double alpha);

// True when appending `next` to `tokens` would repeat an n-gram already
// present in `tokens`.
bool repeats_ngram(const std::vector<TokenId>& tokens, TokenId next, std::size_t n);

struct Hypothesis {
  std::vector<TokenId> tokens;  // generated tokens, EOS excluded
  double log_prob = 0.0;
  double score = 0.0;           // log_prob / length_penalty(n)
  bool finished = false;        // ended with EOS
};

// Candidate tokens exclude <pad>, <bos> and <unk>; blocked n-grams are
// masked out. Finished hypotheses count EOS in their length n.
Hypothesis greedy_decode(const GeneratorModel& model, const std::vector<TokenId>& source,
                         const DecodeConfig& config);

// Beam search. Each step expands every live hypothesis, ranks expansions by
// cumulative log-probability (ties: earlier hypothesis, then lower token
// id) and keeps the best `beam_size` non-EOS expansions live; EOS expansions
// ranked above the cut are finished. Stops once `beam_size` hypotheses have
// finished, the beam empties, or `max_len` tokens were generated. Returns
// the best-scoring finished hypothesis, else the best live one.
Hypothesis beam_search(const GeneratorModel& model, const std::vector<TokenId>& source,
                       const DecodeConfig& config);

// Tokenizes and encodes the textualized opinions, decodes, and joins the
// generated tokens with spaces.
std::string generate(const GeneratorModel& model, const TextualizedOpinions& input,
                     const DecodeConfig& config);

}  // namespace osum
