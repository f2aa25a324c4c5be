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

#include "osum/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "osum/corpus.hpp"

namespace osum {
namespace {

bool candidate_token(TokenId id) { return id != kPadId && id != kBosId && id != kUnkId; }

std::vector<TokenId> encode_source(const GeneratorModel& model, const std::string& text) {
  auto ids = model.vocab().encode(tokenize(text));
  if (ids.empty()) throw InvalidArgument("empty generator input");
  return ids;
}

}  // namespace

void DecodeConfig::validate() const {
  if (beam_size < 1) throw InvalidArgument("beam size must be at least 1");
  if (max_len < 1) throw InvalidArgument("max_len must be at least 1");
  if (ngram_block == 1) throw InvalidArgument("ngram_block must be >= 2, or 0 to disable");
  if (!std::isfinite(length_penalty_alpha)) throw InvalidArgument("invalid length penalty");
}

double length_penalty(std::size_t length, double alpha) {
  return std::pow((5.0 + static_cast<double>(length)) / 6.0, alpha);
}

bool repeats_ngram(const std::vector<TokenId>& tokens, TokenId next, std::size_t n) {
  if (n == 0 || tokens.size() + 1 < n) return false;
  if (n == 1) return std::find(tokens.begin(), tokens.end(), next) != tokens.end();
  const std::size_t tail = tokens.size() - (n - 1);
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    if (tokens[i + n - 1] != next) continue;
    if (std::equal(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + n - 1),
                   tokens.begin() + static_cast<std::ptrdiff_t>(tail))) {
      return true;
    }
  }
  return false;
}

Hypothesis greedy_decode(const GeneratorModel& model, const std::vector<TokenId>& source,
                         const DecodeConfig& config) {
  config.validate();
  const InferenceSession session(model, source);
  auto cache = session.start();
  Hypothesis hyp;
  TokenId last = kBosId;
  while (hyp.tokens.size() < config.max_len) {
    const auto log_probs = session.step(cache, last);
    TokenId best = -1;
    double best_lp = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < log_probs.size(); ++t) {
      const auto id = static_cast<TokenId>(t);
      if (!candidate_token(id) || repeats_ngram(hyp.tokens, id, config.ngram_block)) continue;
      if (best < 0 || log_probs[t] > best_lp) {
        best = id;
        best_lp = log_probs[t];
      }
    }
    hyp.log_prob += best_lp;
    if (best == kEosId) {
      hyp.finished = true;
      break;
    }
    hyp.tokens.push_back(best);
    last = best;
  }
  const std::size_t n = hyp.tokens.size() + (hyp.finished ? 1 : 0);
  hyp.score = hyp.log_prob / length_penalty(n, config.length_penalty_alpha);
  return hyp;
}

Hypothesis beam_search(const GeneratorModel& model, const std::vector<TokenId>& source,
                       const DecodeConfig& config) {
  config.validate();
  const InferenceSession session(model, source);

  struct Live {
    std::vector<TokenId> tokens;
    double log_prob = 0.0;
    InferenceSession::DecoderCache cache;
  };
  struct Candidate {
    std::size_t parent;
    TokenId token;
    double log_prob;
  };

  std::vector<Live> live;
  live.push_back(Live{{}, 0.0, session.start()});
  std::vector<Hypothesis> finished;

  for (std::size_t step = 1; step <= config.max_len && !live.empty(); ++step) {
    std::vector<Candidate> candidates;
    for (std::size_t h = 0; h < live.size(); ++h) {
      Live& hyp = live[h];
      const TokenId last = hyp.tokens.empty() ? kBosId : hyp.tokens.back();
      const auto log_probs = session.step(hyp.cache, last);
      for (std::size_t t = 0; t < log_probs.size(); ++t) {
        const auto id = static_cast<TokenId>(t);
        if (!candidate_token(id) || repeats_ngram(hyp.tokens, id, config.ngram_block)) continue;
        candidates.push_back(Candidate{h, id, hyp.log_prob + log_probs[t]});
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                       return a.log_prob > b.log_prob;
                     });

    std::vector<Live> next;
    for (const auto& c : candidates) {
      if (next.size() == config.beam_size) break;
      const Live& parent = live[c.parent];
      if (c.token == kEosId) {
        Hypothesis done{parent.tokens, c.log_prob, 0.0, true};
        done.score = c.log_prob / length_penalty(step, config.length_penalty_alpha);
        finished.push_back(std::move(done));
        continue;
      }
      Live child{parent.tokens, c.log_prob, parent.cache};
      child.tokens.push_back(c.token);
      next.push_back(std::move(child));
    }
    live = std::move(next);
    if (finished.size() >= config.beam_size) break;
  }

  const auto better = [](const Hypothesis& a, const Hypothesis& b) { return a.score > b.score; };
  if (!finished.empty()) {
    return *std::min_element(finished.begin(), finished.end(), better);
  }
  std::vector<Hypothesis> open;
  for (const auto& hyp : live) {
    Hypothesis h{hyp.tokens, hyp.log_prob, 0.0, false};
    h.score = hyp.log_prob / length_penalty(hyp.tokens.size(), config.length_penalty_alpha);
    open.push_back(std::move(h));
  }
  return *std::min_element(open.begin(), open.end(), better);
}

std::string generate(const GeneratorModel& model, const TextualizedOpinions& input,
                     const DecodeConfig& config) {
  const auto source = encode_source(model, input.text);
  const Hypothesis best = beam_search(model, source, config);
  return join_tokens(model.vocab().decode(best.tokens));
}

}  // namespace osum
