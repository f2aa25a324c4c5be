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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>

#include "osum/common.hpp"
#include "test_util.hpp"

namespace osum {
namespace {

using testing::small_vocab;
using testing::tiny_dims;

bool has_repeated_ngram(const std::vector<TokenId>& tokens, std::size_t n) {
  std::set<std::vector<TokenId>> seen;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    if (!seen.insert({tokens.begin() + i, tokens.begin() + i + n}).second) return true;
  }
  return false;
}

// A random model whose output strongly prefers a few tokens makes
// repetition likely, which exercises blocking.
GeneratorModel peaked_model(std::uint64_t seed, std::size_t words = 8) {
  GeneratorModel model(tiny_dims(), small_vocab(words), seed);
  for (auto& x : model.parameters()[model.embedding_index()].value.values()) x *= 4.0;
  return model;
}

std::vector<TokenId> random_source(Rng& rng, std::size_t vocab) {
  std::vector<TokenId> ids;
  const auto n = 1 + rng.uniform_index(6);
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(static_cast<TokenId>(kSpecialCount + rng.uniform_index(vocab - kSpecialCount)));
  }
  return ids;
}

TEST(LengthPenaltyTest, Values) {
  EXPECT_NEAR(length_penalty(5, 0.6), 1.3587, 1e-4);
  EXPECT_EQ(length_penalty(1, 0.6), 1.0);
  EXPECT_EQ(length_penalty(7, 0.0), 1.0);
}

TEST(RepeatsNgramTest, Cases) {
  EXPECT_TRUE(repeats_ngram({5, 6, 7, 5, 6}, 7, 3));
  EXPECT_FALSE(repeats_ngram({5, 6, 7, 5, 6}, 8, 3));
  EXPECT_FALSE(repeats_ngram({5, 6}, 7, 3));
  EXPECT_TRUE(repeats_ngram({5, 5}, 5, 2));
  EXPECT_FALSE(repeats_ngram({5, 5, 5}, 5, 0));
}

TEST(DecodeConfigTest, Validation) {
  DecodeConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.beam_size, 5u);
  EXPECT_EQ(c.max_len, 60u);
  EXPECT_EQ(c.ngram_block, 3u);
  EXPECT_EQ(c.length_penalty_alpha, 0.6);
  c.beam_size = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = DecodeConfig{};
  c.max_len = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = DecodeConfig{};
  c.ngram_block = 1;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(DecoderTest, BeamOneEqualsGreedy) {
  Rng rng(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto model = peaked_model(seed);
    const auto source = random_source(rng, model.vocab().size());
    DecodeConfig config;
    config.beam_size = 1;
    config.max_len = 20;
    const auto beam = beam_search(model, source, config);
    const auto greedy = greedy_decode(model, source, config);
    EXPECT_EQ(beam.tokens, greedy.tokens);
    EXPECT_NEAR(beam.log_prob, greedy.log_prob, 1e-12);
  }
}

TEST(DecoderTest, BlockingLengthAndCandidateInvariants) {
  Rng rng(6);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto model = peaked_model(seed, 4);
    DecodeConfig config;
    config.beam_size = 1 + rng.uniform_index(4);
    config.max_len = 1 + rng.uniform_index(25);
    const auto h = beam_search(model, random_source(rng, model.vocab().size()), config);
    EXPECT_LE(h.tokens.size(), config.max_len);
    EXPECT_FALSE(has_repeated_ngram(h.tokens, 3));
    for (TokenId t : h.tokens) {
      EXPECT_NE(t, kPadId);
      EXPECT_NE(t, kBosId);
      EXPECT_NE(t, kUnkId);
      EXPECT_NE(t, kEosId);
    }
    const double n = static_cast<double>(h.tokens.size() + (h.finished ? 1 : 0));
    EXPECT_NEAR(h.score, h.log_prob / std::pow((5.0 + n) / 6.0, 0.6), 1e-12);
  }
}

TEST(DecoderTest, BlockingOffAllowsRepeats) {
  // With four real words and a long horizon, an unblocked peaked model
  // repeats itself on at least one seed.
  bool repeated = false;
  for (std::uint64_t seed = 0; seed < 30 && !repeated; ++seed) {
    const auto model = peaked_model(seed, 2);
    DecodeConfig config;
    config.ngram_block = 0;
    config.max_len = 30;
    config.beam_size = 1;
    const auto h = greedy_decode(model, {5, 6}, config);
    repeated = has_repeated_ngram(h.tokens, 3);
  }
  EXPECT_TRUE(repeated);
}

TEST(DecoderTest, Deterministic) {
  const auto model = peaked_model(3);
  DecodeConfig config;
  const auto a = beam_search(model, {5, 6, 7}, config);
  const auto b = beam_search(model, {5, 6, 7}, config);
  EXPECT_EQ(a.tokens, b.tokens);
  EXPECT_EQ(a.score, b.score);
}

TEST(DecoderTest, GenerateProducesVocabularyWords) {
  const auto model = peaked_model(1);
  const auto text = generate(model, TextualizedOpinions{"w1 [SEP] w2", 2}, DecodeConfig{});
  for (const auto& token : tokenize(text)) {
    EXPECT_TRUE(model.vocab().contains(token)) << token;
  }
}

}  // namespace
}  // namespace osum

namespace osum {
namespace {

TEST(DecoderTest, ExhaustiveBeamDominatesFinishedHypotheses) {
  // Two real words plus EOS and [SEP] with max_len 3 leave at most 64 live
  // prefixes, so a beam of 200 enumerates everything.
  Rng rng(31);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto model = peaked_model(seed, 2);
    const auto source = random_source(rng, model.vocab().size());
    DecodeConfig config;
    config.max_len = 3;
    config.beam_size = 200;
    const auto best = beam_search(model, source, config);
    ASSERT_TRUE(best.finished);
    for (std::size_t beam = 1; beam <= 6; ++beam) {
      config.beam_size = beam;
      const auto h = beam_search(model, source, config);
      if (h.finished) EXPECT_GE(best.score, h.score - 1e-12) << "beam " << beam;
    }
  }
}

}  // namespace
}  // namespace osum
