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

#include "osum/extraction.hpp"

#include <gtest/gtest.h>

#include "osum/common.hpp"
#include "test_util.hpp"

namespace osum {
namespace {

using Tokens = std::vector<std::string>;
using Indices = std::vector<std::size_t>;

AspectLexicon aspects(std::initializer_list<std::pair<const char*, const char*>> entries) {
  AspectLexicon lex;
  for (const auto& [noun, category] : entries) {
    lex.aspect_of.emplace(noun, category);
    lex.categories.push_back(category);
  }
  lex.categories.emplace_back(kGeneralAspect);
  return lex;
}

SentimentLexicon sentiment(std::initializer_list<std::pair<const char*, Polarity>> entries) {
  SentimentLexicon lex;
  for (const auto& [word, polarity] : entries) lex.polarity_of.emplace(word, polarity);
  lex.intensifiers = {"very", "really"};
  return lex;
}

Review review_of(const std::string& id, const std::string& text) {
  Review r;
  r.review_id = id;
  r.entity_id = "e";
  r.text = text;
  r.tokens = tokenize(text);
  return r;
}

TEST(RuleExtractorTest, PrecedingNounKeepsReviewOrder) {
  const auto set = extract_rule_based(review_of("r1", "the bed was very comfy"),
                                      aspects({{"bed", "room"}}),
                                      sentiment({{"comfy", Polarity::kPositive}}));
  ASSERT_EQ(set.opinions.size(), 1u);
  const auto& t = set.opinions[0];
  EXPECT_EQ(t.token_indices, (Indices{1, 3, 4}));
  EXPECT_EQ(t.phrase_tokens, (Tokens{"bed", "very", "comfy"}));
  EXPECT_EQ(t.polarity, Polarity::kPositive);
  EXPECT_EQ(t.aspect, "room");
  EXPECT_EQ(t.review_id, "r1");
}

TEST(RuleExtractorTest, NoMatches) {
  const auto set = extract_rule_based(review_of("r", "hello world"), aspects({{"bed", "room"}}),
                                      sentiment({{"comfy", Polarity::kPositive}}));
  EXPECT_TRUE(set.opinions.empty());
  EXPECT_EQ(set.review_id, "r");
}

TEST(RuleExtractorTest, FollowingNoun) {
  const auto set = extract_rule_based(review_of("r", "clean bath"),
                                      aspects({{"bath", "bathroom"}}),
                                      sentiment({{"clean", Polarity::kPositive}}));
  ASSERT_EQ(set.opinions.size(), 1u);
  EXPECT_EQ(set.opinions[0].phrase_tokens, (Tokens{"clean", "bath"}));
  EXPECT_EQ(set.opinions[0].aspect, "bathroom");
}

TEST(RuleExtractorTest, FollowingNounPreferredOverPreceding) {
  const auto set = extract_rule_based(review_of("r", "staff nice food"),
                                      aspects({{"staff", "service"}, {"food", "food"}}),
                                      sentiment({{"nice", Polarity::kPositive}}));
  ASSERT_EQ(set.opinions.size(), 1u);
  EXPECT_EQ(set.opinions[0].aspect, "food");
}

TEST(RuleExtractorTest, WindowIsThreeTokens) {
  const auto lex = aspects({{"room", "room"}});
  const auto sent = sentiment({{"nice", Polarity::kPositive}});
  auto set = extract_rule_based(review_of("r", "nice a b room"), lex, sent);
  EXPECT_EQ(set.opinions[0].aspect, "room");
  set = extract_rule_based(review_of("r", "nice a b c room"), lex, sent);
  EXPECT_EQ(set.opinions[0].aspect, "general");
  EXPECT_EQ(set.opinions[0].phrase_tokens, (Tokens{"nice"}));
}

TEST(RuleExtractorTest, WindowStopsAtPunctuationAndSentimentWords) {
  const auto lex = aspects({{"room", "room"}, {"staff", "service"}});
  const auto sent = sentiment({{"nice", Polarity::kPositive}, {"rude", Polarity::kNegative}});
  auto set = extract_rule_based(review_of("r", "nice . room"), lex, sent);
  EXPECT_EQ(set.opinions[0].aspect, "general");
  set = extract_rule_based(review_of("r", "the room was nice and rude staff"), lex, sent);
  ASSERT_EQ(set.opinions.size(), 2u);
  EXPECT_EQ(set.opinions[0].phrase_tokens, (Tokens{"room", "nice"}));
  EXPECT_EQ(set.opinions[1].phrase_tokens, (Tokens{"rude", "staff"}));
  EXPECT_EQ(set.opinions[1].polarity, Polarity::kNegative);
}

TEST(RuleExtractorTest, EveryTripleIsGroundedAndDeterministic) {
  const auto lex = default_lexicons("hotel");
  Rng rng(2);
  const Tokens words = {"the", "room", "was", "very", "clean", "dirty", "staff", "rude",
                        ".", ",", "and", "great", "location", "really", "view"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    const auto len = rng.uniform_index(15);
    for (std::size_t i = 0; i < len; ++i) text += words[rng.uniform_index(words.size())] + " ";
    const auto review = review_of("r", text);
    const auto a = extract_rule_based(review, lex.aspects, lex.sentiment);
    const auto b = extract_rule_based(review, lex.aspects, lex.sentiment);
    ASSERT_EQ(a, b);
    for (std::size_t i = 0; i < a.opinions.size(); ++i) {
      const auto& t = a.opinions[i];
      for (std::size_t j = 0; j < t.token_indices.size(); ++j) {
        ASSERT_EQ(review.tokens[t.token_indices[j]], t.phrase_tokens[j]);
        if (j > 0) ASSERT_LT(t.token_indices[j - 1], t.token_indices[j]);
      }
      ASSERT_NE(t.polarity, Polarity::kNeutral);
      if (i > 0) ASSERT_LE(a.opinions[i - 1].token_indices.front(), t.token_indices.front());
    }
  }
}

TEST(MakeTripleTest, ValidatesIndices) {
  const auto r = review_of("r", "great food [SEP] x");
  EXPECT_THROW(make_triple(r, {1, 0}, Polarity::kPositive, "food"), InvalidArgument);
  EXPECT_THROW(make_triple(r, {0, 0}, Polarity::kPositive, "food"), InvalidArgument);
  EXPECT_THROW(make_triple(r, {9}, Polarity::kPositive, "food"), InvalidArgument);
  EXPECT_THROW(make_triple(r, {1, 2}, Polarity::kPositive, "food"), InvalidArgument);
  EXPECT_THROW(make_triple(r, {}, Polarity::kPositive, "food"), InvalidArgument);
}

Corpus small_corpus() {
  Corpus corpus("restaurant");
  corpus.add("r1", "e1", "great food");
  corpus.add("r2", "e1", "the staff were rude and slow");
  corpus.add("r3", "e2", "nothing here");
  return corpus;
}

TEST(PretaggedTest, DirectLoad) {
  const auto corpus = small_corpus();
  const auto ex = parse_pretagged(
      R"({"review_id":"r1","token_indices":[0,1],"polarity":"positive","aspect":"food"})", "m",
      corpus);
  ASSERT_EQ(ex.at("r1").opinions.size(), 1u);
  EXPECT_EQ(ex.at("r1").opinions[0].phrase_tokens, (Tokens{"great", "food"}));
  EXPECT_TRUE(ex.at("r2").opinions.empty());
  EXPECT_EQ(ex.size(), 3u);
}

TEST(PretaggedTest, Errors) {
  const auto corpus = small_corpus();
  EXPECT_THROW(parse_pretagged(
                   R"({"review_id":"r1","token_indices":[99],"polarity":"positive","aspect":"f"})",
                   "m", corpus),
               FormatError);
  EXPECT_THROW(parse_pretagged(
                   R"({"review_id":"zz","token_indices":[0],"polarity":"positive","aspect":"f"})",
                   "m", corpus),
               FormatError);
  EXPECT_THROW(
      parse_pretagged(
          R"({"review_id":"r1","token_indices":[1,0],"polarity":"positive","aspect":"f"})", "m",
          corpus),
      FormatError);
  EXPECT_THROW(
      parse_pretagged(R"({"review_id":"r1","token_indices":[0],"polarity":"meh","aspect":"f"})",
                      "m", corpus),
      FormatError);
  try {
    parse_pretagged(
        "\n{\"review_id\":\"r1\",\"token_indices\":[0],\"polarity\":\"x\",\"aspect\":\"f\"}", "m",
        corpus);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(PretaggedTest, NormalizesToReviewOrder) {
  const auto corpus = small_corpus();
  const std::string content =
      "{\"review_id\":\"r2\",\"token_indices\":[1,3],\"polarity\":\"negative\",\"aspect\":\"service\"}\n"
      "{\"review_id\":\"r2\",\"token_indices\":[0,1],\"polarity\":\"neutral\",\"aspect\":\"service\"}\n";
  const auto ex = parse_pretagged(content, "m", corpus);
  const auto& ops = ex.at("r2").opinions;
  ASSERT_EQ(ops.size(), 2u);
  EXPECT_EQ(ops[0].token_indices, (Indices{0, 1}));
  EXPECT_EQ(ops[0].polarity, Polarity::kNeutral);
  EXPECT_EQ(ops[1].phrase_tokens, (Tokens{"staff", "rude"}));
}

TEST(PretaggedTest, FormatRoundTrip) {
  const auto corpus = small_corpus();
  const auto ex = extract_corpus(corpus, default_lexicons("restaurant"));
  const auto again = parse_pretagged(format_pretagged(ex, corpus), "m", corpus);
  EXPECT_EQ(ex, again);
}

TEST(EntityOpinionSetTest, ConcatenatesInReviewOrder) {
  Corpus corpus("d");
  corpus.add("a", "e", "great food and nice staff");
  corpus.add("b", "e", "great food");
  corpus.add("c", "f", "nothing");
  const auto ex = extract_corpus(corpus, default_lexicons("restaurant"));
  const auto set = entity_opinion_set(ex, corpus, "e");
  ASSERT_EQ(set.size(), 3u);
  EXPECT_EQ(set[0].review_id, "a");
  EXPECT_EQ(set[2].review_id, "b");
  EXPECT_EQ(set[0].phrase(), set[2].phrase());
  EXPECT_TRUE(entity_opinion_set(ex, corpus, "f").empty());
  EXPECT_THROW(entity_opinion_set(ex, corpus, "zzz"), NotFound);
  std::size_t total = 0;
  for (const auto& review : corpus.entity_reviews("e")) total += ex.at(review.review_id).opinions.size();
  EXPECT_EQ(total, set.size());
}

TEST(LexiconTest, BuiltInDomains) {
  for (const char* domain : {"restaurant", "hotel"}) {
    const auto lex = default_lexicons(domain);
    EXPECT_EQ(lex.domain, domain);
    EXPECT_EQ(lex.aspects.categories.back(), "general");
    for (const auto& [noun, category] : lex.aspects.aspect_of) {
      EXPECT_NE(std::find(lex.aspects.categories.begin(), lex.aspects.categories.end(), category),
                lex.aspects.categories.end());
    }
  }
  EXPECT_THROW(default_lexicons("movies"), NotFound);
}

TEST(LexiconTest, ParseJson) {
  const auto lex = parse_lexicons(
      R"({"domain":"x","aspects":{"room":["Bed"]},"positive":["comfy"],"negative":["bad"],"intensifiers":["very"]})",
      "m");
  EXPECT_EQ(lex.aspects.aspect_of.at("bed"), "room");
  EXPECT_EQ(lex.sentiment.polarity_of.at("bad"), Polarity::kNegative);
  EXPECT_TRUE(lex.sentiment.intensifiers.contains("very"));
  EXPECT_THROW(parse_lexicons(R"({"aspects":{"a":["x"],"b":["x"]}})", "m"), FormatError);
  EXPECT_THROW(parse_lexicons(R"({"aspects":{},"positive":["x"],"negative":["x"]})", "m"),
               FormatError);
}

TEST(PolarityTest, RoundTrip) {
  for (auto p : {Polarity::kPositive, Polarity::kNeutral, Polarity::kNegative}) {
    EXPECT_EQ(parse_polarity(to_string(p)), p);
  }
  EXPECT_FALSE(parse_polarity("mixed").has_value());
}

}  // namespace
}  // namespace osum
