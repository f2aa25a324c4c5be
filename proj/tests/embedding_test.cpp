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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "osum/common.hpp"
#include "test_util.hpp"

namespace osum {
namespace {

using testing::make_store;

TEST(LoadEmbeddingsTest, ParsesTwoTokens) {
  const auto path = testing::temp_path("emb.txt");
  write_file(path, "cat 1.0 0.0\ndog 0.0 1.0");
  const auto store = load_embeddings(path, 2);
  EXPECT_EQ(store.size(), 2u);
  EXPECT_EQ(store.dim(), 2u);
  const auto dog = store.lookup("dog");
  ASSERT_TRUE(dog.has_value());
  EXPECT_EQ((*dog)[1], 1.0);
}

TEST(LoadEmbeddingsTest, DimensionMismatchNamesLine) {
  try {
    parse_embeddings("a 1 2\nb 1 2 3\n", "emb", 2);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_embeddings("a 1\n", "emb", 2), FormatError);
  EXPECT_THROW(parse_embeddings("a 1 x\n", "emb", 2), FormatError);
}

TEST(LoadEmbeddingsTest, EmptyFileGivesUsableStore) {
  const auto store = parse_embeddings("", "emb", 3);
  EXPECT_EQ(store.size(), 0u);
  EXPECT_FALSE(store.lookup("anything").has_value());
}

TEST(LoadEmbeddingsTest, DuplicateKeepsFirst) {
  const auto store = parse_embeddings("a 1 0\na 0 1\n", "emb", 2);
  EXPECT_EQ(store.size(), 1u);
  EXPECT_EQ((*store.lookup("a"))[0], 1.0);
}

TEST(LoadEmbeddingsTest, UnreadableFile) {
  EXPECT_THROW(load_embeddings("/nonexistent/emb.txt", 2), IoError);
}

TEST(EmbeddingStoreTest, InsertRejectsWrongLength) {
  EmbeddingStore store(2);
  const std::vector<double> v = {1, 2, 3};
  EXPECT_THROW(store.insert("x", v), InvalidArgument);
}

TEST(PhraseVectorTest, MeanOfTwo) {
  const auto store = make_store({{"clean", {1, 0}}, {"bath", {0, 1}}});
  const auto v = phrase_vector(store, {"clean", "bath"});
  EXPECT_EQ(v.values, (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(v.oov_count, 0u);
  EXPECT_EQ(v.token_count, 2u);
}

TEST(PhraseVectorTest, AllOovIsZero) {
  const auto store = make_store({{"clean", {1, 0}}});
  const auto v = phrase_vector(store, {"qqqq"});
  EXPECT_EQ(v.values, (std::vector<double>{0, 0}));
  EXPECT_EQ(v.oov_count, 1u);
  EXPECT_EQ(v.oov_count, v.token_count);
}

TEST(PhraseVectorTest, OovSkippedInMean) {
  const auto store = make_store({{"clean", {1, 0}}, {"bath", {0, 1}}});
  const auto v = phrase_vector(store, {"clean", "qqqq"});
  EXPECT_EQ(v.values, (std::vector<double>{1, 0}));
  EXPECT_EQ(v.oov_count, 1u);
}

TEST(PhraseVectorTest, EmptyIsAnError) {
  const auto store = make_store({{"a", {1, 0}}});
  EXPECT_THROW(phrase_vector(store, {}), InvalidArgument);
}

TEST(PhraseVectorTest, PermutationInvariant) {
  Rng rng(4);
  EmbeddingStore store(5);
  std::vector<std::string> words;
  for (int i = 0; i < 8; ++i) {
    std::vector<double> v(5);
    for (auto& x : v) x = rng.uniform_index(9);  // small integers keep sums exact
    words.push_back("w" + std::to_string(i));
    store.insert(words.back(), v);
  }
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> tokens;
    for (int i = 0; i < 5; ++i) tokens.push_back(words[rng.uniform_index(words.size())]);
    tokens.push_back("oov");
    auto shuffled = tokens;
    rng.shuffle(shuffled);
    const auto a = phrase_vector(store, tokens);
    const auto b = phrase_vector(store, shuffled);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-12);
    EXPECT_EQ(a.oov_count, b.oov_count);
  }
}

TEST(CosineTest, Examples) {
  EXPECT_EQ(cosine(std::vector<double>{1, 0}, std::vector<double>{0, 1}), 0.0);
  EXPECT_NEAR(cosine(std::vector<double>{1, 1}, std::vector<double>{2, 2}), 1.0, 1e-12);
  EXPECT_EQ(cosine(std::vector<double>{0, 0}, std::vector<double>{1, 0}), 0.0);
}

TEST(CosineTest, LengthMismatch) {
  EXPECT_THROW(cosine(std::vector<double>{1}, std::vector<double>{1, 2}), InvalidArgument);
}

TEST(CosineTest, SymmetricBoundedAndSelfOne) {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> u(6), v(6);
    for (auto& x : u) x = rng.normal() * 10;
    for (auto& x : v) x = rng.normal() * 1e-3;
    const double uv = cosine(u, v);
    EXPECT_EQ(uv, cosine(v, u));
    EXPECT_LE(std::abs(uv), 1.0);
    EXPECT_NEAR(cosine(u, u), 1.0, 1e-9);
  }
}

}  // namespace
}  // namespace osum
