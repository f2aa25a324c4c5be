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

#include "osum/model.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "osum/common.hpp"
#include "osum/trainer.hpp"
#include "test_util.hpp"

namespace osum {
namespace {

using testing::small_vocab;
using testing::tiny_dims;

std::vector<TokenId> random_ids(Rng& rng, std::size_t n, std::size_t vocab) {
  std::vector<TokenId> ids;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(static_cast<TokenId>(kSpecialCount + rng.uniform_index(vocab - kSpecialCount)));
  }
  return ids;
}

TEST(ModelDimsTest, Validation) {
  ModelDims dims = tiny_dims();
  EXPECT_NO_THROW(dims.validate());
  dims.heads = 3;
  EXPECT_THROW(dims.validate(), InvalidArgument);
  dims = tiny_dims();
  dims.layers = 0;
  EXPECT_THROW(dims.validate(), InvalidArgument);
  dims = tiny_dims();
  dims.dropout = 1.0;
  EXPECT_THROW(dims.validate(), InvalidArgument);
}

TEST(ModelTest, ShapesMatchDims) {
  const auto dims = tiny_dims();
  const GeneratorModel model(dims, small_vocab(7), 1);
  const std::size_t v = 12, d = dims.d_model, f = dims.d_ff;
  EXPECT_EQ(model.weight(model.embedding_index()).rows(), v);
  EXPECT_EQ(model.weight(model.embedding_index()).cols(), d);
  const auto& enc = model.encoder_layers().at(0);
  EXPECT_EQ(model.weight(enc.self_attn.wq).rows(), d);
  EXPECT_EQ(model.weight(enc.self_attn.wq).cols(), d);
  EXPECT_EQ(model.weight(enc.ff.w1).cols(), f);
  EXPECT_EQ(model.weight(enc.ff.w2).rows(), f);
  // embedding + per encoder layer (8 attn + 2 norm + 4 ff + 2 norm) + per
  // decoder layer (8 + 2 + 8 + 2 + 4 + 2).
  const std::size_t expected = v * d + (4 * (d * d + d) + 2 * 2 * d + d * f + f + f * d + d) +
                               (8 * (d * d + d) + 3 * 2 * d + d * f + f + f * d + d);
  EXPECT_EQ(model.parameter_count(), expected);
  EXPECT_TRUE(model.all_finite());
}

TEST(ModelTest, UntiedAddsOutputProjection) {
  auto dims = tiny_dims();
  const GeneratorModel tied(dims, small_vocab(7), 1);
  dims.tie_embeddings = false;
  const GeneratorModel untied(dims, small_vocab(7), 1);
  EXPECT_EQ(untied.parameter_count(), tied.parameter_count() + 12 * dims.d_model);
}

TEST(ModelTest, InitIsSeededAndFloatExact) {
  const GeneratorModel a(tiny_dims(), small_vocab(7), 3);
  const GeneratorModel b(tiny_dims(), small_vocab(7), 3);
  const GeneratorModel c(tiny_dims(), small_vocab(7), 4);
  bool differs = false;
  for (std::size_t i = 0; i < a.parameters().size(); ++i) {
    EXPECT_EQ(a.parameters()[i].value, b.parameters()[i].value);
    differs |= !(a.parameters()[i].value == c.parameters()[i].value);
    for (double x : a.parameters()[i].value.values()) {
      ASSERT_EQ(x, static_cast<double>(static_cast<float>(x)));
    }
  }
  EXPECT_TRUE(differs);
}

TEST(ModelTest, IncrementalDecodingMatchesTeacherForcing) {
  Rng rng(21);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto dims = tiny_dims();
    dims.layers = 2;
    const GeneratorModel model(dims, small_vocab(9), seed);
    auto source = random_ids(rng, 6, 14);
    source.push_back(kPadId);  // trailing padding is masked
    std::vector<TokenId> input = {kBosId};
    for (TokenId t : random_ids(rng, 5, 14)) input.push_back(t);
    const Matrix logits = model.teacher_forced_logits(source, input);
    InferenceSession session(model, source);
    auto cache = session.start();
    for (std::size_t pos = 0; pos < input.size(); ++pos) {
      const auto logp = session.step(cache, input[pos]);
      std::vector<double> expected(logits.row(pos).begin(), logits.row(pos).end());
      log_softmax_inplace(expected);
      double total = 0.0;
      for (std::size_t i = 0; i < logp.size(); ++i) {
        ASSERT_NEAR(logp[i], expected[i], 1e-9);
        ASSERT_LE(logp[i], 0.0);
        total += std::exp(logp[i]);
      }
      EXPECT_NEAR(total, 1.0, 1e-6);
    }
  }
}

TEST(ModelTest, SourcePaddingDoesNotChangeOutput) {
  const GeneratorModel model(tiny_dims(), small_vocab(6), 5);
  const std::vector<TokenId> source = {5, 6, 7};
  const std::vector<TokenId> padded = {5, 6, 7, kPadId, kPadId};
  const std::vector<TokenId> input = {kBosId, 8, 9};
  const auto a = model.teacher_forced_logits(source, input);
  const auto b = model.teacher_forced_logits(padded, input);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.data()[i], b.data()[i], 1e-12);
}

TEST(ModelTest, CausalMaskHidesFuture) {
  const GeneratorModel model(tiny_dims(), small_vocab(6), 5);
  const std::vector<TokenId> source = {5, 6};
  const auto a = model.teacher_forced_logits(source, {kBosId, 7, 8});
  const auto b = model.teacher_forced_logits(source, {kBosId, 7, 9});
  for (std::size_t c = 0; c < a.cols(); ++c) {
    EXPECT_EQ(a(0, c), b(0, c));
    EXPECT_EQ(a(1, c), b(1, c));
  }
}

TEST(ModelTest, ZeroModelGivesUniformLoss) {
  const Vocabulary vocab = small_vocab(11);
  GeneratorModel model(tiny_dims(), vocab);
  const std::vector<TrainingPair> batch = {{{5, 6, kSepId, 7}, {kBosId, 8, 9, kEosId}}};
  const auto result = loss_and_gradients(model, batch);
  EXPECT_NEAR(result.loss, std::log(static_cast<double>(vocab.size())), 1e-12);
  EXPECT_EQ(result.tokens, 3u);
}

TEST(ModelTest, FullModelGradientCheck) {
  auto dims = tiny_dims();
  dims.tie_embeddings = false;
  GeneratorModel model(dims, small_vocab(6), 8);
  Rng rng(8);
  // Random values give a non-degenerate point for every parameter.
  for (auto& p : model.parameters()) {
    for (auto& x : p.value.values()) x += 0.05 * rng.normal();
  }
  const std::vector<TrainingPair> batch = {{{5, 6, kSepId, 7}, {kBosId, 8, 9, 10, kEosId}},
                                           {{9, 10}, {kBosId, 5, kEosId, kPadId, kPadId}}};
  loss_and_gradients(model, batch);
  std::vector<std::vector<double>> analytic;
  for (const auto& p : model.parameters()) {
    analytic.emplace_back(p.grad.values().begin(), p.grad.values().end());
  }
  const double h = 1e-5;
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto pi = rng.uniform_index(model.parameters().size());
    const auto ei = rng.uniform_index(model.parameters()[pi].value.size());
    double& x = model.parameters()[pi].value.data()[ei];
    const double saved = x;
    x = saved + h;
    const double up = loss_and_gradients(model, batch).loss;
    x = saved - h;
    const double down = loss_and_gradients(model, batch).loss;
    x = saved;
    const double numeric = (up - down) / (2 * h);
    const double a = analytic[pi][ei];
    if (std::abs(numeric) + std::abs(a) < 1e-9) continue;
    EXPECT_LT(std::abs(numeric - a) / (std::abs(numeric) + std::abs(a)), 1e-5)
        << model.parameters()[pi].name << "[" << ei << "]";
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(ModelTest, DropoutOnlyWithRng) {
  auto dims = tiny_dims();
  dims.dropout = 0.5;
  GeneratorModel model(dims, small_vocab(6), 2);
  const std::vector<TrainingPair> batch = {{{5, 6, 7}, {kBosId, 8, 9, kEosId}}};
  const double clean1 = loss_and_gradients(model, batch).loss;
  const double clean2 = loss_and_gradients(model, batch).loss;
  EXPECT_EQ(clean1, clean2);
  Rng rng(1);
  const double noisy = loss_and_gradients(model, batch, &rng).loss;
  EXPECT_NE(noisy, clean1);
}

}  // namespace
}  // namespace osum
