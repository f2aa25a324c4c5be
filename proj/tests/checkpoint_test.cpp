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

#include "osum/checkpoint.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "osum/decoder.hpp"
#include "test_util.hpp"

namespace osum {
namespace {

using testing::small_vocab;
using testing::temp_path;
using testing::tiny_dims;

CheckpointError::Kind error_kind(std::string_view bytes) {
  try {
    deserialize_model(bytes);
  } catch (const CheckpointError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return CheckpointError::Kind::kFormat;
}

TEST(CheckpointTest, RoundTripPreservesOutputsAndBytes) {
  const GeneratorModel model(tiny_dims(), small_vocab(9), 17);
  const auto path = temp_path("model.bin");
  save_model(model, path);
  const GeneratorModel loaded = load_model(path);
  EXPECT_EQ(loaded.dims(), model.dims());
  EXPECT_EQ(loaded.vocab(), model.vocab());
  ASSERT_EQ(loaded.parameters().size(), model.parameters().size());
  for (std::size_t i = 0; i < model.parameters().size(); ++i) {
    const auto a = loaded.parameters()[i].value.values();
    const auto b = model.parameters()[i].value.values();
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  }
  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    std::vector<TokenId> source;
    for (std::size_t j = 0; j < 1 + rng.uniform_index(5); ++j) {
      source.push_back(static_cast<TokenId>(kSpecialCount + rng.uniform_index(9)));
    }
    const auto a = beam_search(model, source, DecodeConfig{});
    const auto b = beam_search(loaded, source, DecodeConfig{});
    EXPECT_EQ(a.tokens, b.tokens);
    EXPECT_EQ(a.score, b.score);
  }
  EXPECT_EQ(serialize_model(loaded), serialize_model(model));
}

TEST(CheckpointTest, UntiedModelRoundTrips) {
  auto dims = tiny_dims();
  dims.tie_embeddings = false;
  const GeneratorModel model(dims, small_vocab(3), 1);
  const auto bytes = serialize_model(model);
  EXPECT_EQ(serialize_model(deserialize_model(bytes)), bytes);
}

TEST(CheckpointTest, TruncatedFileFailsChecksum) {
  const auto bytes = serialize_model(GeneratorModel(tiny_dims(), small_vocab(3), 1));
  EXPECT_EQ(error_kind(std::string_view(bytes).substr(0, bytes.size() - 10)),
            CheckpointError::Kind::kChecksum);
  auto flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x01;
  EXPECT_EQ(error_kind(flipped), CheckpointError::Kind::kChecksum);
}

TEST(CheckpointTest, WrongVersionAndMagic) {
  auto bytes = serialize_model(GeneratorModel(tiny_dims(), small_vocab(3), 1));
  auto versioned = bytes;
  versioned[8] = 9;
  EXPECT_EQ(error_kind(versioned), CheckpointError::Kind::kVersion);
  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_EQ(error_kind(magic), CheckpointError::Kind::kFormat);
  EXPECT_EQ(error_kind(""), CheckpointError::Kind::kFormat);
}

TEST(CheckpointTest, MissingFileIsIoError) {
  EXPECT_THROW(load_model(temp_path("absent.bin")), IoError);
}

}  // namespace
}  // namespace osum
