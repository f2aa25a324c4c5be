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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "osum/autodiff.hpp"
#include "osum/common.hpp"
#include "osum/tensor.hpp"
#include "osum/vocabulary.hpp"

namespace osum {

struct ModelDims {
  std::size_t layers = 2;  // encoder layers; the decoder has as many
  std::size_t heads = 4;
  std::size_t d_model = 128;
  std::size_t d_ff = 256;
  double dropout = 0.1;
  bool tie_embeddings = true;

  void validate() const;
  bool operator==(const ModelDims&) const = default;
};

// One reconstruction example. `target` starts with BOS and ends with EOS;
// either sequence may carry trailing PAD, which is masked.
struct TrainingPair {
  std::vector<TokenId> source;
  std::vector<TokenId> target;
};

// Encoder-decoder transformer with post-layer-norm residual blocks,
// sinusoidal positions and (optionally) one embedding table shared by the
// encoder input, decoder input and output projection.
class GeneratorModel {
 public:
  GeneratorModel(ModelDims dims, Vocabulary vocab, std::uint64_t seed);
  // For deserialization: parameters are created zero-filled.
  GeneratorModel(ModelDims dims, Vocabulary vocab);

  const ModelDims& dims() const { return dims_; }
  const Vocabulary& vocab() const { return vocab_; }

  // Parameters in declaration order (the checkpoint order).
  std::vector<Parameter>& parameters() { return params_; }
  const std::vector<Parameter>& parameters() const { return params_; }
  std::size_t parameter_count() const;

  void zero_grad();
  bool all_finite() const;
  // Rounds every parameter to the nearest float; saved checkpoints then
  // reload bit-exactly.
  void round_to_float();

  // Records the forward pass of one pair on `tape` and returns the summed
  // token cross-entropy (1 x 1). `dropout_rng` enables dropout when non-null.
  Var forward_loss(Tape& tape, const TrainingPair& pair, Rng* dropout_rng);

  // Decoder logits for every target position (no dropout), built on a tape.
  Matrix teacher_forced_logits(const std::vector<TokenId>& source,
                               const std::vector<TokenId>& decoder_input) const;

  // Encoder output (no dropout).
  Matrix encode(const std::vector<TokenId>& source) const;

  struct AttentionWeights {
    std::size_t wq, bq, wk, bk, wv, bv, wo, bo;
  };
  struct NormWeights {
    std::size_t gamma, beta;
  };
  struct FeedForwardWeights {
    std::size_t w1, b1, w2, b2;
  };
  struct EncoderLayer {
    AttentionWeights self_attn;
    NormWeights norm1;
    FeedForwardWeights ff;
    NormWeights norm2;
  };
  struct DecoderLayer {
    AttentionWeights self_attn;
    NormWeights norm1;
    AttentionWeights cross_attn;
    NormWeights norm2;
    FeedForwardWeights ff;
    NormWeights norm3;
  };

  const Matrix& weight(std::size_t index) const { return params_[index].value; }
  std::size_t embedding_index() const { return embedding_; }
  std::size_t output_index() const { return output_; }
  const std::vector<EncoderLayer>& encoder_layers() const { return encoder_; }
  const std::vector<DecoderLayer>& decoder_layers() const { return decoder_; }

 private:
  void build(Rng* rng);
  std::size_t add(const std::string& name, std::size_t rows, std::size_t cols, Rng* rng,
                  int init);

  ModelDims dims_;
  Vocabulary vocab_;
  std::vector<Parameter> params_;
  std::size_t embedding_ = 0;
  std::size_t output_ = 0;
  std::vector<EncoderLayer> encoder_;
  std::vector<DecoderLayer> decoder_;
};

inline constexpr double kLayerNormEps = 1e-5;

// Incremental decoding over a fixed source. Caches the encoder output and
// cross-attention keys/values; each hypothesis keeps its own DecoderCache.
class InferenceSession {
 public:
  struct DecoderCache {
    std::vector<Matrix> keys;    // per decoder layer, one row per step
    std::vector<Matrix> values;
    std::size_t length = 0;
  };

  InferenceSession(const GeneratorModel& model, const std::vector<TokenId>& source);

  DecoderCache start() const;

  // Feeds `token` at position cache.length and returns next-token
  // log-probabilities over the vocabulary.
  std::vector<double> step(DecoderCache& cache, TokenId token) const;

 private:
  const GeneratorModel& model_;
  std::vector<Matrix> cross_keys_;
  std::vector<Matrix> cross_values_;
  std::vector<char> source_valid_;
};

}  // namespace osum
