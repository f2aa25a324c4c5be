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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "osum/common.hpp"
#include "osum/corpus.hpp"
#include "osum/extraction.hpp"
#include "osum/model.hpp"
#include "osum/vocabulary.hpp"

namespace osum {

// SGD with momentum; the learning rate is multiplied by `decay` after every
// epoch. Gradients are clipped to a global L2 norm of `clip_norm` (0 turns
// clipping off).
struct TrainConfig {
  double learning_rate = 0.1;
  double momentum = 0.1;
  double decay = 0.1;
  std::size_t epochs = 5;
  std::size_t batch_size = 8;
  std::uint64_t seed = 0;
  double clip_norm = 5.0;

  void validate() const;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

struct TrainingData {
  std::vector<TrainingPair> pairs;
  std::vector<std::string> review_ids;  // parallel to pairs
  std::size_t skipped_empty = 0;        // reviews without opinions
};

// Vocabulary over review tokens plus the tokens of every review's
// textualized opinion set.
Vocabulary build_generator_vocab(const Corpus& corpus, const Extractions& extractions,
                                 std::size_t min_count);

// One pair per review with a non-empty opinion set: source = ids of the
// tokenized textualization, target = BOS + review ids + EOS. Reviews with
// no opinions (including reviews with no tokens) are skipped and counted.
TrainingData make_training_pairs(const Corpus& corpus, const Extractions& extractions,
                                 const Vocabulary& vocab);

struct LossResult {
  double loss = 0.0;       // mean token cross-entropy over non-PAD labels
  std::size_t tokens = 0;  // number of non-PAD labels
};

// Zeroes the model gradients, then fills them with d(mean loss)/d(param).
// A batch without labels yields loss 0 and zero gradients.
LossResult loss_and_gradients(GeneratorModel& model, std::span<const TrainingPair> batch,
                              Rng* dropout_rng = nullptr);

struct EpochStats {
  std::size_t epoch = 0;  // 1-based
  double learning_rate = 0.0;
  double mean_loss = 0.0;  // token-weighted over the epoch
  std::size_t tokens = 0;
  std::size_t steps = 0;
};

struct TrainReport {
  std::vector<EpochStats> epochs;
};

using EpochCallback = std::function<void(const EpochStats&)>;

// Trains `model` in place. Throws TrainingError on a non-finite loss and
// InvalidArgument on an empty pair list or invalid config.
TrainReport train_model(GeneratorModel& model, const std::vector<TrainingPair>& pairs,
                        const TrainConfig& config, const EpochCallback& on_epoch = {});

struct TrainedGenerator {
  GeneratorModel model;
  TrainReport report;
};

// Initializes a model from `config.seed` and trains it.
TrainedGenerator train(const std::vector<TrainingPair>& pairs, const Vocabulary& vocab,
                       const ModelDims& dims, const TrainConfig& config,
                       const EpochCallback& on_epoch = {});

}  // namespace osum
