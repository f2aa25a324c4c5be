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

#include "osum/trainer.hpp"

#include <cmath>
#include <sstream>

#include "osum/textualize.hpp"

namespace osum {
namespace {

constexpr std::uint64_t kShuffleStream = 0x5eedULL;
constexpr std::uint64_t kDropoutStream = 0xd20bULL;

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw InvalidArgument("learning rate must be positive");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw InvalidArgument("momentum must be in [0, 1)");
  if (!(decay > 0.0)) throw InvalidArgument("decay must be positive");
  if (epochs < 1) throw InvalidArgument("epochs must be at least 1");
  if (batch_size < 1) throw InvalidArgument("batch size must be at least 1");
  if (clip_norm < 0.0) throw InvalidArgument("clip norm must be non-negative");
}

Vocabulary build_generator_vocab(const Corpus& corpus, const Extractions& extractions,
                                 std::size_t min_count) {
  std::vector<std::vector<std::string>> streams;
  for (const Review* review : corpus.all_reviews()) {
    streams.push_back(review->tokens);
    const auto it = extractions.find(review->review_id);
    if (it == extractions.end()) continue;
    for (const auto& opinion : it->second.opinions) streams.push_back(opinion.phrase_tokens);
  }
  return build_vocab(streams, min_count);
}

TrainingData make_training_pairs(const Corpus& corpus, const Extractions& extractions,
                                 const Vocabulary& vocab) {
  TrainingData data;
  for (const Review* review : corpus.all_reviews()) {
    const auto it = extractions.find(review->review_id);
    if (it == extractions.end() || it->second.opinions.empty() || review->tokens.empty()) {
      ++data.skipped_empty;
      continue;
    }
    TrainingPair pair;
    pair.source = vocab.encode(tokenize(textualize_training(it->second).text));
    pair.target.push_back(kBosId);
    for (const TokenId id : vocab.encode(review->tokens)) pair.target.push_back(id);
    pair.target.push_back(kEosId);
    data.pairs.push_back(std::move(pair));
    data.review_ids.push_back(review->review_id);
  }
  return data;
}

LossResult loss_and_gradients(GeneratorModel& model, std::span<const TrainingPair> batch,
                              Rng* dropout_rng) {
  model.zero_grad();
  LossResult result;
  for (const auto& pair : batch) {
    for (std::size_t i = 1; i < pair.target.size(); ++i) {
      if (pair.target[i] != kPadId) ++result.tokens;
    }
  }
  if (result.tokens == 0) return result;

  Tape tape;
  std::vector<Var> losses;
  losses.reserve(batch.size());
  for (const auto& pair : batch) losses.push_back(model.forward_loss(tape, pair, dropout_rng));
  const Var mean = tape.scale(tape.sum_scalars(losses), 1.0 / static_cast<double>(result.tokens));
  result.loss = tape.value(mean)(0, 0);
  tape.backward(mean);
  return result;
}

TrainReport train_model(GeneratorModel& model, const std::vector<TrainingPair>& pairs,
                        const TrainConfig& config, const EpochCallback& on_epoch) {
  config.validate();
  if (pairs.empty()) throw InvalidArgument("no training pairs");
  Rng order_rng(config.seed ^ kShuffleStream);
  Rng dropout_rng(config.seed ^ kDropoutStream);
  Rng* dropout = model.dims().dropout > 0.0 ? &dropout_rng : nullptr;

  for (auto& p : model.parameters()) p.velocity.fill(0.0);

  TrainReport report;
  double lr = config.learning_rate;
  std::vector<TrainingPair> batch;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto order = shuffled_indices(pairs.size(), order_rng);
    EpochStats stats;
    stats.epoch = epoch;
    stats.learning_rate = lr;
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      batch.clear();
      for (std::size_t i = start; i < std::min(order.size(), start + config.batch_size); ++i) {
        batch.push_back(pairs[order[i]]);
      }
      const LossResult step = loss_and_gradients(model, batch, dropout);
      if (!std::isfinite(step.loss)) {
        std::ostringstream msg;
        msg << "non-finite loss " << step.loss << " at epoch " << epoch << ", step "
            << stats.steps + 1 << " (learning rate " << lr << ")";
        throw TrainingError(msg.str());
      }
      loss_sum += step.loss * static_cast<double>(step.tokens);
      stats.tokens += step.tokens;
      ++stats.steps;

      double norm_sq = 0.0;
      for (const auto& p : model.parameters()) {
        for (double g : p.grad.values()) norm_sq += g * g;
      }
      const double norm = std::sqrt(norm_sq);
      if (!std::isfinite(norm)) {
        throw TrainingError("non-finite gradient norm at epoch " + std::to_string(epoch) +
                            ", step " + std::to_string(stats.steps));
      }
      const double clip =
          (config.clip_norm > 0.0 && norm > config.clip_norm) ? config.clip_norm / norm : 1.0;
      for (auto& p : model.parameters()) {
        double* value = p.value.data();
        double* velocity = p.velocity.data();
        const double* grad = p.grad.data();
        for (std::size_t i = 0; i < p.value.size(); ++i) {
          velocity[i] = config.momentum * velocity[i] + clip * grad[i];
          value[i] -= lr * velocity[i];
        }
      }
    }
    stats.mean_loss = stats.tokens > 0 ? loss_sum / static_cast<double>(stats.tokens) : 0.0;
    report.epochs.push_back(stats);
    if (on_epoch) on_epoch(stats);
    lr *= config.decay;
  }
  if (!model.all_finite()) throw TrainingError("training produced non-finite parameters");
  model.round_to_float();
  return report;
}

TrainedGenerator train(const std::vector<TrainingPair>& pairs, const Vocabulary& vocab,
                       const ModelDims& dims, const TrainConfig& config,
                       const EpochCallback& on_epoch) {
  config.validate();
  TrainedGenerator out{GeneratorModel(dims, vocab, config.seed), {}};
  out.report = train_model(out.model, pairs, config, on_epoch);
  return out;
}

}  // namespace osum
