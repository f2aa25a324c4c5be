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

#include <cmath>
#include <functional>
#include <limits>

namespace osum {
namespace {

enum Init { kZeros, kOnes, kXavier, kEmbedding };

using Bind = std::function<Var(std::size_t)>;

// Attention of one query row over cached key/value rows, per head.
void attend_row(std::span<const double> query, const Matrix& keys, const Matrix& values,
                const std::vector<char>* key_valid, std::size_t heads,
                std::span<double> out) {
  const std::size_t d = query.size();
  const std::size_t dk = d / heads;
  const double s = 1.0 / std::sqrt(static_cast<double>(dk));
  const std::size_t n = keys.rows();
  std::vector<double> scores(n);
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t h = 0; h < heads; ++h) {
    const std::size_t off = h * dk;
    double max = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (key_valid && !(*key_valid)[j]) continue;
      double acc = 0.0;
      for (std::size_t c = 0; c < dk; ++c) acc += query[off + c] * keys(j, off + c);
      scores[j] = acc * s;
      max = std::max(max, scores[j]);
    }
    if (!std::isfinite(max)) continue;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      scores[j] = (key_valid && !(*key_valid)[j]) ? 0.0 : std::exp(scores[j] - max);
      sum += scores[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double p = scores[j] / sum;
      if (p == 0.0) continue;
      for (std::size_t c = 0; c < dk; ++c) out[off + c] += p * values(j, off + c);
    }
  }
}

}  // namespace

void ModelDims::validate() const {
  if (layers == 0) throw InvalidArgument("model needs at least one layer");
  if (heads == 0 || d_model == 0 || d_model % heads != 0) {
    throw InvalidArgument("d_model must be a positive multiple of heads");
  }
  if (d_ff == 0) throw InvalidArgument("d_ff must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw InvalidArgument("dropout must be in [0, 1)");
}

GeneratorModel::GeneratorModel(ModelDims dims, Vocabulary vocab, std::uint64_t seed)
    : dims_(dims), vocab_(std::move(vocab)) {
  dims_.validate();
  Rng rng(seed);
  build(&rng);
  round_to_float();
}

GeneratorModel::GeneratorModel(ModelDims dims, Vocabulary vocab)
    : dims_(dims), vocab_(std::move(vocab)) {
  dims_.validate();
  build(nullptr);
}

std::size_t GeneratorModel::add(const std::string& name, std::size_t rows,
                                std::size_t cols, Rng* rng, int init) {
  Parameter p;
  p.name = name;
  p.value.resize(rows, cols);
  if (rng != nullptr) {
    switch (init) {
      case kOnes:
        p.value.fill(1.0);
        break;
      case kXavier: {
        const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
        for (double& v : p.value.values()) v = (2.0 * rng->uniform() - 1.0) * bound;
        break;
      }
      case kEmbedding: {
        const double sd = 1.0 / std::sqrt(static_cast<double>(cols));
        for (double& v : p.value.values()) v = rng->normal() * sd;
        break;
      }
      default:
        break;
    }
  }
  p.grad.resize(rows, cols);
  p.velocity.resize(rows, cols);
  params_.push_back(std::move(p));
  return params_.size() - 1;
}

void GeneratorModel::build(Rng* rng) {
  const std::size_t d = dims_.d_model, ff = dims_.d_ff, v = vocab_.size();
  embedding_ = add("embedding", v, d, rng, kEmbedding);
  output_ = dims_.tie_embeddings ? embedding_ : add("output", v, d, rng, kXavier);

  auto attention = [&](const std::string& prefix) {
    AttentionWeights w{};
    w.wq = add(prefix + ".wq", d, d, rng, kXavier);
    w.bq = add(prefix + ".bq", 1, d, rng, kZeros);
    w.wk = add(prefix + ".wk", d, d, rng, kXavier);
    w.bk = add(prefix + ".bk", 1, d, rng, kZeros);
    w.wv = add(prefix + ".wv", d, d, rng, kXavier);
    w.bv = add(prefix + ".bv", 1, d, rng, kZeros);
    w.wo = add(prefix + ".wo", d, d, rng, kXavier);
    w.bo = add(prefix + ".bo", 1, d, rng, kZeros);
    return w;
  };
  auto norm = [&](const std::string& prefix) {
    return NormWeights{add(prefix + ".gamma", 1, d, rng, kOnes),
                       add(prefix + ".beta", 1, d, rng, kZeros)};
  };
  auto feed_forward = [&](const std::string& prefix) {
    FeedForwardWeights w{};
    w.w1 = add(prefix + ".w1", d, ff, rng, kXavier);
    w.b1 = add(prefix + ".b1", 1, ff, rng, kZeros);
    w.w2 = add(prefix + ".w2", ff, d, rng, kXavier);
    w.b2 = add(prefix + ".b2", 1, d, rng, kZeros);
    return w;
  };

  for (std::size_t l = 0; l < dims_.layers; ++l) {
    const std::string p = "encoder." + std::to_string(l);
    EncoderLayer layer{};
    layer.self_attn = attention(p + ".self_attn");
    layer.norm1 = norm(p + ".norm1");
    layer.ff = feed_forward(p + ".ff");
    layer.norm2 = norm(p + ".norm2");
    encoder_.push_back(layer);
  }
  for (std::size_t l = 0; l < dims_.layers; ++l) {
    const std::string p = "decoder." + std::to_string(l);
    DecoderLayer layer{};
    layer.self_attn = attention(p + ".self_attn");
    layer.norm1 = norm(p + ".norm1");
    layer.cross_attn = attention(p + ".cross_attn");
    layer.norm2 = norm(p + ".norm2");
    layer.ff = feed_forward(p + ".ff");
    layer.norm3 = norm(p + ".norm3");
    decoder_.push_back(layer);
  }
}

std::size_t GeneratorModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

void GeneratorModel::zero_grad() {
  for (auto& p : params_) p.grad.fill(0.0);
}

bool GeneratorModel::all_finite() const {
  for (const auto& p : params_) {
    for (double v : p.value.values()) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

void GeneratorModel::round_to_float() {
  for (auto& p : params_) {
    for (double& v : p.value.values()) v = static_cast<double>(static_cast<float>(v));
  }
}

namespace {

struct Graph {
  Tape& tape;
  const ModelDims& dims;
  Bind bind;
  Rng* dropout_rng;

  Var dropout(Var x) const {
    if (dropout_rng == nullptr || dims.dropout <= 0.0) return x;
    const Matrix& v = tape.value(x);
    Matrix mask(v.rows(), v.cols());
    const double keep = 1.0 - dims.dropout;
    for (double& m : mask.values()) m = dropout_rng->uniform() < keep ? 1.0 / keep : 0.0;
    return tape.mask_multiply(x, std::move(mask));
  }

  Var attention(const GeneratorModel::AttentionWeights& w, Var query_in, Var key_in,
                AttentionMask mask) const {
    const Var q = tape.linear(query_in, bind(w.wq), bind(w.bq));
    const Var k = tape.linear(key_in, bind(w.wk), bind(w.bk));
    const Var v = tape.linear(key_in, bind(w.wv), bind(w.bv));
    const Var o = tape.attention(q, k, v, dims.heads, std::move(mask));
    return tape.linear(o, bind(w.wo), bind(w.bo));
  }

  Var feed_forward(const GeneratorModel::FeedForwardWeights& w, Var x) const {
    const Var h = tape.relu(tape.linear(x, bind(w.w1), bind(w.b1)));
    return tape.linear(h, bind(w.w2), bind(w.b2));
  }

  Var norm(const GeneratorModel::NormWeights& w, Var x) const {
    return tape.layer_norm(x, bind(w.gamma), bind(w.beta), kLayerNormEps);
  }

  Var embed(std::size_t table, const std::vector<TokenId>& ids) const {
    const double factor = std::sqrt(static_cast<double>(dims.d_model));
    const Var e = tape.embed(bind(table), ids, factor);
    const Var pe = tape.constant(positional_encoding(ids.size(), dims.d_model));
    return dropout(tape.add(e, pe));
  }
};

AttentionMask padding_mask(const std::vector<TokenId>& ids, bool causal) {
  AttentionMask mask;
  mask.causal = causal;
  mask.key_valid.reserve(ids.size());
  for (const TokenId id : ids) mask.key_valid.push_back(id != kPadId ? 1 : 0);
  return mask;
}

Var encoder_graph(const GeneratorModel& model, const Graph& g,
                  const std::vector<TokenId>& source) {
  const AttentionMask mask = padding_mask(source, false);
  Var x = g.embed(model.embedding_index(), source);
  for (const auto& layer : model.encoder_layers()) {
    x = g.norm(layer.norm1, g.tape.add(x, g.dropout(g.attention(layer.self_attn, x, x, mask))));
    x = g.norm(layer.norm2, g.tape.add(x, g.dropout(g.feed_forward(layer.ff, x))));
  }
  return x;
}

Var decoder_graph(const GeneratorModel& model, const Graph& g, Var memory,
                  const std::vector<TokenId>& source, const std::vector<TokenId>& input) {
  const AttentionMask self_mask = padding_mask(input, true);
  const AttentionMask cross_mask = padding_mask(source, false);
  Var y = g.embed(model.embedding_index(), input);
  for (const auto& layer : model.decoder_layers()) {
    y = g.norm(layer.norm1,
               g.tape.add(y, g.dropout(g.attention(layer.self_attn, y, y, self_mask))));
    y = g.norm(layer.norm2, g.tape.add(y, g.dropout(g.attention(layer.cross_attn, y, memory,
                                                                 cross_mask))));
    y = g.norm(layer.norm3, g.tape.add(y, g.dropout(g.feed_forward(layer.ff, y))));
  }
  return g.tape.matmul_nt(y, g.bind(model.output_index()));
}

void check_ids(const Vocabulary& vocab, const std::vector<TokenId>& ids) {
  for (const TokenId id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab.size()) {
      throw InvalidArgument("token id " + std::to_string(id) + " outside the vocabulary");
    }
  }
}

}  // namespace

Var GeneratorModel::forward_loss(Tape& tape, const TrainingPair& pair, Rng* dropout_rng) {
  if (pair.source.empty() || pair.target.size() < 2) {
    throw InvalidArgument("training pair needs a source and a target of length >= 2");
  }
  check_ids(vocab_, pair.source);
  check_ids(vocab_, pair.target);
  const Graph g{tape, dims_, [&](std::size_t i) { return tape.parameter(params_[i]); },
                dropout_rng};
  const std::vector<TokenId> input(pair.target.begin(), pair.target.end() - 1);
  const std::vector<TokenId> labels(pair.target.begin() + 1, pair.target.end());
  const Var memory = encoder_graph(*this, g, pair.source);
  const Var logits = decoder_graph(*this, g, memory, pair.source, input);
  return tape.cross_entropy_sum(logits, labels, kPadId);
}

Matrix GeneratorModel::teacher_forced_logits(const std::vector<TokenId>& source,
                                             const std::vector<TokenId>& decoder_input) const {
  check_ids(vocab_, source);
  check_ids(vocab_, decoder_input);
  Tape tape;
  const Graph g{tape, dims_, [&](std::size_t i) { return tape.reference(params_[i].value); },
                nullptr};
  const Var memory = encoder_graph(*this, g, source);
  return tape.value(decoder_graph(*this, g, memory, source, decoder_input));
}

Matrix GeneratorModel::encode(const std::vector<TokenId>& source) const {
  if (source.empty()) throw InvalidArgument("cannot encode an empty source");
  check_ids(vocab_, source);
  Tape tape;
  const Graph g{tape, dims_, [&](std::size_t i) { return tape.reference(params_[i].value); },
                nullptr};
  return tape.value(encoder_graph(*this, g, source));
}

InferenceSession::InferenceSession(const GeneratorModel& model,
                                   const std::vector<TokenId>& source)
    : model_(model) {
  const Matrix memory = model.encode(source);
  for (const TokenId id : source) source_valid_.push_back(id != kPadId ? 1 : 0);
  for (const auto& layer : model.decoder_layers()) {
    const auto& w = layer.cross_attn;
    cross_keys_.push_back(linear(memory, model.weight(w.wk), model.weight(w.bk)));
    cross_values_.push_back(linear(memory, model.weight(w.wv), model.weight(w.bv)));
  }
}

InferenceSession::DecoderCache InferenceSession::start() const {
  DecoderCache cache;
  cache.keys.resize(model_.decoder_layers().size());
  cache.values.resize(model_.decoder_layers().size());
  return cache;
}

std::vector<double> InferenceSession::step(DecoderCache& cache, TokenId token) const {
  const auto& dims = model_.dims();
  const std::size_t d = dims.d_model;
  if (token < 0 || static_cast<std::size_t>(token) >= model_.vocab().size()) {
    throw InvalidArgument("token id out of range");
  }
  const Matrix& table = model_.weight(model_.embedding_index());
  const Matrix pe = positional_encoding(1, d, cache.length);
  Matrix x(1, d);
  const double factor = std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) {
    x(0, j) = table(static_cast<std::size_t>(token), j) * factor + pe(0, j);
  }

  auto residual_norm = [&](const Matrix& base, const Matrix& delta,
                           const GeneratorModel::NormWeights& w) {
    Matrix sum = base;
    for (std::size_t j = 0; j < d; ++j) sum.data()[j] += delta.data()[j];
    return layer_norm(sum, model_.weight(w.gamma), model_.weight(w.beta), kLayerNormEps);
  };

  Matrix attended(1, d);
  const auto& layers = model_.decoder_layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    const auto& sa = layer.self_attn;
    const Matrix q = linear(x, model_.weight(sa.wq), model_.weight(sa.bq));
    cache.keys[l].append_row(linear(x, model_.weight(sa.wk), model_.weight(sa.bk)).row(0));
    cache.values[l].append_row(linear(x, model_.weight(sa.wv), model_.weight(sa.bv)).row(0));
    attend_row(q.row(0), cache.keys[l], cache.values[l], nullptr, dims.heads, attended.row(0));
    x = residual_norm(x, linear(attended, model_.weight(sa.wo), model_.weight(sa.bo)),
                      layer.norm1);

    const auto& ca = layer.cross_attn;
    const Matrix cq = linear(x, model_.weight(ca.wq), model_.weight(ca.bq));
    attend_row(cq.row(0), cross_keys_[l], cross_values_[l], &source_valid_, dims.heads,
               attended.row(0));
    x = residual_norm(x, linear(attended, model_.weight(ca.wo), model_.weight(ca.bo)),
                      layer.norm2);

    const auto& ff = layer.ff;
    Matrix h = linear(x, model_.weight(ff.w1), model_.weight(ff.b1));
    for (double& v : h.values()) v = v > 0.0 ? v : 0.0;
    x = residual_norm(x, linear(h, model_.weight(ff.w2), model_.weight(ff.b2)), layer.norm3);
  }
  ++cache.length;

  const Matrix& out = model_.weight(model_.output_index());
  Matrix logits(1, out.rows());
  gemm_nt(x, out, logits);
  std::vector<double> log_probs(logits.values().begin(), logits.values().end());
  log_softmax_inplace(log_probs);
  return log_probs;
}

}  // namespace osum
