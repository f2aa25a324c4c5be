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
#include <deque>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "osum/tensor.hpp"

namespace osum {

// A trainable tensor with its gradient accumulator and momentum buffer.
struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;
  Matrix velocity;
};

// Which keys a query may attend to. `key_valid` has one entry per key; when
// `causal` is set, query i additionally sees only keys 0..i.
struct AttentionMask {
  std::vector<char> key_valid;
  bool causal = false;
};

// Handle to a node on a Tape.
using Var = std::size_t;

// Records a computation graph of matrix operations and propagates
// gradients back through it. Parameter gradients accumulate directly into
// Parameter::grad. A tape is single-use: build, call backward once, discard.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Leaf bound to a parameter; repeated calls return the same node.
  Var parameter(Parameter& p);
  Var constant(Matrix value);
  // Leaf that reads `value` in place and receives no gradient. `value` must
  // outlive the tape.
  Var reference(const Matrix& value);

  const Matrix& value(Var v) const { return *nodes_[v].value; }
  std::size_t node_count() const { return nodes_.size(); }

  // x * w + b, with b a 1 x cols(w) row.
  Var linear(Var x, Var w, Var b);
  // a * b^T
  Var matmul_nt(Var a, Var b);
  Var add(Var a, Var b);
  Var scale(Var x, double factor);
  Var relu(Var x);
  // Elementwise product with a constant matrix (dropout keep mask).
  Var mask_multiply(Var x, Matrix mask);
  Var layer_norm(Var x, Var gamma, Var beta, double eps);
  // Scaled dot-product attention over `heads` column groups of q, k and v.
  Var attention(Var q, Var k, Var v, std::size_t heads, AttentionMask mask);
  // Rows of `table` selected by `ids`, multiplied by `factor`.
  Var embed(Var table, std::vector<std::int32_t> ids, double factor);
  // Sum over rows of -log softmax(logits)[target]; rows whose target equals
  // `ignore` contribute nothing. Result is 1 x 1.
  Var cross_entropy_sum(Var logits, std::vector<std::int32_t> targets,
                        std::int32_t ignore);
  // Sum of 1 x 1 nodes.
  Var sum_scalars(const std::vector<Var>& scalars);

  // Seeds d(root)/d(root) = 1 and runs every recorded backward step.
  void backward(Var root);

 private:
  struct Node {
    Matrix owned;
    const Matrix* value = nullptr;
    Matrix own_grad;
    Matrix* grad = nullptr;
    bool needs_grad = false;
    std::function<void()> backward;
  };

  Var push(Matrix value, bool needs_grad);
  Matrix& grad(Var v);
  bool needs(Var v) const { return nodes_[v].needs_grad; }

  std::deque<Node> nodes_;
  std::unordered_map<const Parameter*, Var> parameter_nodes_;
};

}  // namespace osum
