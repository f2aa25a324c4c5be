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

#include "osum/autodiff.hpp"

#include <cmath>
#include <limits>

#include "osum/common.hpp"

namespace osum {

Var Tape::push(Matrix value, bool needs_grad) {
  Node& node = nodes_.emplace_back();
  node.owned = std::move(value);
  node.value = &node.owned;
  node.needs_grad = needs_grad;
  return nodes_.size() - 1;
}

Matrix& Tape::grad(Var v) {
  Node& node = nodes_[v];
  if (node.grad == nullptr) node.grad = &node.own_grad;
  if (node.grad->rows() != node.value->rows() || node.grad->cols() != node.value->cols()) {
    node.grad->resize(node.value->rows(), node.value->cols());
  }
  return *node.grad;
}

Var Tape::parameter(Parameter& p) {
  if (const auto it = parameter_nodes_.find(&p); it != parameter_nodes_.end()) {
    return it->second;
  }
  Node& node = nodes_.emplace_back();
  node.value = &p.value;
  if (p.grad.rows() != p.value.rows() || p.grad.cols() != p.value.cols()) {
    p.grad.resize(p.value.rows(), p.value.cols());
  }
  node.grad = &p.grad;
  node.needs_grad = true;
  const Var id = nodes_.size() - 1;
  parameter_nodes_.emplace(&p, id);
  return id;
}

Var Tape::constant(Matrix value) { return push(std::move(value), false); }

Var Tape::reference(const Matrix& value) {
  Node& node = nodes_.emplace_back();
  node.value = &value;
  return nodes_.size() - 1;
}

Var Tape::linear(Var x, Var w, Var b) {
  const Var out = push(osum::linear(value(x), value(w), value(b)), needs(x) || needs(w) || needs(b));
  nodes_[out].backward = [this, x, w, b, out] {
    const Matrix& dy = grad(out);
    if (needs(x)) gemm_nt(dy, value(w), grad(x));
    if (needs(w)) gemm_tn(value(x), dy, grad(w));
    if (needs(b)) {
      Matrix& db = grad(b);
      for (std::size_t i = 0; i < dy.rows(); ++i) {
        for (std::size_t j = 0; j < dy.cols(); ++j) db.data()[j] += dy(i, j);
      }
    }
  };
  return out;
}

Var Tape::matmul_nt(Var a, Var b) {
  Matrix result(value(a).rows(), value(b).rows());
  gemm_nt(value(a), value(b), result);
  const Var out = push(std::move(result), needs(a) || needs(b));
  nodes_[out].backward = [this, a, b, out] {
    const Matrix& dy = grad(out);
    if (needs(a)) gemm_nn(dy, value(b), grad(a));
    if (needs(b)) gemm_tn(dy, value(a), grad(b));
  };
  return out;
}

Var Tape::add(Var a, Var b) {
  const Matrix& va = value(a);
  const Matrix& vb = value(b);
  if (va.rows() != vb.rows() || va.cols() != vb.cols()) {
    throw InvalidArgument("Tape::add: shape mismatch");
  }
  Matrix result = va;
  for (std::size_t i = 0; i < result.size(); ++i) result.data()[i] += vb.data()[i];
  const Var out = push(std::move(result), needs(a) || needs(b));
  nodes_[out].backward = [this, a, b, out] {
    const Matrix& dy = grad(out);
    for (const Var p : {a, b}) {
      if (!needs(p)) continue;
      Matrix& g = grad(p);
      for (std::size_t i = 0; i < dy.size(); ++i) g.data()[i] += dy.data()[i];
    }
  };
  return out;
}

Var Tape::scale(Var x, double factor) {
  Matrix result = value(x);
  for (double& v : result.values()) v *= factor;
  const Var out = push(std::move(result), needs(x));
  nodes_[out].backward = [this, x, out, factor] {
    const Matrix& dy = grad(out);
    Matrix& g = grad(x);
    for (std::size_t i = 0; i < dy.size(); ++i) g.data()[i] += factor * dy.data()[i];
  };
  return out;
}

Var Tape::relu(Var x) {
  Matrix result = value(x);
  for (double& v : result.values()) v = v > 0.0 ? v : 0.0;
  const Var out = push(std::move(result), needs(x));
  nodes_[out].backward = [this, x, out] {
    const Matrix& dy = grad(out);
    const Matrix& vx = value(x);
    Matrix& g = grad(x);
    for (std::size_t i = 0; i < dy.size(); ++i) {
      if (vx.data()[i] > 0.0) g.data()[i] += dy.data()[i];
    }
  };
  return out;
}

Var Tape::mask_multiply(Var x, Matrix mask) {
  const Matrix& vx = value(x);
  if (mask.rows() != vx.rows() || mask.cols() != vx.cols()) {
    throw InvalidArgument("mask_multiply: shape mismatch");
  }
  Matrix result = vx;
  for (std::size_t i = 0; i < result.size(); ++i) result.data()[i] *= mask.data()[i];
  const Var out = push(std::move(result), needs(x));
  nodes_[out].backward = [this, x, out, m = std::move(mask)] {
    const Matrix& dy = grad(out);
    Matrix& g = grad(x);
    for (std::size_t i = 0; i < dy.size(); ++i) g.data()[i] += m.data()[i] * dy.data()[i];
  };
  return out;
}

Var Tape::layer_norm(Var x, Var gamma, Var beta, double eps) {
  std::vector<double> mean, rstd;
  Matrix result = osum::layer_norm(value(x), value(gamma), value(beta), eps, &mean, &rstd);
  const Var out = push(std::move(result), needs(x) || needs(gamma) || needs(beta));
  nodes_[out].backward = [this, x, gamma, beta, out, mean = std::move(mean),
                          rstd = std::move(rstd)] {
    const Matrix& dy = grad(out);
    const Matrix& vx = value(x);
    const Matrix& g = value(gamma);
    const std::size_t n = vx.rows(), d = vx.cols();
    std::vector<double> xhat(d), dxhat(d);
    for (std::size_t i = 0; i < n; ++i) {
      double sum_dxhat = 0.0, sum_dxhat_xhat = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        xhat[j] = (vx(i, j) - mean[i]) * rstd[i];
        dxhat[j] = dy(i, j) * g.data()[j];
        sum_dxhat += dxhat[j];
        sum_dxhat_xhat += dxhat[j] * xhat[j];
      }
      if (needs(gamma)) {
        Matrix& dg = grad(gamma);
        for (std::size_t j = 0; j < d; ++j) dg.data()[j] += dy(i, j) * xhat[j];
      }
      if (needs(beta)) {
        Matrix& db = grad(beta);
        for (std::size_t j = 0; j < d; ++j) db.data()[j] += dy(i, j);
      }
      if (needs(x)) {
        Matrix& dx = grad(x);
        const double inv_d = 1.0 / static_cast<double>(d);
        for (std::size_t j = 0; j < d; ++j) {
          dx(i, j) += rstd[i] * (dxhat[j] - inv_d * sum_dxhat - xhat[j] * inv_d * sum_dxhat_xhat);
        }
      }
    }
  };
  return out;
}

Var Tape::attention(Var q, Var k, Var v, std::size_t heads, AttentionMask mask) {
  const Matrix& vq = value(q);
  const Matrix& vk = value(k);
  const Matrix& vv = value(v);
  const std::size_t nq = vq.rows(), nk = vk.rows(), d = vq.cols();
  if (heads == 0 || d % heads != 0 || vk.cols() != d || vv.cols() != d || vv.rows() != nk ||
      mask.key_valid.size() != nk) {
    throw InvalidArgument("Tape::attention: shape mismatch");
  }
  const std::size_t dk = d / heads;
  const double s = 1.0 / std::sqrt(static_cast<double>(dk));
  auto allowed = [&mask](std::size_t i, std::size_t j) {
    return mask.key_valid[j] != 0 && (!mask.causal || j <= i);
  };

  // probs[h] is nq x nk.
  std::vector<Matrix> probs(heads, Matrix(nq, nk));
  Matrix result(nq, d);
  for (std::size_t h = 0; h < heads; ++h) {
    const std::size_t off = h * dk;
    Matrix& p = probs[h];
    for (std::size_t i = 0; i < nq; ++i) {
      double max = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < nk; ++j) {
        if (!allowed(i, j)) continue;
        double acc = 0.0;
        for (std::size_t c = 0; c < dk; ++c) acc += vq(i, off + c) * vk(j, off + c);
        p(i, j) = acc * s;
        max = std::max(max, p(i, j));
      }
      if (!std::isfinite(max)) {
        for (std::size_t j = 0; j < nk; ++j) p(i, j) = 0.0;
        continue;
      }
      double sum = 0.0;
      for (std::size_t j = 0; j < nk; ++j) {
        p(i, j) = allowed(i, j) ? std::exp(p(i, j) - max) : 0.0;
        sum += p(i, j);
      }
      for (std::size_t j = 0; j < nk; ++j) p(i, j) /= sum;
      for (std::size_t j = 0; j < nk; ++j) {
        const double pij = p(i, j);
        if (pij == 0.0) continue;
        for (std::size_t c = 0; c < dk; ++c) result(i, off + c) += pij * vv(j, off + c);
      }
    }
  }

  const Var out = push(std::move(result), needs(q) || needs(k) || needs(v));
  nodes_[out].backward = [this, q, k, v, out, heads, dk, s, probs = std::move(probs)] {
    const Matrix& dy = grad(out);
    const Matrix& vq = value(q);
    const Matrix& vk = value(k);
    const Matrix& vv = value(v);
    const std::size_t nq = vq.rows(), nk = vk.rows();
    Matrix* dq = needs(q) ? &grad(q) : nullptr;
    Matrix* dkm = needs(k) ? &grad(k) : nullptr;
    Matrix* dv = needs(v) ? &grad(v) : nullptr;
    std::vector<double> dp(nk);
    for (std::size_t h = 0; h < heads; ++h) {
      const std::size_t off = h * dk;
      const Matrix& p = probs[h];
      for (std::size_t i = 0; i < nq; ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < nk; ++j) {
          const double pij = p(i, j);
          if (pij == 0.0) {
            dp[j] = 0.0;
            continue;
          }
          double acc = 0.0;
          for (std::size_t c = 0; c < dk; ++c) {
            acc += dy(i, off + c) * vv(j, off + c);
            if (dv) (*dv)(j, off + c) += pij * dy(i, off + c);
          }
          dp[j] = acc;
          dot += pij * acc;
        }
        for (std::size_t j = 0; j < nk; ++j) {
          const double pij = p(i, j);
          if (pij == 0.0) continue;
          const double ds = pij * (dp[j] - dot) * s;
          for (std::size_t c = 0; c < dk; ++c) {
            if (dq) (*dq)(i, off + c) += ds * vk(j, off + c);
            if (dkm) (*dkm)(j, off + c) += ds * vq(i, off + c);
          }
        }
      }
    }
  };
  return out;
}

Var Tape::embed(Var table, std::vector<std::int32_t> ids, double factor) {
  const Matrix& t = value(table);
  Matrix result(ids.size(), t.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || static_cast<std::size_t>(ids[i]) >= t.rows()) {
      throw InvalidArgument("Tape::embed: id " + std::to_string(ids[i]) + " out of range");
    }
    const auto src = t.row(static_cast<std::size_t>(ids[i]));
    auto dst = result.row(i);
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] = src[j] * factor;
  }
  const Var out = push(std::move(result), needs(table));
  nodes_[out].backward = [this, table, out, factor, ids = std::move(ids)] {
    const Matrix& dy = grad(out);
    Matrix& g = grad(table);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      auto dst = g.row(static_cast<std::size_t>(ids[i]));
      const auto src = dy.row(i);
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += factor * src[j];
    }
  };
  return out;
}

Var Tape::cross_entropy_sum(Var logits, std::vector<std::int32_t> targets,
                            std::int32_t ignore) {
  const Matrix& z = value(logits);
  if (targets.size() != z.rows()) {
    throw InvalidArgument("cross_entropy_sum: target count mismatch");
  }
  Matrix log_probs = z;
  double loss = 0.0;
  for (std::size_t i = 0; i < z.rows(); ++i) {
    if (targets[i] == ignore) continue;
    if (targets[i] < 0 || static_cast<std::size_t>(targets[i]) >= z.cols()) {
      throw InvalidArgument("cross_entropy_sum: target out of range");
    }
    log_softmax_inplace(log_probs.row(i));
    loss -= log_probs(i, static_cast<std::size_t>(targets[i]));
  }
  const Var out = push(Matrix(1, 1, loss), needs(logits));
  nodes_[out].backward = [this, logits, out, ignore, targets = std::move(targets),
                          lp = std::move(log_probs)] {
    const double g = grad(out)(0, 0);
    Matrix& dz = grad(logits);
    for (std::size_t i = 0; i < lp.rows(); ++i) {
      if (targets[i] == ignore) continue;
      for (std::size_t j = 0; j < lp.cols(); ++j) dz(i, j) += g * std::exp(lp(i, j));
      dz(i, static_cast<std::size_t>(targets[i])) -= g;
    }
  };
  return out;
}

Var Tape::sum_scalars(const std::vector<Var>& scalars) {
  double total = 0.0;
  bool any = false;
  for (const Var s : scalars) {
    total += value(s)(0, 0);
    any = any || needs(s);
  }
  const Var out = push(Matrix(1, 1, total), any);
  nodes_[out].backward = [this, out, scalars] {
    const double g = grad(out)(0, 0);
    for (const Var s : scalars) {
      if (needs(s)) grad(s)(0, 0) += g;
    }
  };
  return out;
}

void Tape::backward(Var root) {
  if (value(root).rows() != 1 || value(root).cols() != 1) {
    throw InvalidArgument("Tape::backward: root must be a scalar");
  }
  grad(root)(0, 0) = 1.0;
  for (std::size_t i = root + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (!node.needs_grad || !node.backward || node.grad == nullptr) continue;
    node.backward();
  }
}

}  // namespace osum
