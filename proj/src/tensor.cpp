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

#include "osum/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "osum/common.hpp"

namespace osum {

void Matrix::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

void Matrix::resize(std::size_t rows, std::size_t cols, double fill) {
  rows_ = rows;
  cols_ = cols;
  data_.assign(rows * cols, fill);
}

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw InvalidArgument("append_row: width mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void gemm_nn(const Matrix& a, const Matrix& b, Matrix& out) {
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  if (b.rows() != k || out.rows() != n || out.cols() != m) {
    throw InvalidArgument("gemm_nn: shape mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    double* o = out.data() + i * m;
    const double* ai = a.data() + i * k;
    for (std::size_t p = 0; p < k; ++p) {
      const double s = ai[p];
      if (s == 0.0) continue;
      const double* bp = b.data() + p * m;
      for (std::size_t j = 0; j < m; ++j) o[j] += s * bp[j];
    }
  }
}

void gemm_nt(const Matrix& a, const Matrix& b, Matrix& out) {
  const std::size_t n = a.rows(), k = a.cols(), m = b.rows();
  if (b.cols() != k || out.rows() != n || out.cols() != m) {
    throw InvalidArgument("gemm_nt: shape mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double* ai = a.data() + i * k;
    double* o = out.data() + i * m;
    for (std::size_t j = 0; j < m; ++j) {
      const double* bj = b.data() + j * k;
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += ai[p] * bj[p];
      o[j] += acc;
    }
  }
}

void gemm_tn(const Matrix& a, const Matrix& b, Matrix& out) {
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  if (b.rows() != n || out.rows() != k || out.cols() != m) {
    throw InvalidArgument("gemm_tn: shape mismatch");
  }
  for (std::size_t r = 0; r < n; ++r) {
    const double* ar = a.data() + r * k;
    const double* br = b.data() + r * m;
    for (std::size_t p = 0; p < k; ++p) {
      const double s = ar[p];
      if (s == 0.0) continue;
      double* o = out.data() + p * m;
      for (std::size_t j = 0; j < m; ++j) o[j] += s * br[j];
    }
  }
}

Matrix linear(const Matrix& x, const Matrix& w, const Matrix& bias) {
  Matrix out(x.rows(), w.cols());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    std::copy(bias.data(), bias.data() + bias.cols(), out.data() + i * out.cols());
  }
  gemm_nn(x, w, out);
  return out;
}

void log_softmax_inplace(std::span<double> values) {
  double max = -std::numeric_limits<double>::infinity();
  for (double v : values) max = std::max(max, v);
  if (!std::isfinite(max)) return;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max);
  const double log_z = max + std::log(sum);
  for (double& v : values) v -= log_z;
}

Matrix layer_norm(const Matrix& x, const Matrix& gamma, const Matrix& beta, double eps,
                  std::vector<double>* mean, std::vector<double>* rstd) {
  const std::size_t n = x.rows(), d = x.cols();
  Matrix out(n, d);
  if (mean) mean->assign(n, 0.0);
  if (rstd) rstd->assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = x.row(i);
    double mu = 0.0;
    for (double v : row) mu += v;
    mu /= static_cast<double>(d);
    double var = 0.0;
    for (double v : row) var += (v - mu) * (v - mu);
    var /= static_cast<double>(d);
    const double r = 1.0 / std::sqrt(var + eps);
    auto o = out.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      o[j] = (row[j] - mu) * r * gamma.data()[j] + beta.data()[j];
    }
    if (mean) (*mean)[i] = mu;
    if (rstd) (*rstd)[i] = r;
  }
  return out;
}

Matrix positional_encoding(std::size_t length, std::size_t dim, std::size_t offset) {
  Matrix pe(length, dim);
  for (std::size_t p = 0; p < length; ++p) {
    const double pos = static_cast<double>(p + offset);
    for (std::size_t i = 0; i < dim; i += 2) {
      const double angle =
          pos / std::pow(10000.0, static_cast<double>(i) / static_cast<double>(dim));
      pe(p, i) = std::sin(angle);
      if (i + 1 < dim) pe(p, i + 1) = std::cos(angle);
    }
  }
  return pe;
}

}  // namespace osum
