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
#include <span>
#include <vector>

namespace osum {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  void fill(double value);
  void resize(std::size_t rows, std::size_t cols, double fill = 0.0);
  void append_row(std::span<const double> values);

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// out += a * b
void gemm_nn(const Matrix& a, const Matrix& b, Matrix& out);
// out += a * b^T
void gemm_nt(const Matrix& a, const Matrix& b, Matrix& out);
// out += a^T * b
void gemm_tn(const Matrix& a, const Matrix& b, Matrix& out);

// x * w + bias (bias is 1 x cols(w)).
Matrix linear(const Matrix& x, const Matrix& w, const Matrix& bias);

// In-place log-softmax of a vector. Entries equal to -infinity stay so.
void log_softmax_inplace(std::span<double> values);

// Row-wise layer normalization. Optionally records per-row mean and
// reciprocal standard deviation.
Matrix layer_norm(const Matrix& x, const Matrix& gamma, const Matrix& beta, double eps,
                  std::vector<double>* mean = nullptr,
                  std::vector<double>* rstd = nullptr);

// Sinusoidal position encoding rows [0, length) of width `dim`.
Matrix positional_encoding(std::size_t length, std::size_t dim, std::size_t offset = 0);

}  // namespace osum
