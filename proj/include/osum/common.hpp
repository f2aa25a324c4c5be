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
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace osum {

// Base class for every error raised by the library. Callers that only need
// to report failures can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input file. `line` is 1-based; 0 when the error
// is not tied to a specific line.
class FormatError : public Error {
 public:
  FormatError(const std::string& path, std::size_t line,
              const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

// Deterministic random source. Built on mt19937_64, whose output sequence is
// fixed by the standard; the derived draws below are implemented here rather
// than through <random> distributions so results do not depend on the
// standard library vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound), rejection sampled. bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound);

  // Uniform real in [0, 1) with 53 random bits.
  double uniform();

  // Standard normal via Box-Muller (one draw per call, no caching).
  double normal();

  // Fisher-Yates, iterating i from size-1 down to 1 and swapping i with
  // uniform_index(i + 1).
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_index(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Identity permutation of [0, n) shuffled with `rng`.
std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Splits file content into lines, stripping a trailing '\r' from each.
std::vector<std::string> split_lines(const std::string& content);

bool is_blank(const std::string& line);

}  // namespace osum
