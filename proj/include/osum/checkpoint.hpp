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

#include <cstdint>
#include <string>
#include <string_view>

#include "osum/common.hpp"
#include "osum/model.hpp"

namespace osum {

// Binary checkpoint layout (all integers little-endian):
//   8 bytes   magic "OSUMGEN\0"
//   u32       format version
//   u32 x 4   layers, heads, d_model, d_ff
//   u8        tied embeddings flag
//   f64       dropout
//   u32       vocabulary size, then per token: u32 byte length + UTF-8 bytes
//   u32       parameter count, then per parameter: u32 rows, u32 cols,
//             rows * cols f32 values
//   u32       CRC-32 of every preceding byte
inline constexpr std::uint32_t kCheckpointVersion = 1;

class CheckpointError : public Error {
 public:
  enum class Kind { kFormat, kVersion, kChecksum };
  CheckpointError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string serialize_model(const GeneratorModel& model);
GeneratorModel deserialize_model(std::string_view bytes);

void save_model(const GeneratorModel& model, const std::string& path);
GeneratorModel load_model(const std::string& path);

}  // namespace osum
