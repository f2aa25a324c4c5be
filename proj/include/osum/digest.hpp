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

#include <optional>
#include <string>
#include <vector>

#include "osum/decoder.hpp"
#include "osum/embedding.hpp"
#include "osum/extraction.hpp"
#include "osum/model.hpp"
#include "osum/selection.hpp"
#include "osum/textualize.hpp"

namespace osum {

// Output of select -> textualize -> generate for one entity.
struct DigestResult {
  SelectionResult selection;
  std::optional<TextualizedOpinions> input;  // empty when nothing was selected
  std::optional<std::string> summary;        // empty when nothing was selected
};

DigestResult digest_opinions(const std::vector<OpinionTriple>& opinions,
                             const EmbeddingStore& store, const GeneratorModel& model,
                             const SelectionConfig& selection, const DecodeConfig& decode);

}  // namespace osum
