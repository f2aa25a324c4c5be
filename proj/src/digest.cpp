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

#include "osum/digest.hpp"

namespace osum {

DigestResult digest_opinions(const std::vector<OpinionTriple>& opinions,
                             const EmbeddingStore& store, const GeneratorModel& model,
                             const SelectionConfig& selection, const DecodeConfig& decode) {
  DigestResult result;
  result.selection = select_with_clusters(opinions, store, selection);
  if (result.selection.selected.empty()) return result;
  result.input = textualize_selected(result.selection.selected);
  result.summary = generate(model, *result.input, decode);
  return result;
}

}  // namespace osum
