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
#include <string>
#include <vector>

#include "osum/extraction.hpp"
#include "osum/selection.hpp"

namespace osum {

// Opinion phrases joined by " [SEP] ".
struct TextualizedOpinions {
  std::string text;
  std::size_t phrase_count = 0;
};

// Phrases of one review in review order. Throws InvalidArgument when the
// set is empty.
TextualizedOpinions textualize_training(const OpinionSet& opinion_set);

// Representatives in selection order (cluster size descending).
TextualizedOpinions textualize_selected(const SelectedOpinions& selected);

// Joins already-rendered phrases. Throws InvalidArgument on an empty list,
// an empty phrase, or a phrase containing the delimiter.
TextualizedOpinions textualize_phrases(const std::vector<std::string>& phrases);

// Inverse of the textualize functions. Throws InvalidArgument on leading,
// trailing or doubled delimiters.
std::vector<std::string> split_textualization(const std::string& text);

}  // namespace osum
