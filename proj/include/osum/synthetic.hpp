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
#include <map>
#include <string>
#include <vector>

#include "osum/common.hpp"
#include "osum/corpus.hpp"
#include "osum/embedding.hpp"
#include "osum/extraction.hpp"

namespace osum {

// Templated hotel reviews for smoke tests, demos and training checks. Each
// review has one to three clauses of the forms
//   "the <noun> was [intensifier] <adjective>"
//   "[intensifier] <adjective> <noun>"
//   "we loved the [intensifier] <adjective> <noun>"
// joined by ",", "and" or "." and ending with ".".
struct SyntheticCorpusSpec {
  std::size_t entities = 10;
  std::size_t reviews_per_entity = 50;
  std::uint64_t seed = 0;
  std::string domain = "hotel";
};

std::string synthetic_review(Rng& rng);
Corpus synthetic_corpus(const SyntheticCorpusSpec& spec);

// Every word the templates can produce.
std::vector<std::string> synthetic_words();

// Vectors where nouns of one aspect category, and sentiment words of one
// polarity, lie near a shared direction; every other word is random. Covers
// `words` plus every lexicon entry, in sorted order.
EmbeddingStore synthetic_embeddings(const Lexicons& lexicons,
                                    const std::vector<std::string>& words, std::size_t dim,
                                    std::uint64_t seed);

// Adds `major` reviews mentioning "great location" and `minor` mentioning
// "rude staff" to `entity_id`. Review ids are "<entity_id>-p<n>".
void add_planted_entity(Corpus& corpus, const std::string& entity_id, std::size_t major = 30,
                        std::size_t minor = 2);

// GloVe-style text, one "<token> <v1> ... <vd>" line per word, using the
// shortest decimal form that round-trips.
std::string format_embeddings(const EmbeddingStore& store, const std::vector<std::string>& words);

}  // namespace osum
