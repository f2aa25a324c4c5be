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

#include "osum/synthetic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace osum {
namespace {

const std::vector<std::string> kNouns = {"room",  "bed",     "view",     "bathroom",
                                         "shower", "staff",  "service",  "breakfast",
                                         "coffee", "location", "area",   "price",
                                         "value"};
const std::vector<std::string> kPositive = {"great", "clean",  "friendly", "comfy",
                                            "nice",  "lovely", "amazing",  "fresh",
                                            "cheap", "quiet"};
const std::vector<std::string> kNegative = {"dirty", "rude", "awful", "terrible", "cold",
                                            "slow",  "noisy", "bad",  "tiny",     "expensive"};
const std::vector<std::string> kIntensifiers = {"very", "really", "super"};
const std::vector<std::string> kGlue = {"the", "was", "we", "loved", ",", "and", "."};

template <typename T>
const T& pick(const std::vector<T>& items, Rng& rng) {
  return items[rng.uniform_index(items.size())];
}

std::string clause(Rng& rng) {
  const std::string& noun = pick(kNouns, rng);
  const std::string& adj = rng.uniform() < 0.5 ? pick(kPositive, rng) : pick(kNegative, rng);
  std::string intens = rng.uniform() < 0.3 ? pick(kIntensifiers, rng) + " " : "";
  switch (rng.uniform_index(3)) {
    case 0:
      return "the " + noun + " was " + intens + adj;
    case 1:
      return intens + adj + " " + noun;
    default:
      return "we loved the " + intens + adj + " " + noun;
  }
}

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 32);
  return s;
}

std::vector<double> unit_random(Rng& rng, std::size_t dim) {
  std::vector<double> v(dim);
  double norm = 0.0;
  for (auto& x : v) {
    x = rng.normal();
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

}  // namespace

std::string synthetic_review(Rng& rng) {
  std::string text = capitalize(clause(rng));
  const std::size_t extra = rng.uniform_index(3);
  for (std::size_t c = 0; c < extra; ++c) {
    switch (rng.uniform_index(3)) {
      case 0:
        text += ", " + clause(rng);
        break;
      case 1:
        text += " and " + clause(rng);
        break;
      default:
        text += ". " + capitalize(clause(rng));
        break;
    }
  }
  return text + ".";
}

Corpus synthetic_corpus(const SyntheticCorpusSpec& spec) {
  Corpus corpus(spec.domain);
  Rng rng(spec.seed);
  for (std::size_t e = 0; e < spec.entities; ++e) {
    const std::string entity = "e" + std::to_string(e + 1);
    for (std::size_t r = 0; r < spec.reviews_per_entity; ++r) {
      corpus.add(entity + "-r" + std::to_string(r + 1), entity, synthetic_review(rng));
    }
  }
  return corpus;
}

std::vector<std::string> synthetic_words() {
  std::set<std::string> words;
  for (const auto* list : {&kNouns, &kPositive, &kNegative, &kIntensifiers, &kGlue}) {
    words.insert(list->begin(), list->end());
  }
  return {words.begin(), words.end()};
}

EmbeddingStore synthetic_embeddings(const Lexicons& lexicons,
                                    const std::vector<std::string>& words, std::size_t dim,
                                    std::uint64_t seed) {
  constexpr double kSpread = 0.35;
  Rng rng(seed);
  std::set<std::string> all(words.begin(), words.end());
  for (const auto& [noun, category] : lexicons.aspects.aspect_of) all.insert(noun);
  for (const auto& [word, polarity] : lexicons.sentiment.polarity_of) all.insert(word);
  all.insert(lexicons.sentiment.intensifiers.begin(), lexicons.sentiment.intensifiers.end());

  std::map<std::string, std::vector<double>> centers;
  for (const auto& category : lexicons.aspects.categories) {
    centers["aspect:" + category] = unit_random(rng, dim);
  }
  for (const char* polarity : {"positive", "negative", "neutral"}) {
    centers[std::string("polarity:") + polarity] = unit_random(rng, dim);
  }

  EmbeddingStore store(dim);
  for (const auto& word : all) {
    std::vector<double> v = unit_random(rng, dim);
    const std::vector<double>* center = nullptr;
    if (const auto it = lexicons.aspects.aspect_of.find(word);
        it != lexicons.aspects.aspect_of.end()) {
      center = &centers.at("aspect:" + it->second);
    } else if (const auto pt = lexicons.sentiment.polarity_of.find(word);
               pt != lexicons.sentiment.polarity_of.end()) {
      center = &centers.at("polarity:" + std::string(to_string(pt->second)));
    }
    if (center != nullptr) {
      for (std::size_t i = 0; i < dim; ++i) v[i] = (*center)[i] + kSpread * v[i];
    }
    store.insert(word, v);
  }
  return store;
}

void add_planted_entity(Corpus& corpus, const std::string& entity_id, std::size_t major,
                        std::size_t minor) {
  static const std::vector<std::string> kMajor = {
      "Great location.", "The hotel has a great location.", "Great location, close to all.",
      "We chose it for the great location."};
  static const std::vector<std::string> kMinor = {"Rude staff.",
                                                  "Sadly we met rude staff at night."};
  std::size_t n = 0;
  for (std::size_t i = 0; i < major; ++i) {
    corpus.add(entity_id + "-p" + std::to_string(++n), entity_id, kMajor[i % kMajor.size()]);
  }
  for (std::size_t i = 0; i < minor; ++i) {
    corpus.add(entity_id + "-p" + std::to_string(++n), entity_id, kMinor[i % kMinor.size()]);
  }
}

std::string format_embeddings(const EmbeddingStore& store, const std::vector<std::string>& words) {
  std::string out;
  char buf[32];
  for (const auto& word : words) {
    const auto values = store.lookup(word);
    if (!values) continue;
    out += word;
    for (double x : *values) {
      const auto res = std::to_chars(buf, buf + sizeof(buf), x);
      out.push_back(' ');
      out.append(buf, res.ptr);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace osum
