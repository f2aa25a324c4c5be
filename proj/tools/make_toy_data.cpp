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

// Writes a small synthetic data directory: reviews.jsonl, embeddings.txt,
// refs.jsonl and votes.jsonl.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <map>

#include "osum/common.hpp"
#include "osum/corpus.hpp"
#include "osum/extraction.hpp"
#include "osum/synthetic.hpp"

namespace {

// Reference = the three most frequent opinion phrases of the entity.
std::string reference_for(const osum::Corpus& corpus, const osum::Extractions& extractions,
                          const std::string& entity) {
  std::map<std::string, std::size_t> counts;
  for (const auto& opinion : osum::entity_opinion_set(extractions, corpus, entity)) {
    ++counts[opinion.phrase()];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::string text;
  for (std::size_t i = 0; i < ranked.size() && i < 3; ++i) {
    if (i > 0) text += " and ";
    text += ranked[i].first;
  }
  if (!text.empty()) text[0] = static_cast<char>(std::toupper(text[0]));
  return text + ".";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the toy data directory", "osum_make_toy"};
  std::string out_dir = "data/toy";
  osum::SyntheticCorpusSpec spec;
  spec.entities = 5;
  spec.reviews_per_entity = 40;
  std::size_t dim = 50;
  app.add_option("--out", out_dir)->capture_default_str();
  app.add_option("--seed", spec.seed)->capture_default_str();
  app.add_option("--entities", spec.entities)->capture_default_str();
  app.add_option("--reviews-per-entity", spec.reviews_per_entity)->capture_default_str();
  app.add_option("--dim", dim)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out_dir);
    auto path = [&](const char* name) { return (std::filesystem::path(out_dir) / name).string(); };

    osum::Corpus corpus = osum::synthetic_corpus(spec);
    osum::add_planted_entity(corpus, "planted");
    osum::write_file(path("reviews.jsonl"), osum::format_reviews(corpus));

    const auto lexicons = osum::default_lexicons(spec.domain);
    const auto words = osum::synthetic_words();
    const auto store = osum::synthetic_embeddings(lexicons, words, dim, spec.seed);
    std::vector<std::string> all_words;
    for (const auto& [noun, category] : lexicons.aspects.aspect_of) all_words.push_back(noun);
    for (const auto& [word, polarity] : lexicons.sentiment.polarity_of) all_words.push_back(word);
    all_words.insert(all_words.end(), lexicons.sentiment.intensifiers.begin(),
                     lexicons.sentiment.intensifiers.end());
    all_words.insert(all_words.end(), words.begin(), words.end());
    std::sort(all_words.begin(), all_words.end());
    all_words.erase(std::unique(all_words.begin(), all_words.end()), all_words.end());
    osum::write_file(path("embeddings.txt"), osum::format_embeddings(store, all_words));

    const auto extractions = osum::extract_corpus(corpus, lexicons);
    std::string refs;
    for (const auto& entity : corpus.entity_ids()) {
      refs += nlohmann::json{{"entity_id", entity},
                             {"summary", reference_for(corpus, extractions, entity)}}
                  .dump() +
              "\n";
    }
    osum::write_file(path("refs.jsonl"), refs);

    osum::Rng rng(spec.seed);
    const char* systems[] = {"digest", "lexrank", "best_review"};
    const char* votes[] = {"best", "worst", "none"};
    std::string vote_lines;
    for (std::size_t item = 0; item < corpus.entity_count(); ++item) {
      for (const char* system : systems) {
        vote_lines += nlohmann::json{{"item_id", "item" + std::to_string(item + 1)},
                                     {"system", system},
                                     {"vote", votes[rng.uniform_index(3)]}}
                          .dump() +
                      "\n";
      }
    }
    osum::write_file(path("votes.jsonl"), vote_lines);
    std::cout << "wrote " << corpus.review_count() << " reviews for " << corpus.entity_count()
              << " entities to " << out_dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
