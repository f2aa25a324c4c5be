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

#include <algorithm>
#include <initializer_list>
#include <json.hpp>

#include "osum/common.hpp"
#include "osum/extraction.hpp"

namespace osum {
namespace {

using WordList = std::initializer_list<const char*>;

const WordList kPositive = {
    "good",      "great",      "excellent", "amazing",  "awesome",   "nice",
    "friendly",  "helpful",    "clean",     "comfy",    "comfortable", "delicious",
    "tasty",     "fresh",      "lovely",    "perfect",  "wonderful", "fantastic",
    "spacious",  "quiet",      "cheap",     "affordable", "reasonable", "polite",
    "attentive", "professional", "central", "convenient", "beautiful", "cozy",
    "yummy",     "decent",     "fast",      "quick",    "best",      "favorite",
    "superb",    "pleasant",   "soft",      "modern",   "sweet"};

const WordList kNegative = {
    "bad",     "terrible", "awful",   "horrible", "rude",     "dirty",
    "noisy",   "loud",     "cold",    "slow",     "small",    "tiny",
    "expensive", "overpriced", "stale", "bland",  "mediocre", "disgusting",
    "worst",   "poor",     "uncomfortable", "smelly", "broken", "unfriendly",
    "greasy",  "soggy",    "cramped", "old",      "unkind",   "worn"};

const WordList kIntensifiers = {"very",  "really", "super", "so",
                                "quite", "extremely", "incredibly", "pretty"};

struct AspectEntry {
  const char* category;
  WordList nouns;
};

const std::initializer_list<AspectEntry> kRestaurantAspects = {
    {"food",
     {"food", "pizza", "pasta", "burger", "burgers", "sushi", "chicken", "dish",
      "dishes", "meal", "meals", "dessert", "menu", "coffee", "drinks", "portions",
      "breakfast", "lunch", "dinner", "fries", "salad", "soup", "steak", "wings",
      "rice", "curry", "bread", "tacos", "noodles"}},
    {"service",
     {"service", "staff", "waiter", "waitress", "server", "servers", "employees",
      "manager", "host", "owner", "bartender"}},
    {"location", {"location", "area", "neighborhood", "parking", "spot"}},
    {"price", {"price", "prices", "value", "bill", "cost"}},
    {"bathroom", {"bathroom", "bathrooms", "restroom", "restrooms", "toilet"}},
};

const std::initializer_list<AspectEntry> kHotelAspects = {
    {"room",
     {"room", "rooms", "bed", "beds", "view", "suite", "pillows", "sheets",
      "furniture", "balcony", "window", "carpet", "tv", "wifi"}},
    {"bathroom",
     {"bathroom", "bathrooms", "bath", "shower", "toilet", "towels", "sink", "tub"}},
    {"service",
     {"staff", "service", "reception", "desk", "concierge", "personnel",
      "housekeeping", "manager", "employees"}},
    {"location", {"location", "area", "neighborhood", "station", "downtown", "beach"}},
    {"price", {"price", "prices", "value", "rate", "rates", "cost"}},
    {"food", {"breakfast", "restaurant", "food", "coffee", "bar", "buffet"}},
};

Lexicons build(const std::string& domain,
               const std::initializer_list<AspectEntry>& aspects) {
  Lexicons lex;
  lex.domain = domain;
  for (const auto& entry : aspects) {
    lex.aspects.categories.emplace_back(entry.category);
    for (const char* noun : entry.nouns) lex.aspects.aspect_of.emplace(noun, entry.category);
  }
  lex.aspects.categories.emplace_back(kGeneralAspect);
  for (const char* w : kPositive) lex.sentiment.polarity_of.emplace(w, Polarity::kPositive);
  for (const char* w : kNegative) lex.sentiment.polarity_of.emplace(w, Polarity::kNegative);
  for (const char* w : kIntensifiers) lex.sentiment.intensifiers.emplace(w);
  return lex;
}

std::vector<std::string> string_list(const nlohmann::json& value,
                                     const std::string& source, const char* key) {
  if (!value.is_array()) {
    throw FormatError(source, 0, std::string("'") + key + "' must be an array of strings");
  }
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) {
      throw FormatError(source, 0, std::string("'") + key + "' must be an array of strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

Lexicons default_lexicons(const std::string& domain) {
  if (domain == "restaurant") return build(domain, kRestaurantAspects);
  if (domain == "hotel") return build(domain, kHotelAspects);
  throw NotFound("no built-in lexicon for domain '" + domain +
                 "' (available: restaurant, hotel)");
}

Lexicons parse_lexicons(const std::string& content, const std::string& source_name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(source_name, 0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("aspects") || !doc["aspects"].is_object()) {
    throw FormatError(source_name, 0, "lexicon must be an object with an 'aspects' map");
  }
  Lexicons lex;
  lex.domain = doc.value("domain", std::string());
  for (const auto& [category, nouns] : doc["aspects"].items()) {
    lex.aspects.categories.push_back(category);
    for (auto& noun : string_list(nouns, source_name, "aspects")) {
      const auto lowered = join_tokens(tokenize(noun));
      const auto [it, inserted] = lex.aspects.aspect_of.emplace(lowered, category);
      if (!inserted && it->second != category) {
        throw FormatError(source_name, 0,
                          "noun '" + lowered + "' listed under two categories");
      }
    }
  }
  if (std::find(lex.aspects.categories.begin(), lex.aspects.categories.end(),
                kGeneralAspect) == lex.aspects.categories.end()) {
    lex.aspects.categories.emplace_back(kGeneralAspect);
  }
  for (const auto& [key, polarity] :
       {std::pair{"positive", Polarity::kPositive},
        std::pair{"negative", Polarity::kNegative}}) {
    if (!doc.contains(key)) continue;
    for (auto& word : string_list(doc[key], source_name, key)) {
      const auto [it, inserted] = lex.sentiment.polarity_of.emplace(word, polarity);
      if (!inserted && it->second != polarity) {
        throw FormatError(source_name, 0,
                          "word '" + word + "' listed as positive and negative");
      }
    }
  }
  if (doc.contains("intensifiers")) {
    for (auto& word : string_list(doc["intensifiers"], source_name, "intensifiers")) {
      lex.sentiment.intensifiers.insert(word);
    }
  }
  return lex;
}

Lexicons load_lexicons(const std::string& path) {
  return parse_lexicons(read_file(path), path);
}

}  // namespace osum
