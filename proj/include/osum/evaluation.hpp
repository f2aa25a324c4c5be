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
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "osum/corpus.hpp"
#include "osum/decoder.hpp"
#include "osum/embedding.hpp"
#include "osum/extraction.hpp"
#include "osum/model.hpp"
#include "osum/selection.hpp"

namespace osum {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// 2PR / (P + R), zero when P + R is zero.
double f_measure(double precision, double recall);

// Clipped n-gram overlap. A side with fewer than n tokens scores zero.
RougeScore rouge_n(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference, std::size_t n);
// Both texts pass through the corpus tokenizer first.
RougeScore rouge_n(const std::string& candidate, const std::string& reference, std::size_t n);

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);
RougeScore rouge_l(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference);
RougeScore rouge_l(const std::string& candidate, const std::string& reference);

struct EntityScores {
  std::string entity_id;
  RougeScore rouge1, rouge2, rougeL;
};

// Mean F-measures over the entities present in both maps, scaled by 100.
struct CorpusReport {
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
  std::vector<EntityScores> per_entity;
  std::vector<std::string> missing_reference;  // summarized, no reference
  std::vector<std::string> missing_summary;    // referenced, not summarized
};

// Throws InvalidArgument when no entity has both a summary and a reference.
CorpusReport evaluate_corpus(const std::map<std::string, std::string>& summaries,
                             const std::map<std::string, std::string>& references);

// References file: JSON Lines {entity_id, summary}.
std::map<std::string, std::string> load_references(const std::string& path);
std::map<std::string, std::string> parse_references(const std::string& content,
                                                    const std::string& source_name);

struct VoteCounts {
  std::size_t best = 0;
  std::size_t worst = 0;
  std::size_t total = 0;
};

// system -> tallies.
using VoteTable = std::map<std::string, VoteCounts>;

// Votes file: JSON Lines {item_id, system, vote in {best, worst, none}}; each
// record is one judgment of `system`.
VoteTable load_votes(const std::string& path);
VoteTable parse_votes(const std::string& content, const std::string& source_name);

// 100 * (best - worst) / total. Throws InvalidArgument when total is zero or
// best + worst exceeds total.
double bws_score(const VoteCounts& counts);
std::map<std::string, double> bws_scores(const VoteTable& table);

// Percentage of each label among `labels` (e.g. fully/partially/no).
std::map<std::string, double> label_proportions(const std::vector<std::string>& labels);

struct ReportRow {
  std::string method;
  CorpusReport report;
};

// Aligned plain-text table: Method, R1, R2, RL with two decimals.
std::string format_rouge_table(const std::vector<ReportRow>& rows);
std::string format_bws_table(const VoteTable& table);

struct SweepSpec {
  std::vector<std::size_t> k_values;
  std::vector<double> theta_values;
  std::vector<std::size_t> max_len_values;
  SelectionConfig selection;  // base values for everything but k / theta
  DecodeConfig decode;        // base values for everything but max_len
};

struct SweepCell {
  std::size_t k = 0;
  double theta = 0.0;
  std::size_t max_len = 0;
  CorpusReport report;
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation over cells
};

// Cells in k-major, then theta, then max_len order.
struct SweepGrid {
  std::vector<SweepCell> cells;
  MetricSummary rouge1, rouge2, rougeL;
};

// For every (k, theta, max_len) cell, summarizes each referenced entity of
// the corpus with the digest pipeline and scores the result. Entities whose
// selection is empty get an empty summary.
SweepGrid sensitivity_sweep(const Corpus& corpus, const Extractions& extractions,
                            const EmbeddingStore& store, const GeneratorModel& model,
                            const std::map<std::string, std::string>& references,
                            const SweepSpec& spec);

std::string format_sweep_table(const SweepGrid& grid);

nlohmann::json to_json(const RougeScore& score);
nlohmann::json to_json(const CorpusReport& report);
nlohmann::json to_json(const SweepGrid& grid);

}  // namespace osum
