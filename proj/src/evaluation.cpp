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

#include "osum/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "osum/common.hpp"
#include "osum/digest.hpp"

namespace osum {
namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

RougeScore from_counts(std::size_t overlap, std::size_t candidate_total,
                       std::size_t reference_total) {
  RougeScore score;
  if (candidate_total == 0 || reference_total == 0) return score;
  score.precision = static_cast<double>(overlap) / static_cast<double>(candidate_total);
  score.recall = static_cast<double>(overlap) / static_cast<double>(reference_total);
  score.f1 = f_measure(score.precision, score.recall);
  return score;
}

std::string required(const nlohmann::json& record, const char* key,
                     const std::string& source, std::size_t line) {
  const auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw FormatError(source, line, std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

template <typename Fn>
void for_each_record(const std::string& content, const std::string& source, Fn&& fn) {
  const auto lines = split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_blank(lines[i])) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(source, i + 1, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) throw FormatError(source, i + 1, "record must be a JSON object");
    fn(record, i + 1);
  }
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

MetricSummary summarize_metric(const std::vector<double>& values) {
  MetricSummary out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - out.mean) * (v - out.mean);
  out.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  return out;
}

}  // namespace

double f_measure(double precision, double recall) {
  const double denom = precision + recall;
  return denom == 0.0 ? 0.0 : 2.0 * precision * recall / denom;
}

RougeScore rouge_n(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference, std::size_t n) {
  if (n == 0) throw InvalidArgument("rouge_n requires n >= 1");
  const auto cand = count_ngrams(candidate, n);
  const auto ref = count_ngrams(reference, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    const auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  const std::size_t cand_total = candidate.size() < n ? 0 : candidate.size() - n + 1;
  const std::size_t ref_total = reference.size() < n ? 0 : reference.size() - n + 1;
  return from_counts(overlap, cand_total, ref_total);
}

RougeScore rouge_n(const std::string& candidate, const std::string& reference, std::size_t n) {
  return rouge_n(tokenize(candidate), tokenize(reference), n);
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore rouge_l(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference) {
  return from_counts(lcs_length(candidate, reference), candidate.size(), reference.size());
}

RougeScore rouge_l(const std::string& candidate, const std::string& reference) {
  return rouge_l(tokenize(candidate), tokenize(reference));
}

CorpusReport evaluate_corpus(const std::map<std::string, std::string>& summaries,
                             const std::map<std::string, std::string>& references) {
  CorpusReport report;
  for (const auto& [entity, summary] : summaries) {
    const auto ref = references.find(entity);
    if (ref == references.end()) {
      report.missing_reference.push_back(entity);
      continue;
    }
    const auto cand_tokens = tokenize(summary);
    const auto ref_tokens = tokenize(ref->second);
    EntityScores scores{entity, rouge_n(cand_tokens, ref_tokens, 1),
                        rouge_n(cand_tokens, ref_tokens, 2), rouge_l(cand_tokens, ref_tokens)};
    report.rouge1 += scores.rouge1.f1;
    report.rouge2 += scores.rouge2.f1;
    report.rougeL += scores.rougeL.f1;
    report.per_entity.push_back(std::move(scores));
  }
  for (const auto& [entity, ref] : references) {
    if (!summaries.contains(entity)) report.missing_summary.push_back(entity);
  }
  if (report.per_entity.empty()) {
    throw InvalidArgument("no entity has both a summary and a reference");
  }
  const double scale = 100.0 / static_cast<double>(report.per_entity.size());
  report.rouge1 *= scale;
  report.rouge2 *= scale;
  report.rougeL *= scale;
  return report;
}

std::map<std::string, std::string> parse_references(const std::string& content,
                                                    const std::string& source_name) {
  std::map<std::string, std::string> out;
  for_each_record(content, source_name, [&](const nlohmann::json& record, std::size_t line) {
    auto entity = required(record, "entity_id", source_name, line);
    auto summary = required(record, "summary", source_name, line);
    if (!out.emplace(std::move(entity), std::move(summary)).second) {
      throw FormatError(source_name, line, "duplicate entity_id");
    }
  });
  return out;
}

std::map<std::string, std::string> load_references(const std::string& path) {
  return parse_references(read_file(path), path);
}

VoteTable parse_votes(const std::string& content, const std::string& source_name) {
  VoteTable table;
  for_each_record(content, source_name, [&](const nlohmann::json& record, std::size_t line) {
    required(record, "item_id", source_name, line);
    const auto system = required(record, "system", source_name, line);
    const auto vote = required(record, "vote", source_name, line);
    auto& counts = table[system];
    if (vote == "best") {
      ++counts.best;
    } else if (vote == "worst") {
      ++counts.worst;
    } else if (vote != "none") {
      throw FormatError(source_name, line, "vote must be best, worst or none");
    }
    ++counts.total;
  });
  return table;
}

VoteTable load_votes(const std::string& path) { return parse_votes(read_file(path), path); }

double bws_score(const VoteCounts& counts) {
  if (counts.total == 0) throw InvalidArgument("bws_score requires total_votes > 0");
  if (counts.best + counts.worst > counts.total) {
    throw InvalidArgument("best + worst votes exceed total");
  }
  return 100.0 * (static_cast<double>(counts.best) - static_cast<double>(counts.worst)) /
         static_cast<double>(counts.total);
}

std::map<std::string, double> bws_scores(const VoteTable& table) {
  std::map<std::string, double> out;
  for (const auto& [system, counts] : table) out[system] = bws_score(counts);
  return out;
}

std::map<std::string, double> label_proportions(const std::vector<std::string>& labels) {
  std::map<std::string, double> out;
  if (labels.empty()) return out;
  for (const auto& label : labels) out[label] += 1.0;
  for (auto& [label, count] : out) count = 100.0 * count / static_cast<double>(labels.size());
  return out;
}

std::string format_rouge_table(const std::vector<ReportRow>& rows) {
  std::size_t width = 6;
  for (const auto& row : rows) width = std::max(width, row.method.size());
  std::string out = pad_right("Method", width) + "  " + pad_left("R1", 6) + "  " +
                    pad_left("R2", 6) + "  " + pad_left("RL", 6) + "\n";
  for (const auto& row : rows) {
    out += pad_right(row.method, width) + "  " + pad_left(fixed2(row.report.rouge1), 6) + "  " +
           pad_left(fixed2(row.report.rouge2), 6) + "  " +
           pad_left(fixed2(row.report.rougeL), 6) + "\n";
  }
  return out;
}

std::string format_bws_table(const VoteTable& table) {
  std::size_t width = 6;
  for (const auto& [system, counts] : table) width = std::max(width, system.size());
  std::string out = pad_right("System", width) + "  " + pad_left("Best", 5) + "  " +
                    pad_left("Worst", 5) + "  " + pad_left("Total", 5) + "  " +
                    pad_left("Score", 7) + "\n";
  for (const auto& [system, counts] : table) {
    out += pad_right(system, width) + "  " + pad_left(std::to_string(counts.best), 5) + "  " +
           pad_left(std::to_string(counts.worst), 5) + "  " +
           pad_left(std::to_string(counts.total), 5) + "  " +
           pad_left(fixed2(bws_score(counts)), 7) + "\n";
  }
  return out;
}

SweepGrid sensitivity_sweep(const Corpus& corpus, const Extractions& extractions,
                            const EmbeddingStore& store, const GeneratorModel& model,
                            const std::map<std::string, std::string>& references,
                            const SweepSpec& spec) {
  if (spec.k_values.empty() || spec.theta_values.empty() || spec.max_len_values.empty()) {
    throw InvalidArgument("sweep axes must be non-empty");
  }
  std::vector<std::string> entities;
  for (const auto& entity : corpus.entity_ids()) {
    if (references.contains(entity)) entities.push_back(entity);
  }
  if (entities.empty()) throw InvalidArgument("no corpus entity has a reference");
  std::vector<std::vector<OpinionTriple>> opinions;
  for (const auto& entity : entities) {
    opinions.push_back(entity_opinion_set(extractions, corpus, entity));
  }

  SweepGrid grid;
  std::vector<double> r1, r2, rl;
  for (std::size_t k : spec.k_values) {
    for (double theta : spec.theta_values) {
      for (std::size_t max_len : spec.max_len_values) {
        SelectionConfig selection = spec.selection;
        selection.k = k;
        selection.theta = theta;
        DecodeConfig decode = spec.decode;
        decode.max_len = max_len;
        std::map<std::string, std::string> summaries;
        for (std::size_t e = 0; e < entities.size(); ++e) {
          const auto result = digest_opinions(opinions[e], store, model, selection, decode);
          summaries[entities[e]] = result.summary.value_or("");
        }
        SweepCell cell{k, theta, max_len, evaluate_corpus(summaries, references)};
        r1.push_back(cell.report.rouge1);
        r2.push_back(cell.report.rouge2);
        rl.push_back(cell.report.rougeL);
        grid.cells.push_back(std::move(cell));
      }
    }
  }
  grid.rouge1 = summarize_metric(r1);
  grid.rouge2 = summarize_metric(r2);
  grid.rougeL = summarize_metric(rl);
  return grid;
}

std::string format_sweep_table(const SweepGrid& grid) {
  std::string out = pad_left("k", 4) + "  " + pad_left("theta", 5) + "  " +
                    pad_left("L", 4) + "  " + pad_left("R1", 6) + "  " + pad_left("R2", 6) +
                    "  " + pad_left("RL", 6) + "\n";
  for (const auto& cell : grid.cells) {
    out += pad_left(std::to_string(cell.k), 4) + "  " + pad_left(fixed2(cell.theta), 5) + "  " +
           pad_left(std::to_string(cell.max_len), 4) + "  " +
           pad_left(fixed2(cell.report.rouge1), 6) + "  " +
           pad_left(fixed2(cell.report.rouge2), 6) + "  " +
           pad_left(fixed2(cell.report.rougeL), 6) + "\n";
  }
  auto stat = [](const MetricSummary& m) { return fixed2(m.mean) + " (" + fixed2(m.stddev) + ")"; };
  out += "mean (std): R1 " + stat(grid.rouge1) + "  R2 " + stat(grid.rouge2) + "  RL " +
         stat(grid.rougeL) + "\n";
  return out;
}

nlohmann::json to_json(const RougeScore& score) {
  return {{"precision", score.precision}, {"recall", score.recall}, {"f1", score.f1}};
}

nlohmann::json to_json(const CorpusReport& report) {
  nlohmann::json per_entity = nlohmann::json::array();
  for (const auto& e : report.per_entity) {
    per_entity.push_back({{"entity_id", e.entity_id},
                          {"rouge1", to_json(e.rouge1)},
                          {"rouge2", to_json(e.rouge2)},
                          {"rougeL", to_json(e.rougeL)}});
  }
  return {{"rouge1", report.rouge1},
          {"rouge2", report.rouge2},
          {"rougeL", report.rougeL},
          {"per_entity", std::move(per_entity)},
          {"missing_reference", report.missing_reference},
          {"missing_summary", report.missing_summary}};
}

nlohmann::json to_json(const SweepGrid& grid) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : grid.cells) {
    cells.push_back({{"k", cell.k},
                     {"theta", cell.theta},
                     {"max_len", cell.max_len},
                     {"rouge1", cell.report.rouge1},
                     {"rouge2", cell.report.rouge2},
                     {"rougeL", cell.report.rougeL}});
  }
  auto stat = [](const MetricSummary& m) {
    return nlohmann::json{{"mean", m.mean}, {"std", m.stddev}};
  };
  return {{"cells", std::move(cells)},
          {"rouge1", stat(grid.rouge1)},
          {"rouge2", stat(grid.rouge2)},
          {"rougeL", stat(grid.rougeL)}};
}

}  // namespace osum
