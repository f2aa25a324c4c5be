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

#include "osum/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <map>
#include <optional>

#include "osum/checkpoint.hpp"
#include "osum/common.hpp"
#include "osum/evaluation.hpp"
#include "osum/pipeline.hpp"
#include "osum/service.hpp"
#include "osum/trainer.hpp"

namespace osum {
namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::string data_dir;
  std::string config;
  std::uint64_t seed = 0;
  std::string domain = "hotel";
  std::string reviews, opinions, embeddings, model, lexicon;
};

// Selection / decoding flags shared by summarize, evaluate, sweep and serve.
struct PipelineOptions {
  std::size_t k = 15;
  double theta = 0.8;
  std::vector<std::string> aspects;
  std::string polarity;
  std::string filter_stage = "before_merge";
  std::size_t beam = 5;
  std::size_t max_len = 60;
  std::size_t budget = 60;
};

void add_pipeline_options(CLI::App* cmd, PipelineOptions& o, bool with_filters) {
  cmd->add_option("--k", o.k, "Number of selected opinions")->capture_default_str();
  cmd->add_option("--theta", o.theta, "Merging threshold")->capture_default_str();
  if (with_filters) {
    cmd->add_option("--aspect", o.aspects, "Keep only these aspect categories");
    cmd->add_option("--polarity", o.polarity, "Keep only this polarity")
        ->check(CLI::IsMember({"positive", "negative", "neutral"}));
    cmd->add_option("--filter-stage", o.filter_stage, "before_merge or after_ranking")
        ->check(CLI::IsMember({"before_merge", "after_ranking"}))
        ->capture_default_str();
  }
  cmd->add_option("--beam", o.beam, "Beam size")->capture_default_str();
  cmd->add_option("--max-len", o.max_len, "Maximum generated tokens")->capture_default_str();
  cmd->add_option("--budget", o.budget, "LexRank token budget")->capture_default_str();
}

SummarizeOverrides make_overrides(const PipelineOptions& o, std::uint64_t seed, Method method) {
  SummarizeOverrides overrides;
  overrides.method = method;
  overrides.k = o.k;
  overrides.theta = o.theta;
  overrides.seed = seed;
  if (!o.aspects.empty()) overrides.aspects = std::set<std::string>(o.aspects.begin(), o.aspects.end());
  if (!o.polarity.empty()) overrides.polarity = parse_polarity(o.polarity);
  overrides.filter_stage =
      o.filter_stage == "after_ranking" ? FilterStage::kAfterRanking : FilterStage::kBeforeMerge;
  overrides.beam_size = o.beam;
  overrides.max_len = o.max_len;
  overrides.budget_tokens = o.budget;
  return overrides;
}

Method require_method(const std::string& name) {
  const auto method = parse_method(name);
  if (!method) throw InvalidArgument("unknown method '" + name + "'");
  return *method;
}

std::string in_data_dir(const GlobalOptions& g, const std::string& name) {
  return (fs::path(g.data_dir) / name).string();
}

std::string or_default(const std::string& value, const GlobalOptions& g, const std::string& name) {
  return value.empty() ? in_data_dir(g, name) : value;
}

// Optional inputs fall back to the data-directory file only when it exists.
std::string or_existing(const std::string& value, const GlobalOptions& g, const std::string& name) {
  if (!value.empty()) return value;
  const auto path = in_data_dir(g, name);
  return fs::exists(path) ? path : std::string();
}

Corpus load_corpus(const GlobalOptions& g) {
  return ingest_reviews(or_default(g.reviews, g, "reviews.jsonl"), g.domain).corpus;
}

Lexicons load_lexicon_for(const GlobalOptions& g) {
  const auto path = or_existing(g.lexicon, g, "lexicon.json");
  return path.empty() ? default_lexicons(g.domain) : load_lexicons(path);
}

Extractions load_extractions(const GlobalOptions& g, const Corpus& corpus) {
  const auto path = or_existing(g.opinions, g, "opinions.jsonl");
  return path.empty() ? extract_corpus(corpus, load_lexicon_for(g)) : load_pretagged(path, corpus);
}

PipelineBundle load_for(const GlobalOptions& g, bool need_model) {
  BundlePaths paths;
  paths.domain = g.domain;
  paths.reviews = or_default(g.reviews, g, "reviews.jsonl");
  paths.opinions = or_existing(g.opinions, g, "opinions.jsonl");
  paths.lexicon = or_existing(g.lexicon, g, "lexicon.json");
  if (need_model) {
    paths.embeddings = or_default(g.embeddings, g, "embeddings.txt");
    paths.model = or_default(g.model, g, "model.bin");
  }
  return load_bundle(paths);
}

std::string config_value(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  return value.dump();
}

// Fills options the command line left unset from a config object.
void apply_config(CLI::App* app, const nlohmann::json& config) {
  for (const auto& [key, value] : config.items()) {
    if (value.is_object()) {
      CLI::App* sub = nullptr;
      try {
        sub = app->get_subcommand(key);
      } catch (const CLI::OptionNotFound&) {
        throw InvalidArgument("config: unknown section '" + key + "'");
      }
      if (sub->parsed()) apply_config(sub, value);
      continue;
    }
    CLI::Option* opt = app->get_option_no_throw("--" + key);
    if (opt == nullptr) throw InvalidArgument("config: unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    if (value.is_array()) {
      for (const auto& item : value) opt->add_result(config_value(item));
    } else {
      opt->add_result(config_value(value));
    }
    opt->run_callback();
  }
}

void write_or_print(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Opinion selection and abstractive summarization of entity reviews", "osum"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--data-dir", g.data_dir, "Data directory (default: $OSUM_DATA_DIR or .)");
  app.add_option("--config", g.config, "JSON settings file; flags take precedence");
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--domain", g.domain, "Domain label and built-in lexicon")->capture_default_str();
  app.add_option("--reviews", g.reviews, "Reviews JSONL (default: <data>/reviews.jsonl)");
  app.add_option("--opinions", g.opinions, "Pre-tagged opinions JSONL");
  app.add_option("--embeddings", g.embeddings, "Word vectors (default: <data>/embeddings.txt)");
  app.add_option("--model", g.model, "Generator checkpoint (default: <data>/model.bin)");
  app.add_option("--lexicon", g.lexicon, "Lexicon JSON");

  std::string out_path;

  auto* ingest = app.add_subcommand("ingest", "Load and validate a review file");
  ingest->add_option("--out", out_path, "Write normalized reviews here");

  auto* extract = app.add_subcommand("extract", "Extract opinions with the lexicon rules");
  extract->add_option("--out", out_path, "Output JSONL (default: stdout)");

  TrainConfig train_config;
  ModelDims dims;
  std::size_t min_count = 1;
  std::string report_path;
  auto* train_cmd = app.add_subcommand("train", "Train the generator by review reconstruction");
  train_cmd->add_option("--out", out_path, "Checkpoint path (default: <data>/model.bin)");
  train_cmd->add_option("--report", report_path, "Write the per-epoch report as JSON");
  train_cmd->add_option("--epochs", train_config.epochs)->capture_default_str();
  train_cmd->add_option("--batch-size", train_config.batch_size)->capture_default_str();
  train_cmd->add_option("--lr", train_config.learning_rate)->capture_default_str();
  train_cmd->add_option("--momentum", train_config.momentum)->capture_default_str();
  train_cmd->add_option("--decay", train_config.decay)->capture_default_str();
  train_cmd->add_option("--clip", train_config.clip_norm)->capture_default_str();
  train_cmd->add_option("--layers", dims.layers)->capture_default_str();
  train_cmd->add_option("--heads", dims.heads)->capture_default_str();
  train_cmd->add_option("--d-model", dims.d_model)->capture_default_str();
  train_cmd->add_option("--d-ff", dims.d_ff)->capture_default_str();
  train_cmd->add_option("--dropout", dims.dropout)->capture_default_str();
  train_cmd->add_option("--min-count", min_count)->capture_default_str();

  PipelineOptions p;
  std::string entity;
  std::string method_name = "digest";
  bool as_json = false;
  bool timing = false;
  auto* summarize = app.add_subcommand("summarize", "Summarize one entity");
  summarize->add_option("--entity", entity, "Entity id (required)");
  summarize->add_option("--method", method_name, "digest, lexrank, best_review, worst_review")
      ->capture_default_str();
  summarize->add_flag("--json", as_json, "Print the full structured result");
  summarize->add_flag("--timing", timing, "Include timing in --json output");
  add_pipeline_options(summarize, p, true);

  std::vector<std::string> methods;
  std::string refs_path, votes_path, labels_path;
  auto* evaluate = app.add_subcommand("evaluate", "Score summaries against references");
  evaluate->add_option("--method", methods, "Methods to score (default: digest)");
  evaluate->add_option("--refs", refs_path, "References JSONL (default: <data>/refs.jsonl)");
  evaluate->add_option("--votes", votes_path, "Best-Worst votes JSONL");
  evaluate->add_option("--labels", labels_path, "Annotation labels JSONL ({\"label\": ...})");
  evaluate->add_option("--out", out_path, "Write the structured report as JSON");
  add_pipeline_options(evaluate, p, true);

  std::vector<std::size_t> k_values{15};
  std::vector<double> theta_values{0.8};
  std::vector<std::size_t> max_len_values{60};
  auto* sweep = app.add_subcommand("sweep", "Grid over k, theta and max_len");
  sweep->add_option("--refs", refs_path, "References JSONL (default: <data>/refs.jsonl)");
  sweep->add_option("--k-values", k_values)->delimiter(',');
  sweep->add_option("--theta-values", theta_values)->delimiter(',');
  sweep->add_option("--max-len-values", max_len_values)->delimiter(',');
  sweep->add_option("--out", out_path, "Write the grid as JSON");
  add_pipeline_options(sweep, p, false);

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  add_pipeline_options(serve, p, false);

  std::vector<std::string> argv_copy(args.rbegin(), args.rend());
  try {
    app.parse(argv_copy);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (!g.config.empty()) {
      nlohmann::json config;
      try {
        config = nlohmann::json::parse(read_file(g.config));
      } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(g.config, 0, std::string("invalid JSON: ") + e.what());
      }
      if (!config.is_object()) throw FormatError(g.config, 0, "config must be a JSON object");
      try {
        apply_config(&app, config);
      } catch (const CLI::ParseError& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
      }
    }
    if (summarize->parsed() && entity.empty()) {
      err << "error: --entity is required\n\n" << summarize->help();
      return 2;
    }
    if (g.data_dir.empty()) {
      const char* env = std::getenv(kDataDirEnv);
      g.data_dir = env != nullptr ? env : ".";
    }

    if (ingest->parsed()) {
      const auto path = or_default(g.reviews, g, "reviews.jsonl");
      const auto result = ingest_reviews(path, g.domain);
      out << "records " << result.records_read << ", entities " << result.corpus.entity_count()
          << ", reviews " << result.corpus.review_count() << "\n";
      if (!out_path.empty()) write_file(out_path, format_reviews(result.corpus));
      return 0;
    }

    if (extract->parsed()) {
      const Corpus corpus = load_corpus(g);
      const auto extractions = extract_corpus(corpus, load_lexicon_for(g));
      write_or_print(out_path, format_pretagged(extractions, corpus), out);
      return 0;
    }

    if (train_cmd->parsed()) {
      const Corpus corpus = load_corpus(g);
      const auto extractions = load_extractions(g, corpus);
      const auto vocab = build_generator_vocab(corpus, extractions, min_count);
      const auto data = make_training_pairs(corpus, extractions, vocab);
      train_config.seed = g.seed;
      out << "vocabulary " << vocab.size() << ", pairs " << data.pairs.size() << ", skipped "
          << data.skipped_empty << "\n";
      auto trained = train(data.pairs, vocab, dims, train_config, [&](const EpochStats& s) {
        out << "epoch " << s.epoch << " lr " << s.learning_rate << " loss " << s.mean_loss
            << "\n";
      });
      save_model(trained.model, or_default(out_path, g, "model.bin"));
      if (!report_path.empty()) {
        nlohmann::json epochs = nlohmann::json::array();
        for (const auto& s : trained.report.epochs) {
          epochs.push_back({{"epoch", s.epoch},
                            {"learning_rate", s.learning_rate},
                            {"mean_loss", s.mean_loss},
                            {"tokens", s.tokens},
                            {"steps", s.steps}});
        }
        write_file(report_path, nlohmann::json{{"epochs", epochs}}.dump(2) + "\n");
      }
      return 0;
    }

    if (summarize->parsed()) {
      const Method method = require_method(method_name);
      const auto bundle = load_for(g, method == Method::kDigest);
      const auto result = run_summarize(bundle, entity, make_overrides(p, g.seed, method));
      if (as_json) {
        out << to_json(result, timing).dump(2) << "\n";
      } else if (result.status == SummaryStatus::kEmptySelection) {
        out << "(no opinions match the filters)\n";
      } else {
        out << result.summary << "\n";
      }
      return 0;
    }

    if (evaluate->parsed()) {
      if (methods.empty()) methods.push_back("digest");
      bool need_model = false;
      for (const auto& m : methods) need_model |= require_method(m) == Method::kDigest;
      const auto bundle = load_for(g, need_model);
      const auto refs = load_references(or_default(refs_path, g, "refs.jsonl"));
      std::vector<ReportRow> rows;
      nlohmann::json report = {{"methods", nlohmann::json::object()}};
      for (const auto& m : methods) {
        const auto overrides = make_overrides(p, g.seed, require_method(m));
        std::map<std::string, std::string> summaries;
        for (const auto& [entity_id, ref] : refs) {
          if (!bundle.corpus.has_entity(entity_id)) continue;
          summaries[entity_id] = run_summarize(bundle, entity_id, overrides).summary;
        }
        rows.push_back({m, evaluate_corpus(summaries, refs)});
        report["methods"][m] = to_json(rows.back().report);
      }
      out << format_rouge_table(rows);
      for (const auto& row : rows) {
        if (!row.report.missing_summary.empty()) {
          out << row.method << ": " << row.report.missing_summary.size()
              << " referenced entities missing from the corpus\n";
        }
      }
      if (!votes_path.empty()) {
        const auto votes = load_votes(votes_path);
        out << "\n" << format_bws_table(votes);
        nlohmann::json bws = nlohmann::json::object();
        for (const auto& [system, score] : bws_scores(votes)) bws[system] = score;
        report["bws"] = bws;
      }
      if (!labels_path.empty()) {
        std::vector<std::string> labels;
        std::size_t line_no = 0;
        for (const auto& line : split_lines(read_file(labels_path))) {
          ++line_no;
          if (is_blank(line)) continue;
          const auto record = nlohmann::json::parse(line, nullptr, false);
          if (!record.is_object() || !record.contains("label") || !record["label"].is_string()) {
            throw FormatError(labels_path, line_no, "expected {\"label\": string}");
          }
          labels.push_back(record["label"].get<std::string>());
        }
        out << "\n";
        nlohmann::json props = nlohmann::json::object();
        for (const auto& [label, pct] : label_proportions(labels)) {
          char buf[64];
          std::snprintf(buf, sizeof(buf), "%-12s %6.2f%%\n", label.c_str(), pct);
          out << buf;
          props[label] = pct;
        }
        report["labels"] = props;
      }
      if (!out_path.empty()) write_file(out_path, report.dump(2) + "\n");
      return 0;
    }

    if (sweep->parsed()) {
      const auto bundle = load_for(g, true);
      const auto refs = load_references(or_default(refs_path, g, "refs.jsonl"));
      SweepSpec spec;
      spec.k_values = k_values;
      spec.theta_values = theta_values;
      spec.max_len_values = max_len_values;
      spec.selection = apply_overrides(bundle.selection, make_overrides(p, g.seed, Method::kDigest));
      spec.decode = apply_overrides(bundle.decode, make_overrides(p, g.seed, Method::kDigest));
      const auto grid = sensitivity_sweep(bundle.corpus, bundle.extractions, bundle.store,
                                          *bundle.model, refs, spec);
      out << format_sweep_table(grid);
      if (!out_path.empty()) write_file(out_path, to_json(grid).dump(2) + "\n");
      return 0;
    }

    if (serve->parsed()) {
      auto bundle = load_for(g, true);
      const auto overrides = make_overrides(p, g.seed, Method::kDigest);
      bundle.selection = apply_overrides(bundle.selection, overrides);
      bundle.decode = apply_overrides(bundle.decode, overrides);
      Service service(bundle);
      const int bound = service.bind(host, port);
      out << "listening on http://" << host << ":" << bound << "\n" << std::flush;
      service.listen();
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace osum
