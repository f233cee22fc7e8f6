// Copyright 2026 The ArTS Authors.
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

#include "arts/harness/experiment.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "arts/diagnostics.hpp"
#include "arts/errors.hpp"
#include "arts/harness/report.hpp"
#include "arts/hashing.hpp"
#include "arts/model/checkpoint.hpp"
#include "arts/model/transformer.hpp"
#include "arts/model/vocab.hpp"
#include "arts/tabular.hpp"

namespace arts::harness {
namespace {

std::string_view repair_name(codec::RepairRule rule) {
  return rule == codec::RepairRule::kRangeMin ? "range_min" : "drop";
}

codec::RepairRule parse_repair(std::string_view text) {
  if (text == "range_min") return codec::RepairRule::kRangeMin;
  if (text == "drop") return codec::RepairRule::kDrop;
  throw ConfigError("unknown repair rule '" + std::string(text) +
                    "' (expected range_min or drop)");
}

nlohmann::json canonical(const ExperimentConfig& config) {
  nlohmann::json j = config;
  j.erase("output_dir");
  return j;
}

// Mutable manifest; every update rewrites the whole file.
class Manifest {
 public:
  Manifest(std::filesystem::path path, nlohmann::json base)
      : path_(std::move(path)), doc_(std::move(base)) {}

  void set(const std::string& key, nlohmann::json value) {
    doc_[key] = std::move(value);
    flush();
  }
  nlohmann::json& doc() { return doc_; }
  void flush() const { write_file(path_, doc_.dump(2) + "\n"); }

 private:
  std::filesystem::path path_;
  nlohmann::json doc_;
};

std::vector<const corpus::Essay*> resolve(const corpus::Corpus& corpus,
                                          const std::vector<std::string>& ids,
                                          const ExperimentConfig& config) {
  std::vector<const corpus::Essay*> essays;
  for (const auto& id : ids) {
    const auto* essay = corpus.find(id);
    if (!essay) throw DataError("split references unknown essay_id " + id);
    if (participates(*essay, config)) essays.push_back(essay);
  }
  return essays;
}

std::vector<PredictionRecord> predict(const model::Seq2SeqModel& net, const model::Vocab& vocab,
                                      std::span<const corpus::Essay* const> essays,
                                      const ExperimentConfig& config,
                                      std::span<const TraitName> universe, int fold) {
  std::vector<PredictionRecord> records;
  records.reserve(essays.size());
  for (const auto* essay : essays) {
    PredictionRecord r;
    r.essay_id = essay->essay_id;
    r.prompt_id = essay->prompt_id;
    r.fold = fold;
    const auto ids = net.generate_greedy(encode_essay(*essay, vocab, config),
                                         config.model.max_tgt_len);
    r.raw_text = vocab.decode(ids);
    r.parsed = codec::parse_prediction(r.raw_text, universe, essay->prompt_id);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace

void ExperimentConfig::validate() const {
  model.validate();
  train.validate();
  if (dataset == Family::kSynthetic) synthetic.validate();
  if (dataset != Family::kSynthetic && corpus_path.empty()) {
    throw ConfigError("corpus_path is required for the " + std::string(family_name(dataset)) +
                      " dataset");
  }
  if (folds.empty()) throw ConfigError("fold list is empty");
  std::set<int> seen;
  for (int f : folds) {
    if (f < 0 || f >= corpus::kFoldCount) {
      throw ConfigError("fold " + std::to_string(f) + " is outside 0-" +
                        std::to_string(corpus::kFoldCount - 1));
    }
    if (!seen.insert(f).second) throw ConfigError("fold " + std::to_string(f) + " listed twice");
  }
  if (min_freq < 1) throw ConfigError("min_freq must be at least 1");
  if (dataset == Family::kFeedback && prefix == codec::PrefixPolicy::kWithPrompt) {
    throw PolicyError("Feedback Prize essays have no prompt number; use the plain prefix");
  }
}

void ExperimentConfig::set_seed(std::uint64_t seed) {
  split_seed = seed;
  model.seed = seed;
  train.seed = seed;
  synthetic.seed = seed;
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{{"name", c.name},
                     {"dataset", family_name(c.dataset)},
                     {"corpus_path", c.corpus_path},
                     {"split_dir", c.split_dir},
                     {"split_seed", c.split_seed},
                     {"folds", c.folds},
                     {"order", c.order.name()},
                     {"prefix", codec::prefix_policy_name(c.prefix)},
                     {"repair", repair_name(c.repair)},
                     {"min_freq", c.min_freq},
                     {"model", c.model},
                     {"train", c.train},
                     {"output_dir", c.output_dir}};
  if (c.dataset == Family::kSynthetic) j["synthetic"] = c.synthetic;
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  const ExperimentConfig d;
  try {
    c.name = j.value("name", d.name);
    const auto family = family_from_string(j.value("dataset", std::string(family_name(d.dataset))));
    if (!family) throw ConfigError("unknown dataset '" + j.value("dataset", std::string()) + "'");
    c.dataset = *family;
    c.corpus_path = j.value("corpus_path", d.corpus_path);
    c.synthetic = j.contains("synthetic") ? j.at("synthetic").get<SyntheticSpec>() : d.synthetic;
    c.split_dir = j.value("split_dir", d.split_dir);
    c.split_seed = j.value("split_seed", d.split_seed);
    c.folds = j.value("folds", d.folds);
    c.order = j.contains("order") ? codec::OrderPolicy::parse(j.at("order").get<std::string>())
                                  : d.order;
    c.prefix = j.contains("prefix") ? codec::parse_prefix_policy(j.at("prefix").get<std::string>())
                                    : d.prefix;
    c.repair = j.contains("repair") ? parse_repair(j.at("repair").get<std::string>()) : d.repair;
    c.min_freq = j.value("min_freq", d.min_freq);
    c.model = j.contains("model") ? j.at("model").get<model::ModelConfig>() : d.model;
    c.train = j.contains("train") ? j.at("train").get<model::TrainConfig>() : d.train;
    c.output_dir = j.value("output_dir", d.output_dir);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_file(path)).get<ExperimentConfig>();
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string config_hash(const ExperimentConfig& config) {
  return sha256_hex(canonical(config).dump());
}

std::filesystem::path run_directory(const ExperimentConfig& config) {
  return std::filesystem::path(config.output_dir) / ("run-" + config_hash(config).substr(0, 12));
}

corpus::Corpus load_dataset(const ExperimentConfig& config) {
  if (config.dataset == Family::kSynthetic) return make_synthetic(config.synthetic);
  auto loaded = corpus::load(config.corpus_path);
  if (loaded.family != config.dataset) {
    throw DataError("corpus " + config.corpus_path + " is " +
                    std::string(family_name(loaded.family)) + ", but the config asks for " +
                    std::string(family_name(config.dataset)));
  }
  return loaded;
}

std::vector<TraitName> evaluated_traits(const ExperimentConfig& config,
                                        std::span<const TraitName> universe) {
  if (config.order.kind() == codec::OrderPolicy::Kind::kSingle) return {config.order.trait()};
  return {universe.begin(), universe.end()};
}

bool participates(const corpus::Essay& essay, const ExperimentConfig& config) {
  if (config.order.kind() != codec::OrderPolicy::Kind::kSingle) return true;
  return essay.gold.labeled(config.order.trait());
}

std::vector<int> encode_essay(const corpus::Essay& essay, const model::Vocab& vocab,
                              const ExperimentConfig& config, bool* truncated) {
  auto encoded = vocab.encode_source(codec::build_input(essay, config.prefix),
                                     config.model.max_src_len);
  if (truncated) *truncated = encoded.truncated;
  return std::move(encoded.ids);
}

ExperimentResult run_experiment(const ExperimentConfig& config, const corpus::Corpus& corpus) {
  config.validate();
  if (corpus.family != config.dataset) {
    throw DataError("corpus family " + std::string(family_name(corpus.family)) +
                    " does not match the configured dataset " +
                    std::string(family_name(config.dataset)));
  }
  (void)config.order.sequence(corpus.universe);  // PolicyError for a foreign Single trait

  ExperimentResult result;
  const auto note = [&result](std::string message) {
    warn(message);
    result.warnings.push_back(std::move(message));
  };
  result.run_dir = run_directory(config);
  result.config_hash = config_hash(config);
  result.corpus_hash = sha256_hex(corpus::serialize(corpus));
  // The directory name is the config hash, so anything already there is a
  // stale copy of this same run.
  std::filesystem::remove_all(result.run_dir);
  std::filesystem::create_directories(result.run_dir);

  Manifest manifest(result.run_dir / "manifest.json",
                    {{"status", "incomplete"},
                     {"name", config.name},
                     {"config_hash", result.config_hash},
                     {"corpus_hash", result.corpus_hash}});
  manifest.flush();
  write_file(result.run_dir / "config.json", canonical(config).dump(2) + "\n");
  if (config.dataset == Family::kSynthetic) {
    write_file(result.run_dir / "synthetic.txt", describe(config.synthetic) + "\n");
  }

  const auto universe = corpus.universe;
  const auto evaluated = evaluated_traits(config, universe);
  auto columns = display_columns(corpus.family, universe);
  if (config.order.kind() == codec::OrderPolicy::Kind::kSingle) columns = evaluated;
  const std::string arrow = order_arrow(columns, config.order.sequence(universe));

  if (config.order.kind() == codec::OrderPolicy::Kind::kSingle) {
    std::set<PromptId> rating;
    for (const auto& [prompt, spec] : corpus.specs) {
      if (spec.has(config.order.trait())) rating.insert(prompt);
    }
    if (rating.size() < corpus.specs.size() && !rating.empty()) {
      std::string which;
      for (PromptId p : rating) which += (which.empty() ? "" : ", ") + prompt_label(p);
      note("only prompt(s) " + which + " rate " + std::string(surface(config.order.trait())) +
           "; other essays are skipped");
    }
  }

  const auto folds = config.split_dir.empty() ? corpus::make_folds(corpus, config.split_seed)
                                              : corpus::read_folds(corpus, config.split_dir);
  nlohmann::json checkpoints = nlohmann::json::object();
  nlohmann::json fold_notes = nlohmann::json::array();

  try {
    for (int k : config.folds) {
      const auto& assignment = folds.at(static_cast<std::size_t>(k));
      const auto fold_dir = result.run_dir / ("fold_" + std::to_string(k));
      FoldSummary summary;
      summary.fold = k;
      const auto train_essays = resolve(corpus, assignment.train, config);
      const auto dev_essays = resolve(corpus, assignment.dev, config);
      const auto test_essays = resolve(corpus, assignment.test, config);
      summary.train = train_essays.size();
      summary.dev = dev_essays.size();
      summary.test = test_essays.size();
      if (train_essays.empty() || dev_essays.empty() || test_essays.empty()) {
        summary.skipped = true;
        note("fold " + std::to_string(k) +
             " has no participating train, dev or test essays; skipped");
        result.folds.push_back(summary);
        continue;
      }
      progress("fold " + std::to_string(k) + ": " + std::to_string(summary.train) + " train, " +
               std::to_string(summary.dev) + " dev, " + std::to_string(summary.test) + " test");

      std::vector<std::string> texts;
      for (const auto* e : train_essays) texts.push_back(codec::build_input(*e, config.prefix));
      const auto vocab = model::Vocab::build(texts, config.min_freq, corpus.global_range());

      const auto to_examples = [&](const std::vector<const corpus::Essay*>& essays) {
        std::vector<model::Example> examples;
        for (const auto* e : essays) {
          bool truncated = false;
          model::Example ex;
          ex.src = encode_essay(*e, vocab, config, &truncated);
          summary.truncated_sources += truncated;
          ex.tgt = vocab.encode_target(codec::target_pairs(e->gold, config.order, universe));
          if (static_cast<int>(ex.tgt.size()) > config.model.max_tgt_len) {
            throw ConfigError("max_tgt_len " + std::to_string(config.model.max_tgt_len) +
                              " is shorter than the " + std::to_string(ex.tgt.size()) +
                              "-token target of essay " + e->essay_id);
          }
          examples.push_back(std::move(ex));
        }
        return examples;
      };
      const auto train_set = to_examples(train_essays);
      const auto dev_set = to_examples(dev_essays);
      if (summary.truncated_sources > 0) {
        note("fold " + std::to_string(k) + ": " + std::to_string(summary.truncated_sources) +
             " source(s) truncated to max_src_len");
      }

      auto model_config = config.model;
      model_config.seed = config.model.seed + static_cast<std::uint64_t>(k);
      auto train_config = config.train;
      train_config.seed = config.train.seed + static_cast<std::uint64_t>(k);
      model::Seq2SeqModel net(model_config, vocab.size());

      const model::DevScorer scorer = [&](const model::Seq2SeqModel& candidate) {
        const auto records = predict(candidate, vocab, dev_essays, config, universe, k);
        const auto eval =
            evaluate_predictions(records, corpus, columns, evaluated, config.repair);
        double sum = 0;
        std::size_t n = 0;
        for (const auto& cell : eval.report.cells) {
          if (cell.value) {
            sum += *cell.value;
            ++n;
          }
        }
        return n == 0 ? -std::numeric_limits<double>::infinity() : sum / n;
      };
      std::string log_text;
      const model::LogSink sink = [&](const model::TrainLogRecord& record) {
        log_text += model::to_json(record).dump() + "\n";
        progress("fold " + std::to_string(k) + " step " + std::to_string(record.step) +
                 " train " + std::to_string(record.train_loss) + " dev " +
                 std::to_string(record.dev_loss));
      };
      model::TrainResult trained;
      try {
        trained = model::train(net, train_set, dev_set, train_config, scorer, sink);
      } catch (...) {
        write_file(fold_dir / "train_log.jsonl", log_text);
        throw;
      }
      write_file(fold_dir / "train_log.jsonl", log_text);
      summary.steps = trained.steps;
      summary.selected_step = trained.selected_step;
      summary.selected_dev_loss = trained.selected_dev_loss;
      summary.checkpoint_hash = model::save_checkpoint(fold_dir / "model.ckpt", net, vocab);
      checkpoints["fold_" + std::to_string(k)] = summary.checkpoint_hash;
      manifest.set("checkpoints", checkpoints);

      auto records = predict(net, vocab, test_essays, config, universe, k);
      result.predictions.insert(result.predictions.end(), std::make_move_iterator(records.begin()),
                                std::make_move_iterator(records.end()));
      result.folds.push_back(summary);
      fold_notes.push_back({{"fold", k},
                            {"train", summary.train},
                            {"dev", summary.dev},
                            {"test", summary.test},
                            {"steps", summary.steps},
                            {"selected_step", summary.selected_step},
                            {"truncated_sources", summary.truncated_sources}});
      manifest.set("folds", fold_notes);
      write_file(result.run_dir / "predictions.jsonl", predictions_jsonl(result.predictions));
    }

    write_file(result.run_dir / "predictions.jsonl", predictions_jsonl(result.predictions));
    auto eval = evaluate_predictions(result.predictions, corpus, columns, evaluated, config.repair);
    result.report = std::move(eval.report);
    result.repaired_pairs = eval.repaired;
    for (const auto& w : eval.warnings) note(w);
    if (result.report.empty()) {
      std::string traits;
      for (auto t : evaluated) traits += (traits.empty() ? "" : ", ") + std::string(surface(t));
      note("empty report: no test essay carries a gold label for " + traits);
    }
    result.out_of_range = out_of_range_analysis(result.predictions, corpus.specs);

    const auto report_dir = result.run_dir / "report";
    EmitOptions options{config.name, arrow};
    emit_report(result.report, ReportFormat::kCsv, report_dir, options);
    emit_report(result.report, ReportFormat::kText, report_dir, options);
    write_file(report_dir / "out_of_range.csv",
               out_of_range_csv(result.out_of_range, corpus.score_scale));
    write_file(report_dir / "out_of_range.txt",
               out_of_range_text(result.out_of_range, corpus.score_scale));

    nlohmann::json artifacts = nlohmann::json::object();
    for (const auto& entry : std::filesystem::recursive_directory_iterator(result.run_dir)) {
      if (!entry.is_regular_file() || entry.path().filename() == "manifest.json") continue;
      artifacts[std::filesystem::relative(entry.path(), result.run_dir).generic_string()] =
          sha256_file(entry.path());
    }
    manifest.doc()["artifacts"] = artifacts;
    manifest.doc()["warnings"] = result.warnings;
    manifest.doc()["repaired_pairs"] = result.repaired_pairs;
    manifest.set("status", "complete");
  } catch (const std::exception& e) {
    manifest.doc()["error"] = e.what();
    manifest.set("status", "failed");
    throw;
  }
  return result;
}

}  // namespace arts::harness
