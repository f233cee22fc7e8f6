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

// Command-line entry point.
//
// Sample usage:
//   arts ingest --asap training_set_rel3.tsv --asap-pp prompt1.tsv ...
//       --ranges data/ranges.json --out corpora/asap
//   arts train --dataset asap --corpus corpora/asap/corpus.jsonl --order forward
//   arts ablate --dataset synthetic --folds 0,1
//   arts evaluate --pred runs/run-x/predictions.jsonl --gold corpora/asap/corpus.jsonl
//   arts analyze --pred runs/run-x/predictions.jsonl --gold corpora/asap/corpus.jsonl
//
// Exit codes: 0 success, 1 data or runtime failure, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "arts/corpus.hpp"
#include "arts/diagnostics.hpp"
#include "arts/errors.hpp"
#include "arts/harness/ablation.hpp"
#include "arts/harness/analysis.hpp"
#include "arts/harness/experiment.hpp"
#include "arts/harness/predictions.hpp"
#include "arts/harness/report.hpp"
#include "arts/harness/synthetic.hpp"
#include "arts/hashing.hpp"
#include "arts/model/checkpoint.hpp"
#include "arts/tabular.hpp"

namespace {

using arts::harness::ExperimentConfig;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Raised while interpreting flags; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool quiet = false;
  bool json = false;
};

struct ExperimentFlags {
  std::string dataset;
  std::string corpus;
  std::string order;
  std::string prefix;
  std::string folds;
  std::string split_dir;
};

std::string output_root(const Globals& g, const std::string& fallback) {
  if (!g.out.empty()) return g.out;
  if (const char* env = std::getenv("ARTS_OUT"); env && *env) return env;
  return fallback;
}

std::vector<int> parse_folds(const std::string& text) {
  std::vector<int> folds;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = arts::trim(text.substr(start, comma - start));
    try {
      std::size_t used = 0;
      folds.push_back(std::stoi(std::string(item), &used));
      if (used != item.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw UsageError("--folds expects a comma-separated list of fold indices, got '" + text +
                       "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return folds;
}

// Config file (if any), then flags, then the global seed and output root.
ExperimentConfig experiment_config(const Globals& g, const ExperimentFlags& f) {
  ExperimentConfig config;
  if (!g.config.empty()) config = arts::harness::load_experiment_config(g.config);
  try {
    if (!f.dataset.empty()) {
      const auto colon = f.dataset.find(':');
      const auto family = arts::family_from_string(f.dataset.substr(0, colon));
      if (!family) {
        throw UsageError("--dataset expects asap, feedback, synthetic or synthetic:<spec>");
      }
      config.dataset = *family;
      if (colon != std::string::npos) {
        if (config.dataset != arts::Family::kSynthetic) {
          throw UsageError("only the synthetic dataset takes a spec file");
        }
        config.synthetic = nlohmann::json::parse(arts::read_file(f.dataset.substr(colon + 1)))
                               .get<arts::harness::SyntheticSpec>();
      }
    }
    if (!f.corpus.empty()) config.corpus_path = f.corpus;
    if (!f.order.empty()) config.order = arts::codec::OrderPolicy::parse(f.order);
    if (!f.prefix.empty()) {
      config.prefix = arts::codec::parse_prefix_policy(f.prefix);
    } else if (config.dataset == arts::Family::kFeedback) {
      config.prefix = arts::codec::PrefixPolicy::kWithoutPrompt;
    }
    if (!f.folds.empty()) config.folds = parse_folds(f.folds);
    if (!f.split_dir.empty()) config.split_dir = f.split_dir;
  } catch (const arts::PolicyError& e) {
    throw UsageError(e.what());
  }
  if (g.seed) config.set_seed(*g.seed);
  config.output_dir = output_root(g, config.output_dir);
  if (config.dataset != arts::Family::kSynthetic && config.corpus_path.empty()) {
    throw UsageError("--corpus is required for the " +
                     std::string(arts::family_name(config.dataset)) + " dataset");
  }
  try {
    config.validate();
  } catch (const arts::PolicyError& e) {
    throw UsageError(e.what());
  }
  return config;
}

// Manifest for commands that do not run an experiment. Written before any
// work with status "incomplete"; an interrupted command leaves it that way.
class CommandManifest {
 public:
  CommandManifest(fs::path dir, std::string command, nlohmann::json inputs)
      : dir_(std::move(dir)) {
    doc_ = {{"command", std::move(command)}, {"inputs", std::move(inputs)},
            {"status", "incomplete"}};
    flush();
  }

  void complete(const std::vector<fs::path>& artifacts) {
    nlohmann::json hashes = nlohmann::json::object();
    for (const auto& path : artifacts) {
      hashes[fs::relative(path, dir_).generic_string()] = arts::sha256_file(path);
    }
    doc_["artifacts"] = hashes;
    doc_["status"] = "complete";
    flush();
  }

 private:
  void flush() const { arts::write_file(dir_ / "manifest.json", doc_.dump(2) + "\n"); }

  fs::path dir_;
  nlohmann::json doc_;
};

std::string summary_line(const arts::metrics::QwkReport& report) {
  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "trait-wise AVG %.3f (±%.3f), prompt-wise AVG %.3f (±%.3f)",
                report.trait_wise.avg, report.trait_wise.sd, report.prompt_wise.avg,
                report.prompt_wise.sd);
  return buffer;
}

nlohmann::json report_json(const arts::metrics::QwkReport& report) {
  nlohmann::json traits = nlohmann::json::object();
  for (const auto& [trait, v] : report.trait_wise.values) traits[std::string(arts::surface(trait))] = v;
  nlohmann::json prompts = nlohmann::json::object();
  for (const auto& [prompt, v] : report.prompt_wise.values) prompts[arts::prompt_label(prompt)] = v;
  return {{"trait_wise", {{"values", traits}, {"avg", report.trait_wise.avg},
                          {"sd", report.trait_wise.sd}}},
          {"prompt_wise", {{"values", prompts}, {"avg", report.prompt_wise.avg},
                           {"sd", report.prompt_wise.sd}}},
          {"cells", report.cells.size()},
          {"undefined_cells", report.undefined_cells}};
}

// Gold corpus, with specs re-derived from a range config when one is given.
arts::corpus::Corpus load_gold(const std::string& path, const std::string& ranges_path) {
  auto gold = arts::corpus::load(path);
  if (!ranges_path.empty() && gold.family != arts::Family::kSynthetic) {
    const auto ranges = arts::corpus::RangeConfig::load(ranges_path);
    for (auto& [prompt, spec] : gold.specs) spec = arts::corpus::prompt_spec(prompt, ranges);
    arts::corpus::validate(gold);
  }
  return gold;
}

int cmd_ingest(const Globals& g, const std::string& asap, const std::vector<std::string>& asap_pp,
               const std::string& feedback, const std::string& ranges_path) {
  if (asap.empty() == feedback.empty()) {
    throw UsageError("ingest needs either --asap (with --asap-pp) or --feedback");
  }
  const fs::path out = output_root(g, "corpora");
  CommandManifest manifest(out, "ingest",
                           {{"asap", asap}, {"asap_pp", asap_pp}, {"feedback", feedback},
                            {"ranges", ranges_path}});
  const auto ranges = arts::corpus::RangeConfig::load(ranges_path);
  arts::corpus::Corpus corpus;
  arts::corpus::LoadReport load_report;
  if (!asap.empty()) {
    std::vector<fs::path> pp(asap_pp.begin(), asap_pp.end());
    corpus = arts::corpus::load_asap_combined(asap, pp, ranges, &load_report);
  } else {
    corpus = arts::corpus::load_feedback_prize(feedback, ranges);
  }
  const auto corpus_path = out / "corpus.jsonl";
  arts::corpus::save(corpus, corpus_path);

  std::map<arts::PromptId, std::size_t> counts;
  for (const auto& e : corpus.essays) ++counts[e.prompt_id];
  nlohmann::json rows = nlohmann::json::array();
  std::string table = "Prompt  Essays  Expected  Traits\n";
  for (const auto& [prompt, spec] : corpus.specs) {
    std::string traits;
    for (auto t : spec.traits) traits += (traits.empty() ? "" : ", ") + std::string(arts::short_label(t));
    char line[256];
    std::snprintf(line, sizeof line, "%-6s  %6zu  %8s  %s\n", arts::prompt_label(prompt).c_str(),
                  counts[prompt],
                  spec.essay_count_expected ? std::to_string(*spec.essay_count_expected).c_str()
                                            : "-",
                  traits.c_str());
    table += line;
    rows.push_back({{"prompt", arts::prompt_label(prompt)},
                    {"essays", counts[prompt]},
                    {"expected", spec.essay_count_expected ? nlohmann::json(*spec.essay_count_expected)
                                                           : nlohmann::json(nullptr)},
                    {"traits", traits}});
  }
  const auto summary_path = out / "ingest_summary.txt";
  arts::write_file(summary_path, table + "Total " + std::to_string(corpus.essays.size()) +
                                     " essays; " + std::to_string(load_report.dropped_rows) +
                                     " dropped\n");
  manifest.complete({corpus_path, summary_path});
  if (g.json) {
    std::cout << nlohmann::json{{"corpus", corpus_path.string()},
                                {"family", arts::family_name(corpus.family)},
                                {"essays", corpus.essays.size()},
                                {"dropped", load_report.dropped_rows},
                                {"prompts", rows}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << table << "Total " << corpus.essays.size() << " essays; "
              << load_report.dropped_rows << " dropped\nCorpus written to " << corpus_path.string()
              << "\n";
  }
  return kExitOk;
}

int cmd_synth(const Globals& g, const std::string& spec_path, int n_essays) {
  arts::harness::SyntheticSpec spec;
  if (!spec_path.empty()) {
    spec = nlohmann::json::parse(arts::read_file(spec_path)).get<arts::harness::SyntheticSpec>();
  }
  if (n_essays > 0) spec.n_essays = n_essays;
  if (g.seed) spec.seed = *g.seed;
  const fs::path out = output_root(g, "corpora/synthetic");
  CommandManifest manifest(out, "synth", {{"spec", spec}});
  const auto corpus = arts::harness::make_synthetic(spec);
  const auto corpus_path = out / "corpus.jsonl";
  const auto description_path = out / "synthetic.txt";
  arts::corpus::save(corpus, corpus_path);
  arts::write_file(description_path, arts::harness::describe(spec) + "\n");
  manifest.complete({corpus_path, description_path});
  if (g.json) {
    std::cout << nlohmann::json{{"corpus", corpus_path.string()},
                                {"essays", corpus.essays.size()},
                                {"rule", arts::harness::describe(spec)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << arts::harness::describe(spec) << "\nCorpus written to " << corpus_path.string()
              << "\n";
  }
  return kExitOk;
}

int cmd_train(const Globals& g, const ExperimentFlags& flags) {
  const auto config = experiment_config(g, flags);
  const auto corpus = arts::harness::load_dataset(config);
  const auto result = arts::harness::run_experiment(config, corpus);
  if (g.json) {
    auto j = report_json(result.report);
    j["run_dir"] = result.run_dir.string();
    j["config_hash"] = result.config_hash;
    j["repaired_pairs"] = result.repaired_pairs;
    j["out_of_range"] = result.out_of_range.total_count();
    j["warnings"] = result.warnings;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << arts::read_file(result.run_dir / "report" / "report.txt") << "\n"
              << summary_line(result.report) << "\n"
              << "Out-of-range predictions: " << result.out_of_range.total_count()
              << "; repaired pairs: " << result.repaired_pairs << "\n"
              << "Run written to " << result.run_dir.string() << "\n";
  }
  return kExitOk;
}

int cmd_predict(const Globals& g, const std::string& checkpoint, const std::string& corpus_path,
                const std::string& prefix, const std::string& ids_path, int fold) {
  const fs::path out = output_root(g, "predictions");
  CommandManifest manifest(out, "predict",
                           {{"checkpoint", checkpoint}, {"corpus", corpus_path},
                            {"prefix", prefix}, {"ids", ids_path}, {"fold", fold}});
  const auto loaded = arts::model::load_checkpoint(checkpoint);
  const auto corpus = arts::corpus::load(corpus_path);
  ExperimentConfig config;
  config.model = loaded.model.config();
  try {
    config.prefix = prefix.empty() ? (corpus.family == arts::Family::kFeedback
                                          ? arts::codec::PrefixPolicy::kWithoutPrompt
                                          : arts::codec::PrefixPolicy::kWithPrompt)
                                   : arts::codec::parse_prefix_policy(prefix);
  } catch (const arts::PolicyError& e) {
    throw UsageError(e.what());
  }
  std::vector<const arts::corpus::Essay*> essays;
  if (ids_path.empty()) {
    for (const auto& e : corpus.essays) essays.push_back(&e);
  } else {
    std::istringstream ids(arts::read_file(ids_path));
    std::string id;
    while (std::getline(ids, id)) {
      const auto trimmed = std::string(arts::trim(id));
      if (trimmed.empty()) continue;
      const auto* essay = corpus.find(trimmed);
      if (!essay) throw arts::DataError("--ids references unknown essay_id " + trimmed);
      essays.push_back(essay);
    }
  }
  std::vector<arts::harness::PredictionRecord> records;
  for (const auto* essay : essays) {
    arts::harness::PredictionRecord r;
    r.essay_id = essay->essay_id;
    r.prompt_id = essay->prompt_id;
    r.fold = fold;
    const auto ids = loaded.model.generate_greedy(
        arts::harness::encode_essay(*essay, loaded.vocab, config), config.model.max_tgt_len);
    r.raw_text = loaded.vocab.decode(ids);
    r.parsed = arts::codec::parse_prediction(r.raw_text, corpus.universe, essay->prompt_id);
    records.push_back(std::move(r));
  }
  const auto path = out / "predictions.jsonl";
  arts::write_file(path, arts::harness::predictions_jsonl(records));
  manifest.complete({path});
  if (g.json) {
    std::cout << nlohmann::json{{"predictions", path.string()}, {"records", records.size()}}.dump(2)
              << "\n";
  } else {
    std::cout << records.size() << " predictions written to " << path.string() << "\n";
  }
  return kExitOk;
}

int cmd_evaluate(const Globals& g, const std::string& pred, const std::string& gold_path,
                 const std::string& ranges, const std::string& trait, const std::string& repair) {
  const fs::path out = output_root(g, "evaluation");
  CommandManifest manifest(out, "evaluate",
                           {{"pred", pred}, {"gold", gold_path}, {"ranges", ranges},
                            {"trait", trait}, {"repair", repair}});
  const auto gold = load_gold(gold_path, ranges);
  std::vector<arts::TraitName> evaluated;
  if (!trait.empty()) {
    auto t = arts::trait_from_string(trait);
    if (!t) throw UsageError("unknown trait '" + trait + "'");
    evaluated.push_back(*t);
  }
  arts::codec::RepairRule rule = arts::codec::RepairRule::kRangeMin;
  if (repair == "drop") {
    rule = arts::codec::RepairRule::kDrop;
  } else if (repair != "range_min") {
    throw UsageError("--repair expects range_min or drop");
  }
  const auto records = arts::harness::read_predictions(pred, gold.universe);
  auto columns = arts::harness::display_columns(gold.family, gold.universe);
  if (!evaluated.empty()) columns = evaluated;
  const auto eval =
      arts::harness::evaluate_predictions(records, gold, columns, evaluated, rule);
  for (const auto& w : eval.warnings) arts::warn(w);
  const std::string arrow = arts::harness::order_arrow(columns, gold.universe);
  auto written = arts::harness::emit_report(eval.report, arts::harness::ReportFormat::kCsv, out,
                                            {"ArTS", arrow});
  const auto text = arts::harness::emit_report(eval.report, arts::harness::ReportFormat::kText,
                                               out, {"ArTS", arrow});
  written.insert(written.end(), text.begin(), text.end());
  manifest.complete(written);
  if (g.json) {
    auto j = report_json(eval.report);
    j["pairs"] = eval.pairs;
    j["repaired_pairs"] = eval.repaired;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << arts::read_file(out / "report.txt") << "\n"
              << summary_line(eval.report) << "\n"
              << eval.pairs << " scored pairs, " << eval.repaired << " repaired\n";
  }
  return kExitOk;
}

int cmd_ablate(const Globals& g, const ExperimentFlags& flags) {
  const auto config = experiment_config(g, flags);
  const auto corpus = arts::harness::load_dataset(config);
  std::string note;
  const auto variants = arts::harness::ablation_variants(corpus, &note);
  if (!note.empty()) std::cerr << "note: " << note << "\n";
  const auto suite = arts::harness::run_ablation_suite(config, corpus, variants);
  std::size_t failed = 0;
  for (const auto& o : suite.outcomes) failed += !o.result;
  const auto report_path = fs::path(config.output_dir) / "ablation" / "report.txt";
  if (g.json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& o : suite.outcomes) {
      rows.push_back({{"variant", o.variant.name},
                      {"run_dir", o.result ? o.result->run_dir.string() : ""},
                      {"error", o.error},
                      {"trait_wise_avg", o.result ? nlohmann::json(o.result->report.trait_wise.avg)
                                                  : nlohmann::json(nullptr)}});
    }
    std::cout << nlohmann::json{{"variants", rows}, {"failed", failed}, {"note", note}}.dump(2)
              << "\n";
  } else {
    std::cout << arts::read_file(report_path);
    if (!note.empty()) std::cout << "\nNote: " << note << "\n";
  }
  return failed == 0 ? kExitOk : kExitFailure;
}

int cmd_analyze(const Globals& g, const std::string& pred, const std::string& gold_path,
                const std::string& ranges) {
  const fs::path out = output_root(g, "analysis");
  CommandManifest manifest(out, "analyze", {{"pred", pred}, {"gold", gold_path}, {"ranges", ranges}});
  const auto gold = load_gold(gold_path, ranges);
  const auto records = arts::harness::read_predictions(pred, gold.universe);
  const auto report = arts::harness::out_of_range_analysis(records, gold.specs);
  const auto csv = out / "out_of_range.csv";
  const auto txt = out / "out_of_range.txt";
  arts::write_file(csv, arts::harness::out_of_range_csv(report, gold.score_scale));
  arts::write_file(txt, arts::harness::out_of_range_text(report, gold.score_scale));
  manifest.complete({csv, txt});
  if (g.json) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : report.entries) {
      entries.push_back({{"prompt", arts::prompt_label(e.prompt)},
                         {"trait", arts::surface(e.trait)},
                         {"count", e.count},
                         {"total", e.total}});
    }
    std::cout << nlohmann::json{{"out_of_range", report.total_count()}, {"entries", entries}}.dump(2)
              << "\n";
  } else {
    std::cout << arts::read_file(txt);
  }
  return kExitOk;
}

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& flags) {
  cmd->add_option("--dataset", flags.dataset, "asap | feedback | synthetic[:<spec.json>]");
  cmd->add_option("--corpus", flags.corpus, "Serialized corpus written by ingest");
  cmd->add_option("--order", flags.order, "forward | reverse | single:<trait>");
  cmd->add_option("--prefix", flags.prefix, "prompt | plain");
  cmd->add_option("--folds", flags.folds, "Comma-separated fold indices, e.g. 0,1,2");
  cmd->add_option("--split-dir", flags.split_dir, "Directory of official split files");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Autoregressive multi-trait essay scoring"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "Experiment config file (JSON)");
  app.add_option("--seed", g.seed, "Seed for splits, initialization, shuffling and synthetic data");
  app.add_option("--out", g.out, "Output directory (default: $ARTS_OUT or a per-command default)");
  app.add_flag("--quiet", g.quiet, "Suppress progress lines");
  app.add_flag("--json", g.json, "Print machine-readable summaries");

  std::string asap, feedback, ranges;
  std::vector<std::string> asap_pp;
  auto* ingest = app.add_subcommand("ingest", "Load ASAP/ASAP++ or Feedback Prize data");
  auto* asap_opt = ingest->add_option("--asap", asap, "ASAP training TSV");
  ingest->add_option("--asap-pp", asap_pp, "ASAP++ trait TSVs (prompts 1-6)")->needs(asap_opt);
  ingest->add_option("--feedback", feedback, "Feedback Prize CSV");
  ingest->add_option("--ranges", ranges, "Score range config")->required();

  std::string spec_path;
  int n_essays = 0;
  auto* synth = app.add_subcommand("synth", "Generate the synthetic corpus");
  synth->add_option("--spec", spec_path, "Synthetic spec file (JSON)");
  synth->add_option("--essays", n_essays, "Number of essays");

  ExperimentFlags train_flags, ablate_flags;
  auto* train = app.add_subcommand("train", "Run the five-fold experiment");
  add_experiment_flags(train, train_flags);
  auto* ablate = app.add_subcommand("ablate", "Run ArTS, ArTS-w/o Pr, ArTS-rev and ArTS-ind");
  add_experiment_flags(ablate, ablate_flags);

  std::string checkpoint, corpus_path, prefix, ids_path;
  int fold = 0;
  auto* predict = app.add_subcommand("predict", "Decode essays with a checkpoint");
  predict->add_option("--checkpoint", checkpoint, "Model checkpoint")->required();
  predict->add_option("--corpus", corpus_path, "Serialized corpus")->required();
  predict->add_option("--prefix", prefix, "prompt | plain");
  predict->add_option("--ids", ids_path, "File of essay ids to decode (default: all)");
  predict->add_option("--fold", fold, "Fold index recorded with each prediction");

  std::string pred, gold, trait, repair = "range_min";
  auto* evaluate = app.add_subcommand("evaluate", "Score a predictions file");
  evaluate->add_option("--pred", pred, "Predictions JSONL")->required();
  evaluate->add_option("--gold", gold, "Serialized gold corpus")->required();
  evaluate->add_option("--ranges", ranges, "Score range config (overrides the corpus specs)");
  evaluate->add_option("--trait", trait, "Score only this trait");
  evaluate->add_option("--repair", repair, "range_min | drop");

  auto* analyze = app.add_subcommand("analyze", "Count out-of-range predictions");
  analyze->add_option("--pred", pred, "Predictions JSONL")->required();
  analyze->add_option("--gold", gold, "Serialized gold corpus")->required();
  analyze->add_option("--ranges", ranges, "Score range config (overrides the corpus specs)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  arts::set_quiet(g.quiet);

  try {
    if (*ingest) return cmd_ingest(g, asap, asap_pp, feedback, ranges);
    if (*synth) return cmd_synth(g, spec_path, n_essays);
    if (*train) return cmd_train(g, train_flags);
    if (*predict) return cmd_predict(g, checkpoint, corpus_path, prefix, ids_path, fold);
    if (*evaluate) return cmd_evaluate(g, pred, gold, ranges, trait, repair);
    if (*ablate) return cmd_ablate(g, ablate_flags);
    if (*analyze) return cmd_analyze(g, pred, gold, ranges);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
