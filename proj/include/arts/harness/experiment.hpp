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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arts/codec.hpp"
#include "arts/corpus.hpp"
#include "arts/harness/analysis.hpp"
#include "arts/harness/synthetic.hpp"
#include "arts/metrics.hpp"
#include "arts/model/config.hpp"
#include "arts/model/trainer.hpp"

namespace arts::harness {

// Everything that determines a run. Two equal configs over the same corpus
// produce byte-identical artifacts.
struct ExperimentConfig {
  std::string name = "ArTS";
  Family dataset = Family::kSynthetic;
  // Serialized corpus (see corpus::save) for the ASAP and Feedback families.
  std::string corpus_path;
  SyntheticSpec synthetic;
  // Directory of official split files; empty means a seeded split.
  std::string split_dir;
  std::uint64_t split_seed = 1;
  std::vector<int> folds{0, 1, 2, 3, 4};
  codec::OrderPolicy order = codec::OrderPolicy::forward();
  codec::PrefixPolicy prefix = codec::PrefixPolicy::kWithPrompt;
  codec::RepairRule repair = codec::RepairRule::kRangeMin;
  int min_freq = 1;
  model::ModelConfig model;
  model::TrainConfig train;
  // Runs are written to <output_dir>/run-<config hash prefix>.
  std::string output_dir = "runs";

  // Throws ConfigError for malformed settings.
  void validate() const;
  // Sets every seed (split, model init, shuffling, synthetic data).
  void set_seed(std::uint64_t seed);
};

void to_json(nlohmann::json& j, const ExperimentConfig& config);
void from_json(const nlohmann::json& j, ExperimentConfig& config);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// SHA-256 of the canonical config JSON without output_dir.
std::string config_hash(const ExperimentConfig& config);
std::filesystem::path run_directory(const ExperimentConfig& config);

// The synthetic corpus, or the serialized corpus at corpus_path checked
// against the configured family.
corpus::Corpus load_dataset(const ExperimentConfig& config);

struct FoldSummary {
  int fold = 0;
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;
  std::size_t truncated_sources = 0;
  int steps = 0;
  int selected_step = 0;
  double selected_dev_loss = 0.0;
  std::string checkpoint_hash;
  bool skipped = false;
};

struct ExperimentResult {
  std::filesystem::path run_dir;
  std::string config_hash;
  std::string corpus_hash;
  metrics::QwkReport report;
  OutOfRangeReport out_of_range;
  std::vector<PredictionRecord> predictions;
  std::vector<FoldSummary> folds;
  std::size_t repaired_pairs = 0;
  std::vector<std::string> warnings;
};

// Five-fold protocol: per fold, build the vocabulary on train, train with
// dev-loss short-listing, greedy-decode test, parse, mask and score. Writes
// under run_directory(config):
//   manifest.json        status, config/corpus/checkpoint/artifact hashes
//   config.json
//   fold_<k>/model.ckpt, fold_<k>/train_log.jsonl
//   predictions.jsonl    one record per test essay
//   report/              cells.csv, trait_wise.csv, prompt_wise.csv,
//                        report.txt, out_of_range.csv, out_of_range.txt
// The manifest is written first with status "incomplete". A fold failure
// marks it "failed", keeps the partial artifacts, and rethrows.
ExperimentResult run_experiment(const ExperimentConfig& config, const corpus::Corpus& corpus);

// Traits scored by the config: the single trait, or the whole universe.
std::vector<TraitName> evaluated_traits(const ExperimentConfig& config,
                                        std::span<const TraitName> universe);

// Essays the config trains and tests on: for a single-trait order, only
// those whose gold labels that trait.
bool participates(const corpus::Essay& essay, const ExperimentConfig& config);

// Encoder input ids for an essay under the config's prefix policy.
std::vector<int> encode_essay(const corpus::Essay& essay, const model::Vocab& vocab,
                              const ExperimentConfig& config, bool* truncated = nullptr);

}  // namespace arts::harness
