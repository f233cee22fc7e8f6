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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arts/scores.hpp"
#include "arts/traits.hpp"

namespace arts::corpus {

struct PromptSpec {
  PromptId prompt_id = kNoPrompt;
  // Traits rated for this prompt, in the dataset's listing order.
  std::vector<TraitName> traits;
  std::map<TraitName, ScoreRange> ranges;
  std::optional<int> essay_count_expected;

  bool has(TraitName trait) const;
  // Throws LookupError when the trait is not rated for this prompt.
  const ScoreRange& range(TraitName trait) const;
};

struct Essay {
  std::string essay_id;
  PromptId prompt_id = kNoPrompt;
  std::string text;
  TraitScoreMap gold;
};

// Immutable after loading; safe to share across readers.
struct Corpus {
  Family family = Family::kAsap;
  // Scores are stored as integer categories; the displayed score is
  // category / score_scale (2 for the half-point Feedback Prize scale).
  int score_scale = 1;
  // Full trait universe of the family in forward prediction order.
  std::vector<TraitName> universe;
  std::map<PromptId, PromptSpec> specs;
  std::vector<Essay> essays;

  const PromptSpec& spec(PromptId prompt) const;
  const Essay* find(const std::string& essay_id) const;
  // Lowest and highest category over every (prompt, trait) range.
  ScoreRange global_range() const;
};

// Checked-in per prompt x trait score ranges.
//
// JSON layout:
//   { "asap":     { "1": { "Overall": [2, 12], "Content": [1, 6], ... }, ... },
//     "feedback": { "scale": 2, "traits": { "Cohesion": [1.0, 5.0], ... } } }
// Feedback bounds are on the display scale and are multiplied by `scale`.
class RangeConfig {
 public:
  static RangeConfig load(const std::filesystem::path& path);
  static RangeConfig parse(std::string_view json_text);

  std::optional<ScoreRange> asap_range(PromptId prompt, TraitName trait) const;
  std::optional<ScoreRange> feedback_range(TraitName trait) const;
  int feedback_scale() const { return feedback_scale_; }

 private:
  std::map<PromptId, std::map<TraitName, ScoreRange>> asap_;
  std::map<TraitName, ScoreRange> feedback_;
  int feedback_scale_ = 2;
};

// Trait set and ranges for prompt 1-8 (ASAP) or kNoPrompt (Feedback Prize).
// Throws LookupError for any other id or when the range config lacks an
// entry for a required trait.
PromptSpec prompt_spec(PromptId prompt, const RangeConfig& ranges);

// Per-prompt essay counts of the combined ASAP/ASAP++ data.
std::span<const int> asap_expected_counts();

struct LoadReport {
  std::vector<std::string> warnings;
  std::size_t dropped_rows = 0;
};

// ASAP TSV plus per-prompt ASAP++ trait files, joined on essay id.
// Overall comes from ASAP domain1_score; prompts 1-6 take their other traits
// from ASAP++, prompts 7-8 sum rater1/rater2 trait columns from ASAP.
Corpus load_asap_combined(const std::filesystem::path& asap_path,
                          std::span<const std::filesystem::path> asap_pp_paths,
                          const RangeConfig& ranges, LoadReport* report = nullptr);

Corpus load_feedback_prize(const std::filesystem::path& path,
                           const RangeConfig& ranges);

// Half-point display value -> integer category. Throws DataError when the
// value is not a multiple of 1/scale.
int integerize(double value, int scale);
std::string display_score(int category, int scale);

struct FoldAssignment {
  int fold_index = 0;
  std::vector<std::string> train;
  std::vector<std::string> dev;
  std::vector<std::string> test;
};

inline constexpr int kFoldCount = 5;

// Stratified-by-prompt split from a seed. Every essay is test in exactly one
// fold; dev is 1/8 of each fold's remaining essays per prompt.
std::vector<FoldAssignment> make_folds(const Corpus& corpus, std::uint64_t seed);

// Reads <dir>/fold_<k>/{train,dev,test}_ids.txt. A missing dev file is carved
// from train as in make_folds.
std::vector<FoldAssignment> read_folds(const Corpus& corpus,
                                       const std::filesystem::path& dir);
void write_folds(std::span<const FoldAssignment> folds,
                 const std::filesystem::path& dir);

// Line-delimited JSON: a header record then one record per essay.
std::string serialize(const Corpus& corpus);
Corpus deserialize(std::string_view text);
void save(const Corpus& corpus, const std::filesystem::path& path);
Corpus load(const std::filesystem::path& path);

// Re-checks the corpus invariants (key sets, ranges, unique ids).
void validate(const Corpus& corpus);

}  // namespace arts::corpus
