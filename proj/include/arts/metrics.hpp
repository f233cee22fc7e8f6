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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arts/corpus.hpp"
#include "arts/scores.hpp"
#include "arts/traits.hpp"

namespace arts::metrics {

using CategoryRange = ScoreRange;

// Quadratic weighted kappa, 1 - sum(w*O) / sum(w*E) with
// w_ij = (i-j)^2 / (C-1)^2 and E the outer product of the marginals over n.
// Returns nullopt (Undefined) when sum(w*E) == 0, i.e. both raters constant
// and equal. Throws ArgumentError on empty or mismatched input, values
// outside the range, or fewer than two categories.
std::optional<double> qwk(std::span<const int> gold, std::span<const int> pred,
                          CategoryRange range);

struct QwkCell {
  PromptId prompt = kNoPrompt;
  TraitName trait = TraitName::kOverall;
  int fold = 0;
  std::optional<double> value;
  std::size_t n = 0;
};

struct LabeledPair {
  PromptId prompt = kNoPrompt;
  TraitName trait = TraitName::kOverall;
  int gold = 0;
  int pred = 0;
};

// One cell per (prompt, trait) present in `pairs`, each scored against its
// own prompt's range. Prompts are never pooled. Cells come out ordered by
// prompt, then trait.
std::vector<QwkCell> qwk_cellwise(std::span<const LabeledPair> pairs, int fold,
                                  const std::map<PromptId, corpus::PromptSpec>& specs);

// One row of a trait-wise or prompt-wise results table.
template <typename Key>
struct SummaryRow {
  // Column value: mean over folds of the per-fold mean over the other axis.
  std::map<Key, double> values;
  // Per fold: mean of that fold's column means.
  std::map<int, double> fold_means;
  double avg = 0;
  // Population standard deviation of fold_means.
  double sd = 0;
};

struct QwkReport {
  std::vector<QwkCell> cells;
  // Display order of the trait-wise columns.
  std::vector<TraitName> trait_columns;
  std::vector<PromptId> prompt_columns;
  SummaryRow<TraitName> trait_wise;
  SummaryRow<PromptId> prompt_wise;
  std::size_t undefined_cells = 0;
  std::vector<std::string> warnings;

  bool empty() const { return cells.empty(); }
};

// Trait-wise: per fold, each trait averages over the prompts that rate it.
// Prompt-wise: per fold, each prompt averages over its traits. Undefined
// cells are excluded with a warning.
QwkReport aggregate(std::vector<QwkCell> cells, std::span<const TraitName> trait_columns);

double mean(std::span<const double> values);
double population_sd(std::span<const double> values);
double sample_sd(std::span<const double> values);

}  // namespace arts::metrics
