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
#include <span>
#include <string>
#include <vector>

#include "arts/codec.hpp"
#include "arts/corpus.hpp"
#include "arts/harness/predictions.hpp"
#include "arts/model/transformer.hpp"
#include "arts/model/vocab.hpp"

namespace arts::harness {

struct OutOfRangeExample {
  std::string essay_id;
  int fold = 0;
  int value = 0;
  ScoreRange expected;
};

struct OutOfRangeEntry {
  PromptId prompt = kNoPrompt;
  TraitName trait = TraitName::kOverall;
  std::size_t count = 0;
  // Integer predictions of this (prompt, trait) that were examined.
  std::size_t total = 0;
  std::vector<OutOfRangeExample> examples;
};

struct OutOfRangeReport {
  // Sorted by count descending, then prompt, then trait.
  std::vector<OutOfRangeEntry> entries;

  std::size_t total_count() const;
};

// Integer predictions outside their (prompt, trait) range, counted before
// any repair. nan, Missing and Malformed values are never out of range, and
// traits a prompt does not rate have no range to leave.
OutOfRangeReport out_of_range_analysis(std::span<const PredictionRecord> records,
                                       const std::map<PromptId, corpus::PromptSpec>& specs);

// CSV (prompt, trait, count, total, examples) and an aligned-text summary.
std::string out_of_range_csv(const OutOfRangeReport& report, int score_scale = 1);
std::string out_of_range_text(const OutOfRangeReport& report, int score_scale = 1);

struct ConditioningCheck {
  std::size_t essays = 0;
  // Essays whose distribution at the probed position moved when an earlier
  // decoded score token was replaced.
  std::size_t changed_by_earlier = 0;
  // Essays whose probed distribution moved when a later token was replaced;
  // the causal mask makes this 0.
  std::size_t changed_by_later = 0;
  double max_total_variation = 0.0;
};

// For each source, decodes greedily, then probes the position that emits the
// `probe` score. Replacing the score token of the trait decoded just before
// it must be able to change that distribution; replacing any token after it
// must not.
ConditioningCheck conditioning_sensitivity(const model::Seq2SeqModel& net,
                                           const model::Vocab& vocab,
                                           std::span<const std::vector<int>> sources,
                                           TraitName probe = TraitName::kOverall);

}  // namespace arts::harness
