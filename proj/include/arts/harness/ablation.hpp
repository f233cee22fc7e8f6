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

#include <optional>
#include <string>
#include <vector>

#include "arts/harness/experiment.hpp"
#include "arts/harness/report.hpp"

namespace arts::harness {

struct Variant {
  std::string name;
  codec::OrderPolicy order;
  codec::PrefixPolicy prefix;
};

// ArTS, ArTS-w/o Pr, ArTS-rev and one ArTS-ind run per trait. For Feedback
// Prize the prompt-prefix variants collapse onto the plain prefix, so the
// list is ArTS, ArTS-rev and the single-trait runs; `note` then explains why.
std::vector<Variant> ablation_variants(const corpus::Corpus& corpus,
                                       std::string* note = nullptr);

struct VariantOutcome {
  Variant variant;
  std::optional<ExperimentResult> result;
  // Set when the variant failed; the suite continues past it.
  std::string error;
};

struct SuiteResult {
  std::vector<VariantOutcome> outcomes;
  // Rows ArTS, ArTS-w/o Pr, ArTS-rev and a combined ArTS-ind row assembled
  // from the single-trait runs.
  TraitTable trait_table;
  PromptTable prompt_table;
  std::vector<std::string> notes;
};

// Runs every variant of `base` (order and prefix overridden) on `corpus`,
// each in its own run directory, and writes the comparison tables to
// <output_dir>/ablation/. Throws ArgumentError for an empty variant list.
SuiteResult run_ablation_suite(const ExperimentConfig& base, const corpus::Corpus& corpus,
                               std::span<const Variant> variants);

}  // namespace arts::harness
