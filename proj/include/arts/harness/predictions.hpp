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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arts/codec.hpp"
#include "arts/corpus.hpp"
#include "arts/metrics.hpp"

namespace arts::harness {

// One decoded test essay: the raw generation is kept next to its parse.
struct PredictionRecord {
  std::string essay_id;
  PromptId prompt_id = kNoPrompt;
  int fold = 0;
  std::string raw_text;
  codec::ParsedPrediction parsed;
};

// {"essay_id", "prompt_id" (null for no prompt), "fold", "raw_text",
//  "parsed": {surface: int | "nan"}, "flags": {surface: status}}
nlohmann::json to_json(const PredictionRecord& record);
std::string predictions_jsonl(std::span<const PredictionRecord> records);

// Reads a predictions file and re-parses every raw_text against `universe`,
// so the parse always reflects the current grammar.
std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path,
                                               std::span<const TraitName> universe);

struct EvaluationResult {
  metrics::QwkReport report;
  std::size_t pairs = 0;
  std::size_t repaired = 0;
  std::vector<std::string> warnings;
};

// Masks every record against its gold essay and aggregates per-fold QWK
// cells. `evaluated` restricts the scored traits (empty = every trait).
EvaluationResult evaluate_predictions(std::span<const PredictionRecord> records,
                                      const corpus::Corpus& corpus,
                                      std::span<const TraitName> columns,
                                      std::span<const TraitName> evaluated = {},
                                      codec::RepairRule rule = codec::RepairRule::kRangeMin);

}  // namespace arts::harness
