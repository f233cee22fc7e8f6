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

#include "arts/harness/predictions.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "arts/errors.hpp"
#include "arts/tabular.hpp"

namespace arts::harness {

nlohmann::json to_json(const PredictionRecord& r) {
  nlohmann::json parsed = nlohmann::json::object();
  for (const auto& [trait, value] : r.parsed.scores.scores) {
    parsed[std::string(surface(trait))] =
        value ? nlohmann::json(*value) : nlohmann::json(codec::kNanLiteral);
  }
  nlohmann::json flags = nlohmann::json::object();
  for (const auto& [trait, status] : r.parsed.report.status) {
    flags[std::string(surface(trait))] = codec::parse_status_name(status);
  }
  nlohmann::json j{{"essay_id", r.essay_id},
                   {"prompt_id", nullptr},
                   {"fold", r.fold},
                   {"raw_text", r.raw_text},
                   {"parsed", parsed},
                   {"flags", flags}};
  if (r.prompt_id != kNoPrompt) j["prompt_id"] = r.prompt_id;
  return j;
}

std::string predictions_jsonl(std::span<const PredictionRecord> records) {
  std::string out;
  for (const auto& r : records) out += to_json(r).dump() + "\n";
  return out;
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path,
                                               std::span<const TraitName> universe) {
  std::istringstream in(read_file(path));
  std::vector<PredictionRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      PredictionRecord r;
      r.essay_id = j.at("essay_id").get<std::string>();
      const auto& prompt = j.at("prompt_id");
      r.prompt_id = prompt.is_null() ? kNoPrompt : prompt.get<int>();
      r.fold = j.value("fold", 0);
      r.raw_text = j.at("raw_text").get<std::string>();
      r.parsed = codec::parse_prediction(r.raw_text, universe, r.prompt_id);
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.filename().string() + " line " + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
  return records;
}

EvaluationResult evaluate_predictions(std::span<const PredictionRecord> records,
                                      const corpus::Corpus& corpus,
                                      std::span<const TraitName> columns,
                                      std::span<const TraitName> evaluated,
                                      codec::RepairRule rule) {
  EvaluationResult result;
  std::map<int, std::vector<metrics::LabeledPair>> by_fold;
  for (const auto& record : records) {
    const auto* essay = corpus.find(record.essay_id);
    if (!essay) throw DataError("prediction for unknown essay_id " + record.essay_id);
    if (essay->prompt_id != record.prompt_id) {
      throw DataError("prediction for essay " + record.essay_id + " names prompt " +
                      prompt_label(record.prompt_id) + " but the corpus says " +
                      prompt_label(essay->prompt_id));
    }
    const auto& spec = corpus.spec(essay->prompt_id);
    auto& pairs = by_fold[record.fold];
    for (const auto& p : codec::mask_for_eval(record.parsed, essay->gold, spec, evaluated, rule)) {
      pairs.push_back({essay->prompt_id, p.trait, p.gold, p.pred});
      ++result.pairs;
      result.repaired += p.repaired;
    }
  }
  std::vector<metrics::QwkCell> cells;
  for (const auto& [fold, pairs] : by_fold) {
    auto fold_cells = metrics::qwk_cellwise(pairs, fold, corpus.specs);
    cells.insert(cells.end(), fold_cells.begin(), fold_cells.end());
  }
  result.report = metrics::aggregate(std::move(cells), columns);
  result.warnings = result.report.warnings;
  return result;
}

}  // namespace arts::harness
