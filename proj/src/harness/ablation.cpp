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

#include "arts/harness/ablation.hpp"

#include <algorithm>
#include <set>

#include "arts/diagnostics.hpp"
#include "arts/errors.hpp"
#include "arts/metrics.hpp"
#include "arts/tabular.hpp"

namespace arts::harness {

std::vector<Variant> ablation_variants(const corpus::Corpus& corpus, std::string* note) {
  using codec::OrderPolicy;
  using codec::PrefixPolicy;
  std::vector<Variant> variants;
  if (corpus.family == Family::kFeedback) {
    variants.push_back({"ArTS", OrderPolicy::forward(), PrefixPolicy::kWithoutPrompt});
    variants.push_back({"ArTS-rev", OrderPolicy::reverse(), PrefixPolicy::kWithoutPrompt});
    if (note) {
      *note = "Feedback Prize has no prompt division: the prompt number is excluded from the "
              "input, so ArTS and ArTS-w/o Pr are the same run";
    }
  } else {
    variants.push_back({"ArTS", OrderPolicy::forward(), PrefixPolicy::kWithPrompt});
    variants.push_back({"ArTS-w/o Pr", OrderPolicy::forward(), PrefixPolicy::kWithoutPrompt});
    variants.push_back({"ArTS-rev", OrderPolicy::reverse(), PrefixPolicy::kWithPrompt});
  }
  const auto prefix = corpus.family == Family::kFeedback ? PrefixPolicy::kWithoutPrompt
                                                          : PrefixPolicy::kWithPrompt;
  for (auto trait : display_columns(corpus.family, corpus.universe)) {
    variants.push_back({"ArTS-ind:" + std::string(surface(trait)), OrderPolicy::single(trait),
                        prefix});
  }
  return variants;
}

SuiteResult run_ablation_suite(const ExperimentConfig& base, const corpus::Corpus& corpus,
                               std::span<const Variant> variants) {
  if (variants.empty()) throw ArgumentError("ablation suite needs at least one variant");
  SuiteResult suite;
  const auto columns = display_columns(corpus.family, corpus.universe);
  suite.trait_table.columns = columns;
  suite.trait_table.arrow = order_arrow(columns, corpus.universe);

  // Cells of the single-trait runs, aggregated together into one ArTS-ind row.
  std::vector<metrics::QwkCell> ind_cells;
  std::set<PromptId> prompt_columns;

  for (const auto& variant : variants) {
    VariantOutcome outcome{variant, std::nullopt, {}};
    ExperimentConfig config = base;
    config.order = variant.order;
    config.prefix = variant.prefix;
    config.name = variant.name;
    progress("ablation variant " + variant.name);
    try {
      outcome.result = run_experiment(config, corpus);
    } catch (const std::exception& e) {
      outcome.error = e.what();
      warn("variant " + variant.name + " failed: " + outcome.error);
      suite.outcomes.push_back(std::move(outcome));
      continue;
    }
    const auto& report = outcome.result->report;
    for (auto p : report.prompt_columns) prompt_columns.insert(p);
    if (variant.order.kind() == codec::OrderPolicy::Kind::kSingle) {
      ind_cells.insert(ind_cells.end(), report.cells.begin(), report.cells.end());
    } else if (!report.empty()) {
      suite.trait_table.rows.push_back({variant.name, report.trait_wise});
      suite.prompt_table.rows.push_back({variant.name, report.prompt_wise});
    }
    suite.outcomes.push_back(std::move(outcome));
  }

  if (!ind_cells.empty()) {
    const auto ind = metrics::aggregate(ind_cells, columns);
    suite.trait_table.rows.push_back({"ArTS-ind", ind.trait_wise});
    suite.prompt_table.rows.push_back({"ArTS-ind", ind.prompt_wise});
  }
  suite.prompt_table.columns.assign(prompt_columns.begin(), prompt_columns.end());

  const auto dir = std::filesystem::path(base.output_dir) / "ablation";
  write_file(dir / "trait_wise.csv", trait_table_csv(suite.trait_table));
  write_file(dir / "prompt_wise.csv", prompt_table_csv(suite.prompt_table));
  std::string text = trait_table_text(suite.trait_table, "Ablations, trait-wise QWK") + "\n" +
                     prompt_table_text(suite.prompt_table, "Ablations, prompt-wise QWK");
  std::string runs;
  for (const auto& outcome : suite.outcomes) {
    runs += outcome.variant.name + ": " +
            (outcome.result ? outcome.result->run_dir.filename().string()
                            : "FAILED (" + outcome.error + ")") +
            "\n";
  }
  text += "\nRuns\n" + runs;
  for (const auto& note : suite.notes) text += "\nNote: " + note + "\n";
  write_file(dir / "report.txt", text);
  return suite;
}

}  // namespace arts::harness
