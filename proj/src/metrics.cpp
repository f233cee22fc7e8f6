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

#include "arts/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "arts/errors.hpp"

namespace arts::metrics {
namespace {

template <typename Key, typename KeyOf>
SummaryRow<Key> summarize(std::span<const QwkCell> cells, KeyOf key_of) {
  // fold -> key -> values over the other axis
  std::map<int, std::map<Key, std::vector<double>>> grouped;
  for (const auto& cell : cells) {
    if (!cell.value) continue;
    grouped[cell.fold][key_of(cell)].push_back(*cell.value);
  }

  SummaryRow<Key> row;
  std::map<Key, std::vector<double>> per_key_fold_means;
  for (const auto& [fold, by_key] : grouped) {
    std::vector<double> key_means;
    for (const auto& [key, values] : by_key) {
      const double m = mean(values);
      key_means.push_back(m);
      per_key_fold_means[key].push_back(m);
    }
    row.fold_means[fold] = mean(key_means);
  }
  for (const auto& [key, values] : per_key_fold_means) row.values[key] = mean(values);

  std::vector<double> fold_values;
  for (const auto& [fold, m] : row.fold_means) fold_values.push_back(m);
  if (!fold_values.empty()) {
    row.avg = mean(fold_values);
    row.sd = population_sd(fold_values);
  }
  return row;
}

}  // namespace

std::optional<double> qwk(std::span<const int> gold, std::span<const int> pred,
                          CategoryRange range) {
  if (gold.size() != pred.size()) {
    throw ArgumentError("qwk: gold and pred lengths differ (" + std::to_string(gold.size()) +
                        " vs " + std::to_string(pred.size()) + ")");
  }
  if (gold.empty()) throw ArgumentError("qwk: empty input");
  const int categories = range.category_count();
  if (categories < 2) throw ArgumentError("qwk: range needs at least two categories");

  const auto c = static_cast<std::size_t>(categories);
  std::vector<double> observed(c * c, 0.0);
  std::vector<double> hist_gold(c, 0.0);
  std::vector<double> hist_pred(c, 0.0);
  for (std::size_t k = 0; k < gold.size(); ++k) {
    if (!range.contains(gold[k]) || !range.contains(pred[k])) {
      throw ArgumentError("qwk: value outside range [" + std::to_string(range.min) + ", " +
                          std::to_string(range.max) + "]");
    }
    const auto i = static_cast<std::size_t>(gold[k] - range.min);
    const auto j = static_cast<std::size_t>(pred[k] - range.min);
    observed[i * c + j] += 1.0;
    hist_gold[i] += 1.0;
    hist_pred[j] += 1.0;
  }

  const double n = static_cast<double>(gold.size());
  const double norm = static_cast<double>((categories - 1) * (categories - 1));
  double weighted_observed = 0.0;
  double weighted_expected = 0.0;
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double d = static_cast<double>(i) - static_cast<double>(j);
      const double w = d * d / norm;
      weighted_observed += w * observed[i * c + j];
      weighted_expected += w * hist_gold[i] * hist_pred[j] / n;
    }
  }
  if (weighted_expected == 0.0) return std::nullopt;
  return 1.0 - weighted_observed / weighted_expected;
}

std::vector<QwkCell> qwk_cellwise(std::span<const LabeledPair> pairs, int fold,
                                  const std::map<PromptId, corpus::PromptSpec>& specs) {
  std::map<std::pair<PromptId, TraitName>, std::pair<std::vector<int>, std::vector<int>>>
      groups;
  for (const auto& pair : pairs) {
    auto& [gold, pred] = groups[{pair.prompt, pair.trait}];
    gold.push_back(pair.gold);
    pred.push_back(pair.pred);
  }
  std::vector<QwkCell> cells;
  for (const auto& [key, values] : groups) {
    const auto& [prompt, trait] = key;
    auto spec = specs.find(prompt);
    if (spec == specs.end()) {
      throw LookupError("no prompt spec for prompt " + prompt_label(prompt));
    }
    QwkCell cell;
    cell.prompt = prompt;
    cell.trait = trait;
    cell.fold = fold;
    cell.n = values.first.size();
    cell.value = qwk(values.first, values.second, spec->second.range(trait));
    cells.push_back(cell);
  }
  return cells;
}

QwkReport aggregate(std::vector<QwkCell> cells, std::span<const TraitName> trait_columns) {
  QwkReport report;
  std::sort(cells.begin(), cells.end(), [](const QwkCell& a, const QwkCell& b) {
    return std::tie(a.fold, a.prompt, a.trait) < std::tie(b.fold, b.prompt, b.trait);
  });
  report.cells = std::move(cells);
  report.trait_columns.assign(trait_columns.begin(), trait_columns.end());

  std::set<PromptId> prompts;
  for (const auto& cell : report.cells) {
    prompts.insert(cell.prompt);
    if (!cell.value) {
      ++report.undefined_cells;
      report.warnings.push_back("undefined QWK (constant, equal raters) for prompt " +
                                prompt_label(cell.prompt) + " trait " +
                                std::string(surface(cell.trait)) + " fold " +
                                std::to_string(cell.fold) + "; excluded from averages");
    }
  }
  report.prompt_columns.assign(prompts.begin(), prompts.end());

  report.trait_wise = summarize<TraitName>(
      report.cells, [](const QwkCell& c) { return c.trait; });
  report.prompt_wise = summarize<PromptId>(
      report.cells, [](const QwkCell& c) { return c.prompt; });
  return report;
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double population_sd(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double m = mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(values.size()));
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

}  // namespace arts::metrics
