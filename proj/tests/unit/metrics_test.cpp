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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "arts/errors.hpp"
#include "arts/metrics.hpp"
#include "arts/rng.hpp"
#include "oracles/qwk_oracle.hpp"

using arts::PromptId;
using arts::TraitName;
using arts::metrics::CategoryRange;
using arts::metrics::QwkCell;
using arts::metrics::qwk;

namespace {

arts::corpus::PromptSpec spec_for(PromptId prompt, std::vector<TraitName> traits,
                                  CategoryRange range) {
  arts::corpus::PromptSpec spec;
  spec.prompt_id = prompt;
  spec.traits = traits;
  for (auto t : traits) spec.ranges[t] = range;
  return spec;
}

QwkCell cell(int fold, PromptId prompt, TraitName trait, double value) {
  QwkCell c;
  c.fold = fold;
  c.prompt = prompt;
  c.trait = trait;
  c.value = value;
  c.n = 10;
  return c;
}

}  // namespace

TEST_CASE("qwk fixed examples") {
  const std::vector<int> a{1, 2, 3};
  CHECK(*qwk(a, a, {1, 3}) == doctest::Approx(1.0).epsilon(1e-15));

  const std::vector<int> g{1, 2}, p{2, 1};
  CHECK(*qwk(g, p, {1, 2}) == doctest::Approx(-1.0).epsilon(1e-15));

  // 0.8 confirmed by the pairwise oracle: observed 1/4, chance 20/16.
  const std::vector<int> g3{1, 1, 2, 3}, p3{1, 2, 2, 3};
  const auto oracle = arts::oracle::brute_force_qwk(g3, p3);
  REQUIRE(oracle);
  CHECK(std::abs(*oracle - 0.8) < 1e-15);
  CHECK(std::abs(*qwk(g3, p3, {1, 3}) - 0.8) < 1e-12);
}

TEST_CASE("qwk argument errors and undefined sentinel") {
  const std::vector<int> two{1, 2}, three{1, 2, 3}, none;
  CHECK_THROWS_AS(qwk(two, three, {1, 3}), arts::ArgumentError);
  CHECK_THROWS_AS(qwk(none, none, {1, 3}), arts::ArgumentError);
  const std::vector<int> outside{1, 4};
  CHECK_THROWS_AS(qwk(two, outside, {1, 3}), arts::ArgumentError);
  CHECK_THROWS_AS(qwk(two, two, {1, 1}), arts::ArgumentError);

  const std::vector<int> constant{2, 2, 2};
  CHECK_FALSE(qwk(constant, constant, {1, 3}).has_value());
}

TEST_CASE("qwk agrees with the brute-force oracle on random instances") {
  arts::Rng rng(20240607);
  for (int trial = 0; trial < 300; ++trial) {
    const int categories = rng.uniform_int(2, 10);
    const int lo = rng.uniform_int(-3, 3);
    const CategoryRange range{lo, lo + categories - 1};
    const int n = rng.uniform_int(1, 50);
    std::vector<int> g(n), p(n);
    for (int i = 0; i < n; ++i) {
      g[i] = rng.uniform_int(range.min, range.max);
      p[i] = rng.uniform_int(range.min, range.max);
    }
    const auto fast = qwk(g, p, range);
    const auto slow = arts::oracle::brute_force_qwk(g, p);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) CHECK(std::abs(*fast - *slow) < 1e-12);
  }
}

TEST_CASE("qwk properties: self-agreement and duplication invariance") {
  arts::Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(2, 30);
    std::vector<int> x(n);
    for (auto& v : x) v = rng.uniform_int(0, 5);
    x[0] = 0;
    x[1] = 5;  // non-constant
    CHECK(*qwk(x, x, {0, 5}) == doctest::Approx(1.0));

    std::vector<int> y(n);
    for (auto& v : y) v = rng.uniform_int(0, 5);
    std::vector<int> xx = x, yy = y;
    xx.insert(xx.end(), x.begin(), x.end());
    yy.insert(yy.end(), y.begin(), y.end());
    CHECK(*qwk(x, y, {0, 5}) == *qwk(xx, yy, {0, 5}));
  }
}

TEST_CASE("qwk_cellwise groups per prompt and trait") {
  std::map<PromptId, arts::corpus::PromptSpec> specs;
  specs[1] = spec_for(1, {TraitName::kOverall, TraitName::kContent, TraitName::kConventions},
                      {0, 4});
  specs[2] = spec_for(2, {TraitName::kOverall, TraitName::kContent, TraitName::kConventions},
                      {1, 6});
  std::vector<arts::metrics::LabeledPair> pairs;
  for (PromptId prompt : {1, 2}) {
    for (auto trait : specs[prompt].traits) {
      const int lo = specs[prompt].ranges[trait].min;
      pairs.push_back({prompt, trait, lo, lo});
      pairs.push_back({prompt, trait, lo + 1, lo + 2});
      pairs.push_back({prompt, trait, lo + 3, lo + 3});
    }
  }
  const auto cells = arts::metrics::qwk_cellwise(pairs, 0, specs);
  CHECK(cells.size() == 6);
  for (const auto& c : cells) CHECK(c.n == 3);

  auto doubled = pairs;
  doubled.insert(doubled.end(), pairs.begin(), pairs.end());
  const auto cells2 = arts::metrics::qwk_cellwise(doubled, 0, specs);
  REQUIRE(cells2.size() == cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) CHECK(*cells[i].value == *cells2[i].value);

  CHECK(arts::metrics::qwk_cellwise({}, 0, specs).empty());
}

TEST_CASE("aggregate: single cell and constant folds") {
  const std::vector<TraitName> cols{TraitName::kOverall};
  auto one = arts::metrics::aggregate({cell(0, 1, TraitName::kOverall, 0.42)}, cols);
  CHECK(one.trait_wise.avg == doctest::Approx(0.42));
  CHECK(one.trait_wise.sd == 0.0);
  CHECK(one.prompt_wise.avg == doctest::Approx(0.42));

  std::vector<QwkCell> cells;
  for (int f = 0; f < 5; ++f) cells.push_back(cell(f, 1, TraitName::kOverall, 0.7));
  auto flat = arts::metrics::aggregate(cells, cols);
  CHECK(flat.trait_wise.avg == doctest::Approx(0.7));
  CHECK(flat.trait_wise.sd == doctest::Approx(0.0));
}

TEST_CASE("aggregate: fold SD is the population SD") {
  const std::vector<TraitName> cols{TraitName::kOverall};
  auto report = arts::metrics::aggregate(
      {cell(0, 1, TraitName::kOverall, 0.6), cell(1, 1, TraitName::kOverall, 0.8)}, cols);
  CHECK(report.trait_wise.avg == doctest::Approx(0.7));
  CHECK(report.trait_wise.sd == doctest::Approx(0.1));
  // The sample SD would be 0.1 * sqrt(2).
  const std::vector<double> folds{0.6, 0.8};
  CHECK(arts::metrics::sample_sd(folds) == doctest::Approx(0.1 * std::sqrt(2.0)));
  CHECK(arts::metrics::population_sd(folds) == doctest::Approx(0.1));
}

TEST_CASE("aggregate: traits average only over prompts that rate them") {
  const std::vector<TraitName> cols{TraitName::kOverall, TraitName::kVoice};
  std::vector<QwkCell> cells{cell(0, 1, TraitName::kOverall, 0.5),
                             cell(0, 8, TraitName::kOverall, 0.7),
                             cell(0, 8, TraitName::kVoice, 0.3)};
  auto report = arts::metrics::aggregate(cells, cols);
  CHECK(report.trait_wise.values.at(TraitName::kVoice) == doctest::Approx(0.3));
  CHECK(report.trait_wise.values.at(TraitName::kOverall) == doctest::Approx(0.6));
  CHECK(report.trait_wise.avg == doctest::Approx(0.45));
  CHECK(report.prompt_wise.values.at(1) == doctest::Approx(0.5));
  CHECK(report.prompt_wise.values.at(8) == doctest::Approx(0.5));
}

TEST_CASE("aggregate: undefined cells are excluded with a warning") {
  const std::vector<TraitName> cols{TraitName::kOverall};
  QwkCell undefined = cell(0, 2, TraitName::kOverall, 0);
  undefined.value.reset();
  auto report = arts::metrics::aggregate({cell(0, 1, TraitName::kOverall, 0.9), undefined}, cols);
  CHECK(report.undefined_cells == 1);
  CHECK(report.warnings.size() == 1);
  CHECK(report.trait_wise.avg == doctest::Approx(0.9));
}

TEST_CASE("aggregate: trait-wise and prompt-wise grand averages agree on complete grids") {
  arts::Rng rng(99);
  const std::vector<TraitName> traits{TraitName::kOverall, TraitName::kContent,
                                      TraitName::kOrganization, TraitName::kStyle};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<QwkCell> cells;
    const int prompts = rng.uniform_int(1, 8);
    const int folds = rng.uniform_int(1, 5);
    for (int f = 0; f < folds; ++f) {
      for (int p = 1; p <= prompts; ++p) {
        for (auto t : traits) cells.push_back(cell(f, p, t, rng.uniform(-1.0, 1.0)));
      }
    }
    auto report = arts::metrics::aggregate(cells, traits);
    CHECK(report.trait_wise.avg == doctest::Approx(report.prompt_wise.avg).epsilon(1e-12));
  }
}
