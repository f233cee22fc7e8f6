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

#include <algorithm>
#include <vector>

#include "arts/codec.hpp"
#include "arts/corpus.hpp"
#include "arts/errors.hpp"
#include "arts/rng.hpp"

using arts::TraitName;
using arts::TraitScoreMap;
using namespace arts::codec;

namespace {

const arts::corpus::RangeConfig& ranges() {
  static const auto config = arts::corpus::RangeConfig::load(ARTS_RANGES_PATH);
  return config;
}

std::vector<TraitName> asap_universe() {
  auto order = arts::asap_forward_order();
  return {order.begin(), order.end()};
}

TraitScoreMap prompt7_map() {
  TraitScoreMap m;
  m.prompt_id = 7;
  m.scores = {{TraitName::kOverall, 16},
              {TraitName::kContent, 3},
              {TraitName::kOrganization, 3},
              {TraitName::kConventions, 2},
              {TraitName::kStyle, 3}};
  return m;
}

// Completes a map to the full universe with nan fills.
TraitScoreMap completed(TraitScoreMap m, std::span<const TraitName> universe) {
  for (auto t : universe) m.scores.try_emplace(t, std::nullopt);
  return m;
}

}  // namespace

TEST_CASE("build_input prefixes") {
  CHECK(build_input(1, "E", PrefixPolicy::kWithPrompt) == "score the essay of the prompt 1: E");
  CHECK(build_input(1, "E", PrefixPolicy::kWithoutPrompt) == "score the essay: E");
  CHECK_THROWS_AS(build_input(arts::kNoPrompt, "E", PrefixPolicy::kWithPrompt),
                  arts::PolicyError);
  CHECK(build_input(arts::kNoPrompt, "E", PrefixPolicy::kWithoutPrompt) == "score the essay: E");
}

TEST_CASE("build_target orders") {
  const auto universe = asap_universe();
  const auto m = prompt7_map();
  CHECK(build_target(m, OrderPolicy::forward(), universe) ==
        "Voice nan, Style 3, Sentence Fluency nan, Word Choice nan, Conventions 2, "
        "Organization 3, Narrativity nan, Language nan, Prompt Adherence nan, Content 3, "
        "Overall 16");
  CHECK(build_target(m, OrderPolicy::single(TraitName::kContent), universe) == "Content 3");

  auto forward = target_pairs(m, OrderPolicy::forward(), universe);
  auto reverse = target_pairs(m, OrderPolicy::reverse(), universe);
  std::reverse(forward.begin(), forward.end());
  REQUIRE(forward.size() == reverse.size());
  for (std::size_t i = 0; i < forward.size(); ++i) {
    CHECK(forward[i].trait == reverse[i].trait);
    CHECK(forward[i].value == reverse[i].value);
  }

  CHECK_THROWS_AS(build_target(m, OrderPolicy::single(TraitName::kCohesion), universe),
                  arts::PolicyError);
}

TEST_CASE("forward and reverse orders are mirrors and have family sizes") {
  const auto universe = asap_universe();
  CHECK(universe.size() == 11);
  auto fwd = OrderPolicy::forward().sequence(universe);
  auto rev = OrderPolicy::reverse().sequence(universe);
  std::reverse(fwd.begin(), fwd.end());
  CHECK(fwd == rev);
  CHECK(universe.front() == TraitName::kVoice);
  CHECK(universe.back() == TraitName::kOverall);

  auto fb = arts::feedback_forward_order();
  REQUIRE(fb.size() == 6);
  CHECK(fb[0] == TraitName::kConventions);
  CHECK(fb[5] == TraitName::kCohesion);
}

TEST_CASE("order policy parsing") {
  CHECK(OrderPolicy::parse("forward") == OrderPolicy::forward());
  CHECK(OrderPolicy::parse("reverse") == OrderPolicy::reverse());
  CHECK(OrderPolicy::parse("single:Voice") == OrderPolicy::single(TraitName::kVoice));
  CHECK(OrderPolicy::parse("single:Word Choice") == OrderPolicy::single(TraitName::kWordChoice));
  CHECK_THROWS_AS(OrderPolicy::parse("sideways"), arts::PolicyError);
  CHECK_THROWS_AS(OrderPolicy::parse("single:Nope"), arts::PolicyError);
  CHECK(parse_prefix_policy("plain") == PrefixPolicy::kWithoutPrompt);
}

TEST_CASE("parse_prediction contract examples") {
  const auto universe = asap_universe();
  SUBCASE("well-formed forward string round-trips") {
    const auto m = prompt7_map();
    const auto parsed = parse_prediction(build_target(m, OrderPolicy::forward(), universe),
                                         universe, 7);
    CHECK(parsed.scores == completed(m, universe));
    CHECK(parsed.report.count(ParseStatus::kMissing) == 0);
  }
  SUBCASE("a single pair") {
    const auto parsed = parse_prediction("Overall 8", universe);
    CHECK(parsed.scores.scores.size() == 1);
    CHECK(parsed.scores.scores.at(TraitName::kOverall) == 8);
    CHECK(parsed.report.count(ParseStatus::kMissing) == 10);
  }
  SUBCASE("malformed value") {
    const auto parsed = parse_prediction("Content x, Overall 8", universe);
    CHECK(parsed.scores.scores.at(TraitName::kOverall) == 8);
    CHECK(parsed.report.status.at(TraitName::kContent) == ParseStatus::kMalformed);
    CHECK(parsed.report.malformed_values.at(TraitName::kContent) == "x");
  }
  SUBCASE("whitespace and trailing period tolerated, first mention wins") {
    const auto parsed = parse_prediction("Overall  7 ., Overall 9, Content nan", universe);
    CHECK(parsed.scores.scores.at(TraitName::kOverall) == 7);
    CHECK(parsed.report.status.at(TraitName::kContent) == ParseStatus::kNan);
    CHECK_FALSE(parsed.scores.scores.at(TraitName::kContent).has_value());
  }
  SUBCASE("uppercase NaN is malformed") {
    const auto parsed = parse_prediction("Voice NaN", universe);
    CHECK(parsed.report.status.at(TraitName::kVoice) == ParseStatus::kMalformed);
  }
  SUBCASE("arbitrary junk never throws") {
    CHECK_NOTHROW(parse_prediction(",,, Overall , Word Choice Choice 3 <unk>", universe));
    CHECK_NOTHROW(parse_prediction("", universe));
  }
}

TEST_CASE("round-trip and order invariance over random valid maps") {
  const auto universe = asap_universe();
  arts::Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int prompt = rng.uniform_int(1, 8);
    const auto spec = arts::corpus::prompt_spec(prompt, ranges());
    TraitScoreMap m;
    m.prompt_id = prompt;
    for (auto t : spec.traits) {
      const auto& r = spec.range(t);
      if (t != TraitName::kOverall && rng.uniform() < 0.1) {
        m.scores[t] = std::nullopt;
      } else {
        m.scores[t] = rng.uniform_int(r.min, r.max);
      }
    }
    const auto want = completed(m, universe);
    const auto fwd_text = build_target(m, OrderPolicy::forward(), universe);
    const auto rev_text = build_target(m, OrderPolicy::reverse(), universe);
    CHECK(target_pairs(m, OrderPolicy::forward(), universe).size() == 11);
    const auto fwd = parse_prediction(fwd_text, universe, prompt);
    const auto rev = parse_prediction(rev_text, universe, prompt);
    REQUIRE(fwd.scores == want);
    REQUIRE(rev.scores == fwd.scores);
  }
}

TEST_CASE("mask_for_eval") {
  const auto universe = asap_universe();
  const auto spec = arts::corpus::prompt_spec(7, ranges());
  const auto gold = prompt7_map();

  SUBCASE("complete prediction gives one pair per labeled trait") {
    const auto pred = parse_prediction(build_target(gold, OrderPolicy::forward(), universe),
                                       universe, 7);
    const auto pairs = mask_for_eval(pred, gold, spec);
    CHECK(pairs.size() == 5);
    for (const auto& p : pairs) {
      CHECK(p.gold == p.pred);
      CHECK_FALSE(p.repaired);
    }
  }
  SUBCASE("nan gold excludes the pair") {
    auto partial = gold;
    partial.scores[TraitName::kStyle] = std::nullopt;
    const auto pred = parse_prediction("Style 4, Overall 16", universe, 7);
    const auto pairs = mask_for_eval(pred, partial, spec);
    CHECK(std::none_of(pairs.begin(), pairs.end(),
                       [](const EvalPair& p) { return p.trait == TraitName::kStyle; }));
  }
  SUBCASE("missing prediction is repaired to the range minimum") {
    const auto pred = parse_prediction("Overall 16", universe, 7);
    const auto pairs = mask_for_eval(pred, gold, spec);
    const auto content = std::find_if(pairs.begin(), pairs.end(), [](const EvalPair& p) {
      return p.trait == TraitName::kContent;
    });
    REQUIRE(content != pairs.end());
    CHECK(content->gold == 3);
    CHECK(content->pred == spec.range(TraitName::kContent).min);
    CHECK(content->repaired);

    const auto dropped = mask_for_eval(pred, gold, spec, {}, RepairRule::kDrop);
    CHECK(dropped.size() == 1);
  }
  SUBCASE("out-of-range prediction is clamped and flagged") {
    const auto pred = parse_prediction("Overall 99", universe, 7);
    const std::vector<TraitName> only{TraitName::kOverall};
    const auto pairs = mask_for_eval(pred, gold, spec, only);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].pred == 30);
    CHECK(pairs[0].repaired);
  }
}
