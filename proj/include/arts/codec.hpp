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
#include <string_view>
#include <vector>

#include "arts/corpus.hpp"
#include "arts/scores.hpp"
#include "arts/traits.hpp"

namespace arts::codec {

// Sequence grammar (see docs/sequence-grammar.md):
//   sequence = pair { "," SP pair }
//   pair     = surface-name SP value
//   value    = integer | "nan"
inline constexpr std::string_view kNanLiteral = "nan";
inline constexpr std::string_view kPairSeparator = ", ";

class OrderPolicy {
 public:
  enum class Kind { kForward, kReverse, kSingle };

  static OrderPolicy forward() { return OrderPolicy(Kind::kForward, {}); }
  static OrderPolicy reverse() { return OrderPolicy(Kind::kReverse, {}); }
  static OrderPolicy single(TraitName trait) { return OrderPolicy(Kind::kSingle, trait); }
  // "forward" | "reverse" | "single:<trait>"
  static OrderPolicy parse(std::string_view text);

  Kind kind() const { return kind_; }
  // Only meaningful for kSingle.
  TraitName trait() const { return *trait_; }
  std::string name() const;

  // Emitted trait order over a forward-ordered universe. Throws PolicyError
  // when a Single trait is outside the universe.
  std::vector<TraitName> sequence(std::span<const TraitName> universe) const;

  bool operator==(const OrderPolicy&) const = default;

 private:
  OrderPolicy(Kind kind, std::optional<TraitName> trait) : kind_(kind), trait_(trait) {}

  Kind kind_;
  std::optional<TraitName> trait_;
};

enum class PrefixPolicy { kWithPrompt, kWithoutPrompt };

std::string_view prefix_policy_name(PrefixPolicy policy);
// "prompt" | "plain"
PrefixPolicy parse_prefix_policy(std::string_view text);

// "score the essay of the prompt N: <text>" or "score the essay: <text>".
std::string build_input(PromptId prompt, std::string_view text, PrefixPolicy policy);
std::string build_input(const corpus::Essay& essay, PrefixPolicy policy);

struct TargetPair {
  TraitName trait;
  ScoreValue value;
};

// Pairs in emission order; traits missing from the map are nan.
std::vector<TargetPair> target_pairs(const TraitScoreMap& map, const OrderPolicy& order,
                                     std::span<const TraitName> universe);
std::string build_target(const TraitScoreMap& map, const OrderPolicy& order,
                         std::span<const TraitName> universe);

enum class ParseStatus { kParsed, kNan, kMissing, kMalformed };
std::string_view parse_status_name(ParseStatus status);

struct ParseReport {
  std::map<TraitName, ParseStatus> status;
  // Offending value text for kMalformed traits.
  std::map<TraitName, std::string> malformed_values;

  std::size_t count(ParseStatus wanted) const;
};

struct ParsedPrediction {
  // Parsed and nan traits only; Missing and Malformed traits are absent.
  TraitScoreMap scores;
  ParseReport report;
};

// Order-agnostic extraction of "<surface name> <value>" mentions. Never
// throws; anomalies are recorded in the report. First mention wins.
ParsedPrediction parse_prediction(std::string_view text,
                                  std::span<const TraitName> universe,
                                  PromptId prompt = kNoPrompt);

enum class RepairRule {
  // Missing, malformed and nan predictions become the range minimum;
  // out-of-range integers are clamped. The pair is flagged as repaired.
  kRangeMin,
  // Pairs whose prediction would need repair are dropped.
  kDrop,
};

struct EvalPair {
  TraitName trait;
  int gold;
  int pred;
  bool repaired = false;
};

// Pairs for every trait whose gold score is labeled. `evaluated` restricts
// the traits considered (empty = all traits of the prompt).
std::vector<EvalPair> mask_for_eval(const ParsedPrediction& pred, const TraitScoreMap& gold,
                                    const corpus::PromptSpec& spec,
                                    std::span<const TraitName> evaluated = {},
                                    RepairRule rule = RepairRule::kRangeMin);

}  // namespace arts::codec
