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

#include "arts/codec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "arts/errors.hpp"
#include "arts/tabular.hpp"

namespace arts::codec {
namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// First occurrence of `name` delimited by non-word characters.
std::size_t find_mention(std::string_view text, std::string_view name) {
  std::size_t pos = text.find(name);
  while (pos != std::string_view::npos) {
    const bool left_ok = pos == 0 || !is_word_char(text[pos - 1]);
    const std::size_t end = pos + name.size();
    const bool right_ok = end == text.size() || !is_word_char(text[end]);
    if (left_ok && right_ok) return pos;
    pos = text.find(name, pos + 1);
  }
  return std::string_view::npos;
}

std::optional<int> parse_int(std::string_view token) {
  if (token.empty()) return std::nullopt;
  std::size_t digits_from = token.front() == '-' ? 1 : 0;
  if (digits_from == token.size()) return std::nullopt;
  for (std::size_t i = digits_from; i < token.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(token[i]))) return std::nullopt;
  }
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

}  // namespace

OrderPolicy OrderPolicy::parse(std::string_view text) {
  if (text == "forward") return forward();
  if (text == "reverse") return reverse();
  constexpr std::string_view kSinglePrefix = "single:";
  if (text.substr(0, kSinglePrefix.size()) == kSinglePrefix) {
    auto trait = trait_from_string(text.substr(kSinglePrefix.size()));
    if (!trait) {
      throw PolicyError("unknown trait in order policy '" + std::string(text) + "'");
    }
    return single(*trait);
  }
  throw PolicyError("unknown order policy '" + std::string(text) +
                    "' (expected forward, reverse or single:<trait>)");
}

std::string OrderPolicy::name() const {
  switch (kind_) {
    case Kind::kForward:
      return "forward";
    case Kind::kReverse:
      return "reverse";
    case Kind::kSingle: {
      std::string trait_name(surface(*trait_));
      std::erase(trait_name, ' ');
      return "single:" + trait_name;
    }
  }
  return "unknown";
}

std::vector<TraitName> OrderPolicy::sequence(std::span<const TraitName> universe) const {
  switch (kind_) {
    case Kind::kForward:
      return {universe.begin(), universe.end()};
    case Kind::kReverse:
      return {universe.rbegin(), universe.rend()};
    case Kind::kSingle:
      if (std::find(universe.begin(), universe.end(), *trait_) == universe.end()) {
        throw PolicyError("trait " + std::string(surface(*trait_)) +
                          " is not part of this dataset's trait universe");
      }
      return {*trait_};
  }
  return {};
}

std::string_view prefix_policy_name(PrefixPolicy policy) {
  return policy == PrefixPolicy::kWithPrompt ? "prompt" : "plain";
}

PrefixPolicy parse_prefix_policy(std::string_view text) {
  if (text == "prompt") return PrefixPolicy::kWithPrompt;
  if (text == "plain") return PrefixPolicy::kWithoutPrompt;
  throw PolicyError("unknown prefix policy '" + std::string(text) +
                    "' (expected prompt or plain)");
}

std::string build_input(PromptId prompt, std::string_view text, PrefixPolicy policy) {
  if (policy == PrefixPolicy::kWithoutPrompt) {
    return "score the essay: " + std::string(text);
  }
  if (prompt == kNoPrompt) {
    throw PolicyError("prompt-number prefix requested for an essay without a prompt");
  }
  return "score the essay of the prompt " + std::to_string(prompt) + ": " +
         std::string(text);
}

std::string build_input(const corpus::Essay& essay, PrefixPolicy policy) {
  return build_input(essay.prompt_id, essay.text, policy);
}

std::vector<TargetPair> target_pairs(const TraitScoreMap& map, const OrderPolicy& order,
                                     std::span<const TraitName> universe) {
  std::vector<TargetPair> pairs;
  for (auto trait : order.sequence(universe)) {
    auto it = map.scores.find(trait);
    pairs.push_back({trait, it == map.scores.end() ? ScoreValue{} : it->second});
  }
  return pairs;
}

std::string build_target(const TraitScoreMap& map, const OrderPolicy& order,
                         std::span<const TraitName> universe) {
  std::string out;
  for (const auto& pair : target_pairs(map, order, universe)) {
    if (!out.empty()) out += kPairSeparator;
    out += surface(pair.trait);
    out += ' ';
    out += pair.value ? std::to_string(*pair.value) : std::string(kNanLiteral);
  }
  return out;
}

std::string_view parse_status_name(ParseStatus status) {
  switch (status) {
    case ParseStatus::kParsed:
      return "parsed";
    case ParseStatus::kNan:
      return "nan";
    case ParseStatus::kMissing:
      return "missing";
    case ParseStatus::kMalformed:
      return "malformed";
  }
  return "unknown";
}

std::size_t ParseReport::count(ParseStatus wanted) const {
  return static_cast<std::size_t>(std::count_if(
      status.begin(), status.end(), [&](const auto& kv) { return kv.second == wanted; }));
}

ParsedPrediction parse_prediction(std::string_view text,
                                  std::span<const TraitName> universe, PromptId prompt) {
  ParsedPrediction result;
  result.scores.prompt_id = prompt;
  for (auto trait : universe) {
    const std::string_view name = surface(trait);
    const std::size_t at = find_mention(text, name);
    if (at == std::string_view::npos) {
      result.report.status[trait] = ParseStatus::kMissing;
      continue;
    }
    std::string_view rest = text.substr(at + name.size());
    rest = rest.substr(0, rest.find(','));
    std::string_view value = trim(rest);
    if (!value.empty() && value.back() == '.') {
      value.remove_suffix(1);
      value = trim(value);
    }
    if (value == kNanLiteral) {
      result.scores.scores[trait] = std::nullopt;
      result.report.status[trait] = ParseStatus::kNan;
    } else if (auto number = parse_int(value)) {
      result.scores.scores[trait] = *number;
      result.report.status[trait] = ParseStatus::kParsed;
    } else {
      result.report.status[trait] = ParseStatus::kMalformed;
      result.report.malformed_values[trait] = std::string(value);
    }
  }
  return result;
}

std::vector<EvalPair> mask_for_eval(const ParsedPrediction& pred, const TraitScoreMap& gold,
                                    const corpus::PromptSpec& spec,
                                    std::span<const TraitName> evaluated, RepairRule rule) {
  std::vector<EvalPair> pairs;
  for (auto trait : spec.traits) {
    if (!evaluated.empty() &&
        std::find(evaluated.begin(), evaluated.end(), trait) == evaluated.end()) {
      continue;
    }
    if (!gold.labeled(trait)) continue;
    const ScoreRange& range = spec.range(trait);
    EvalPair pair{trait, *gold.scores.at(trait), range.min, true};
    auto it = pred.scores.scores.find(trait);
    if (it != pred.scores.scores.end() && it->second) {
      pair.pred = std::clamp(*it->second, range.min, range.max);
      pair.repaired = pair.pred != *it->second;
    }
    if (pair.repaired && rule == RepairRule::kDrop) continue;
    pairs.push_back(pair);
  }
  return pairs;
}

}  // namespace arts::codec
