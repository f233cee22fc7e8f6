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

#include "arts/traits.hpp"

namespace arts {

// Inclusive integer score range of one (prompt, trait).
struct ScoreRange {
  int min = 0;
  int max = 0;

  int category_count() const { return max - min + 1; }
  bool contains(int value) const { return value >= min && value <= max; }
  bool operator==(const ScoreRange&) const = default;
};

// A labeled integer score, or nan (unlabeled) when empty.
using ScoreValue = std::optional<int>;

struct TraitScoreMap {
  PromptId prompt_id = kNoPrompt;
  std::map<TraitName, ScoreValue> scores;

  bool operator==(const TraitScoreMap&) const = default;

  bool labeled(TraitName trait) const {
    auto it = scores.find(trait);
    return it != scores.end() && it->second.has_value();
  }
};

}  // namespace arts
