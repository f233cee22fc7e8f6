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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arts/corpus.hpp"

namespace arts::harness {

// Desk-scale stand-in corpus with an engineered inter-trait dependency.
struct SyntheticSpec {
  int n_essays = 2000;
  // Number of distinct filler words ("w0", "w1", ...).
  int vocab_size = 40;
  // Tokens per essay; must exceed the largest possible marker count.
  int essay_length = 24;
  // Marker-bearing traits. Overall is always added and derived from them.
  std::vector<TraitName> traits{TraitName::kContent, TraitName::kOrganization,
                                TraitName::kConventions};
  ScoreRange range{1, 5};
  // Probability that an essay's Overall is replaced by a uniform draw.
  double noise_rate = 0.0;
  std::uint64_t seed = 1;

  // Throws ConfigError on an unusable spec.
  void validate() const;
  bool operator==(const SyntheticSpec&) const = default;
};

void to_json(nlohmann::json& j, const SyntheticSpec& spec);
void from_json(const nlohmann::json& j, SyntheticSpec& spec);

// Marker word for a trait, e.g. "mkwordchoice". A single source token.
std::string marker_token(TraitName trait);

// Round-half-up mean of the given scores.
int rounded_mean(const std::vector<int>& scores);

// Each essay is a shuffled bag of `essay_length` tokens: the marker of every
// trait repeated score times, padded with uniformly drawn filler words.
// Overall = rounded_mean(other traits). Deterministic in the spec.
corpus::Corpus make_synthetic(const SyntheticSpec& spec);

// Human-readable statement of the generating rule.
std::string describe(const SyntheticSpec& spec);

// Inverse of the construction: counts markers in `text`. Overall is
// recomputed from the counted traits.
TraitScoreMap decode_markers(std::string_view text, const SyntheticSpec& spec);

}  // namespace arts::harness
