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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arts {

enum class TraitName {
  kOverall,
  kContent,
  kPromptAdherence,
  kLanguage,
  kNarrativity,
  kOrganization,
  kConventions,
  kWordChoice,
  kSentenceFluency,
  kStyle,
  kVoice,
  kCohesion,
  kSyntax,
  kVocabulary,
  kPhraseology,
  kGrammar,
};

inline constexpr std::size_t kTraitCount = 16;

// Dataset family a corpus belongs to. The family fixes the ordered trait
// universe that targets are serialized against.
enum class Family { kAsap, kFeedback, kSynthetic };

// Canonical surface string used inside score sequences ("Word Choice").
std::string_view surface(TraitName trait);
// Short column label used in report tables ("WC").
std::string_view short_label(TraitName trait);
// Inverse of surface(); also accepts the enum-style spelling ("WordChoice")
// and the short label. Case-sensitive.
std::optional<TraitName> trait_from_string(std::string_view text);

std::span<const TraitName> all_traits();

// Voice -> Overall, the rare-to-frequent prediction order for ASAP.
std::span<const TraitName> asap_forward_order();
// Conv, Gram, Phr, Voc, Syn, Coh for Feedback Prize.
std::span<const TraitName> feedback_forward_order();

std::string_view family_name(Family family);
std::optional<Family> family_from_string(std::string_view text);

// Integer prompt identifiers; Feedback Prize essays carry kNoPrompt.
using PromptId = int;
inline constexpr PromptId kNoPrompt = 0;

std::string prompt_label(PromptId prompt);

}  // namespace arts
