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

#include "arts/traits.hpp"

namespace arts {
namespace {

struct TraitInfo {
  TraitName trait;
  std::string_view surface;
  std::string_view short_label;
  std::string_view enum_name;
};

constexpr std::array<TraitInfo, kTraitCount> kTraitTable{{
    {TraitName::kOverall, "Overall", "Overall", "Overall"},
    {TraitName::kContent, "Content", "Content", "Content"},
    {TraitName::kPromptAdherence, "Prompt Adherence", "PA", "PromptAdherence"},
    {TraitName::kLanguage, "Language", "Lang", "Language"},
    {TraitName::kNarrativity, "Narrativity", "Nar", "Narrativity"},
    {TraitName::kOrganization, "Organization", "Org", "Organization"},
    {TraitName::kConventions, "Conventions", "Conv", "Conventions"},
    {TraitName::kWordChoice, "Word Choice", "WC", "WordChoice"},
    {TraitName::kSentenceFluency, "Sentence Fluency", "SF", "SentenceFluency"},
    {TraitName::kStyle, "Style", "Style", "Style"},
    {TraitName::kVoice, "Voice", "Voice", "Voice"},
    {TraitName::kCohesion, "Cohesion", "Coh", "Cohesion"},
    {TraitName::kSyntax, "Syntax", "Syn", "Syntax"},
    {TraitName::kVocabulary, "Vocabulary", "Voc", "Vocabulary"},
    {TraitName::kPhraseology, "Phraseology", "Phr", "Phraseology"},
    {TraitName::kGrammar, "Grammar", "Gram", "Grammar"},
}};

constexpr std::array<TraitName, kTraitCount> kAllTraits{
    TraitName::kOverall,      TraitName::kContent,
    TraitName::kPromptAdherence, TraitName::kLanguage,
    TraitName::kNarrativity,  TraitName::kOrganization,
    TraitName::kConventions,  TraitName::kWordChoice,
    TraitName::kSentenceFluency, TraitName::kStyle,
    TraitName::kVoice,        TraitName::kCohesion,
    TraitName::kSyntax,       TraitName::kVocabulary,
    TraitName::kPhraseology,  TraitName::kGrammar,
};

constexpr std::array<TraitName, 11> kAsapForward{
    TraitName::kVoice,           TraitName::kStyle,
    TraitName::kSentenceFluency, TraitName::kWordChoice,
    TraitName::kConventions,     TraitName::kOrganization,
    TraitName::kNarrativity,     TraitName::kLanguage,
    TraitName::kPromptAdherence, TraitName::kContent,
    TraitName::kOverall,
};

constexpr std::array<TraitName, 6> kFeedbackForward{
    TraitName::kConventions, TraitName::kGrammar,    TraitName::kPhraseology,
    TraitName::kVocabulary,  TraitName::kSyntax,     TraitName::kCohesion,
};

const TraitInfo& info(TraitName trait) {
  return kTraitTable[static_cast<std::size_t>(trait)];
}

}  // namespace

std::string_view surface(TraitName trait) { return info(trait).surface; }

std::string_view short_label(TraitName trait) { return info(trait).short_label; }

std::optional<TraitName> trait_from_string(std::string_view text) {
  for (const auto& entry : kTraitTable) {
    if (text == entry.surface || text == entry.enum_name ||
        text == entry.short_label) {
      return entry.trait;
    }
  }
  return std::nullopt;
}

std::span<const TraitName> all_traits() { return kAllTraits; }

std::span<const TraitName> asap_forward_order() { return kAsapForward; }

std::span<const TraitName> feedback_forward_order() { return kFeedbackForward; }

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kAsap:
      return "asap";
    case Family::kFeedback:
      return "feedback";
    case Family::kSynthetic:
      return "synthetic";
  }
  return "unknown";
}

std::optional<Family> family_from_string(std::string_view text) {
  if (text == "asap") return Family::kAsap;
  if (text == "feedback") return Family::kFeedback;
  if (text == "synthetic") return Family::kSynthetic;
  return std::nullopt;
}

std::string prompt_label(PromptId prompt) {
  return prompt == kNoPrompt ? std::string("none") : std::to_string(prompt);
}

}  // namespace arts
