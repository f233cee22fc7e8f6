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

#include "arts/harness/synthetic.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "arts/errors.hpp"
#include "arts/model/vocab.hpp"
#include "arts/rng.hpp"

namespace arts::harness {

void SyntheticSpec::validate() const {
  if (n_essays < 1) throw ConfigError("synthetic n_essays must be positive");
  if (vocab_size < 1) throw ConfigError("synthetic vocab_size must be positive");
  if (traits.empty()) throw ConfigError("synthetic spec needs at least one trait");
  if (range.min < 0 || range.min >= range.max) {
    throw ConfigError("synthetic range must satisfy 0 <= min < max");
  }
  for (std::size_t i = 0; i < traits.size(); ++i) {
    if (traits[i] == TraitName::kOverall) {
      throw ConfigError("Overall is derived and cannot be a synthetic marker trait");
    }
    if (std::find(traits.begin(), traits.begin() + i, traits[i]) != traits.begin() + i) {
      throw ConfigError("duplicate synthetic trait " + std::string(surface(traits[i])));
    }
  }
  if (essay_length < static_cast<int>(traits.size()) * range.max) {
    throw ConfigError("synthetic essay_length is shorter than the largest marker count");
  }
  if (noise_rate < 0.0 || noise_rate > 1.0) {
    throw ConfigError("synthetic noise_rate must be in [0, 1]");
  }
}

void to_json(nlohmann::json& j, const SyntheticSpec& s) {
  std::vector<std::string> traits;
  for (auto t : s.traits) traits.emplace_back(surface(t));
  j = nlohmann::json{{"n_essays", s.n_essays},
                     {"vocab_size", s.vocab_size},
                     {"essay_length", s.essay_length},
                     {"traits", traits},
                     {"range", {s.range.min, s.range.max}},
                     {"noise_rate", s.noise_rate},
                     {"seed", s.seed}};
}

void from_json(const nlohmann::json& j, SyntheticSpec& s) {
  SyntheticSpec defaults;
  s.n_essays = j.value("n_essays", defaults.n_essays);
  s.vocab_size = j.value("vocab_size", defaults.vocab_size);
  s.essay_length = j.value("essay_length", defaults.essay_length);
  s.noise_rate = j.value("noise_rate", defaults.noise_rate);
  s.seed = j.value("seed", defaults.seed);
  s.traits = defaults.traits;
  if (j.contains("traits")) {
    s.traits.clear();
    for (const auto& name : j.at("traits")) {
      auto trait = trait_from_string(name.get<std::string>());
      if (!trait) throw ConfigError("unknown synthetic trait '" + name.get<std::string>() + "'");
      s.traits.push_back(*trait);
    }
  }
  s.range = defaults.range;
  if (j.contains("range")) {
    const auto& r = j.at("range");
    if (!r.is_array() || r.size() != 2) throw ConfigError("synthetic range must be [min, max]");
    s.range = {r[0].get<int>(), r[1].get<int>()};
  }
}

std::string marker_token(TraitName trait) {
  std::string name = "mk";
  for (char c : surface(trait)) {
    if (c != ' ') name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return name;
}

int rounded_mean(const std::vector<int>& scores) {
  // floor(sum / n + 1/2) in integers.
  const int n = static_cast<int>(scores.size());
  int sum = 0;
  for (int s : scores) sum += s;
  const int twice = 2 * sum + n;
  const int denominator = 2 * n;
  return twice >= 0 ? twice / denominator : -((-twice + denominator - 1) / denominator);
}

corpus::Corpus make_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  corpus::Corpus out;
  out.family = Family::kSynthetic;
  for (auto t : asap_forward_order()) {
    if (t == TraitName::kOverall ||
        std::find(spec.traits.begin(), spec.traits.end(), t) != spec.traits.end()) {
      out.universe.push_back(t);
    }
  }
  // Traits outside the ASAP order (e.g. Cohesion) go before Overall.
  for (auto t : spec.traits) {
    if (std::find(out.universe.begin(), out.universe.end(), t) == out.universe.end()) {
      out.universe.insert(out.universe.end() - 1, t);
    }
  }

  corpus::PromptSpec prompt;
  prompt.prompt_id = 1;
  prompt.traits.push_back(TraitName::kOverall);
  prompt.traits.insert(prompt.traits.end(), spec.traits.begin(), spec.traits.end());
  for (auto t : prompt.traits) prompt.ranges[t] = spec.range;
  prompt.essay_count_expected = spec.n_essays;
  out.specs.emplace(prompt.prompt_id, prompt);

  Rng rng(spec.seed);
  const int width = static_cast<int>(std::to_string(spec.n_essays).size());
  for (int i = 0; i < spec.n_essays; ++i) {
    corpus::Essay essay;
    std::string id = std::to_string(i);
    essay.essay_id = "syn" + std::string(width - id.size(), '0') + id;
    essay.prompt_id = prompt.prompt_id;
    essay.gold.prompt_id = prompt.prompt_id;

    std::vector<std::string> bag;
    std::vector<int> scores;
    for (auto t : spec.traits) {
      const int score = rng.uniform_int(spec.range.min, spec.range.max);
      scores.push_back(score);
      essay.gold.scores[t] = score;
      bag.insert(bag.end(), score, marker_token(t));
    }
    int overall = rounded_mean(scores);
    if (spec.noise_rate > 0.0 && rng.uniform() < spec.noise_rate) {
      overall = rng.uniform_int(spec.range.min, spec.range.max);
    }
    essay.gold.scores[TraitName::kOverall] = overall;
    while (static_cast<int>(bag.size()) < spec.essay_length) {
      bag.push_back("w" + std::to_string(rng.below(spec.vocab_size)));
    }
    rng.shuffle(std::span<std::string>(bag));
    for (std::size_t k = 0; k < bag.size(); ++k) {
      if (k) essay.text += ' ';
      essay.text += bag[k];
    }
    out.essays.push_back(std::move(essay));
  }
  return out;
}

std::string describe(const SyntheticSpec& spec) {
  std::ostringstream text;
  text << spec.n_essays << " essays of " << spec.essay_length
       << " tokens; each trait in {";
  for (std::size_t i = 0; i < spec.traits.size(); ++i) {
    text << (i ? ", " : "") << surface(spec.traits[i]);
  }
  text << "} scores " << spec.range.min << "-" << spec.range.max
       << " uniformly and its marker token appears exactly score times; the rest are "
       << "filler words w0..w" << spec.vocab_size - 1
       << "; Overall = round-half-up mean of the other traits";
  if (spec.noise_rate > 0.0) {
    text << ", replaced by a uniform draw with probability " << spec.noise_rate;
  }
  text << "; seed " << spec.seed << ".";
  return text.str();
}

TraitScoreMap decode_markers(std::string_view text, const SyntheticSpec& spec) {
  const auto tokens = model::tokenize_source(text);
  TraitScoreMap map;
  map.prompt_id = 1;
  std::vector<int> scores;
  for (auto t : spec.traits) {
    const auto marker = marker_token(t);
    const int count = static_cast<int>(std::count(tokens.begin(), tokens.end(), marker));
    map.scores[t] = count;
    scores.push_back(count);
  }
  map.scores[TraitName::kOverall] = rounded_mean(scores);
  return map;
}

}  // namespace arts::harness
