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

#include "arts/corpus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "arts/diagnostics.hpp"
#include "arts/errors.hpp"
#include "arts/rng.hpp"
#include "arts/tabular.hpp"

namespace arts::corpus {
namespace {

using json = nlohmann::json;
using T = TraitName;

constexpr std::array<int, 8> kAsapCounts{1785, 1800, 1726, 1772,
                                         1805, 1800, 1569, 723};

std::vector<TraitName> table_traits(PromptId prompt) {
  switch (prompt) {
    case 1:
    case 2:
      return {T::kOverall, T::kContent, T::kWordChoice, T::kOrganization,
              T::kSentenceFluency, T::kConventions};
    case 3:
    case 4:
    case 5:
    case 6:
      return {T::kOverall, T::kContent, T::kPromptAdherence, T::kNarrativity,
              T::kLanguage};
    case 7:
      return {T::kOverall, T::kContent, T::kOrganization, T::kConventions,
              T::kStyle};
    case 8:
      return {T::kOverall, T::kContent, T::kWordChoice, T::kOrganization,
              T::kSentenceFluency, T::kConventions, T::kVoice};
    default:
      return {};
  }
}

// ASAP rater trait column k (1-based) for prompts 7 and 8.
std::vector<TraitName> asap_rater_traits(PromptId prompt) {
  if (prompt == 7) {
    return {T::kContent, T::kOrganization, T::kStyle, T::kConventions};
  }
  return {T::kContent, T::kOrganization, T::kVoice, T::kWordChoice,
          T::kSentenceFluency, T::kConventions};
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<int> parse_integer_score(std::string_view text) {
  auto value = parse_number(text);
  if (!value || *value != std::floor(*value)) return std::nullopt;
  return static_cast<int>(*value);
}

std::string cell_error(const std::string& essay_id, std::string_view column,
                       std::string_view what) {
  return "essay " + essay_id + ", column '" + std::string(column) + "': " +
         std::string(what);
}

std::optional<std::size_t> find_trait_column(const Table& table, TraitName trait) {
  const auto spelled = std::string(surface(trait));
  std::string compact = spelled;
  std::erase(compact, ' ');
  std::string snake = spelled;
  std::replace(snake.begin(), snake.end(), ' ', '_');
  return table.find_column({spelled, compact, snake, short_label(trait)});
}

void check_range(const Essay& essay, const PromptSpec& spec) {
  for (const auto& [trait, value] : essay.gold.scores) {
    if (!value) continue;
    const auto& range = spec.range(trait);
    if (!range.contains(*value)) {
      throw DataError(cell_error(essay.essay_id, surface(trait),
                                 "score " + std::to_string(*value) +
                                     " outside range [" + std::to_string(range.min) +
                                     ", " + std::to_string(range.max) + "]"));
    }
  }
}

ScoreRange parse_range_entry(const json& entry, double scale, std::string_view where) {
  if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
      !entry[1].is_number()) {
    throw ConfigError("range entry for " + std::string(where) +
                      " must be [min, max]");
  }
  ScoreRange range{integerize(entry[0].get<double>(), static_cast<int>(scale)),
                   integerize(entry[1].get<double>(), static_cast<int>(scale))};
  if (range.min >= range.max) {
    throw ConfigError("range for " + std::string(where) + " must have min < max");
  }
  return range;
}

std::vector<std::string> read_id_list(const std::filesystem::path& path) {
  std::vector<std::string> ids;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    auto id = trim(line);
    if (!id.empty()) ids.emplace_back(id);
  }
  return ids;
}

// Moves every 8th essay of each prompt's pool into dev. Pools of 2-7 essays
// still give up their last essay so dev is never empty when it can exist.
void carve_dev(const Corpus& corpus, FoldAssignment& fold) {
  std::map<PromptId, std::vector<std::string>> pools;
  for (const auto& id : fold.train) {
    const Essay* essay = corpus.find(id);
    pools[essay ? essay->prompt_id : kNoPrompt].push_back(id);
  }
  fold.train.clear();
  for (auto& [prompt, ids] : pools) {
    bool took_any = false;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i % 8 == 7) {
        fold.dev.push_back(ids[i]);
        took_any = true;
      } else {
        fold.train.push_back(ids[i]);
      }
    }
    if (!took_any && ids.size() >= 2) {
      fold.dev.push_back(fold.train.back());
      fold.train.pop_back();
    }
  }
}

json score_to_json(const ScoreValue& value) {
  return value ? json(*value) : json(nullptr);
}

}  // namespace

bool PromptSpec::has(TraitName trait) const {
  return std::find(traits.begin(), traits.end(), trait) != traits.end();
}

const ScoreRange& PromptSpec::range(TraitName trait) const {
  auto it = ranges.find(trait);
  if (it == ranges.end()) {
    throw LookupError("trait " + std::string(surface(trait)) +
                      " is not rated for prompt " + prompt_label(prompt_id));
  }
  return it->second;
}

const PromptSpec& Corpus::spec(PromptId prompt) const {
  auto it = specs.find(prompt);
  if (it == specs.end()) {
    throw LookupError("no prompt spec for prompt " + prompt_label(prompt));
  }
  return it->second;
}

const Essay* Corpus::find(const std::string& essay_id) const {
  // Linear scans are fine at corpus sizes in use; callers on hot paths build
  // their own index.
  for (const auto& essay : essays) {
    if (essay.essay_id == essay_id) return &essay;
  }
  return nullptr;
}

ScoreRange Corpus::global_range() const {
  ScoreRange global{std::numeric_limits<int>::max(), std::numeric_limits<int>::min()};
  for (const auto& [prompt, spec] : specs) {
    for (const auto& [trait, range] : spec.ranges) {
      global.min = std::min(global.min, range.min);
      global.max = std::max(global.max, range.max);
    }
  }
  if (global.min > global.max) return {0, 0};
  return global;
}

RangeConfig RangeConfig::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

RangeConfig RangeConfig::parse(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("range config is not valid JSON: ") + e.what());
  }
  RangeConfig config;
  if (root.contains("asap")) {
    for (const auto& [prompt_key, traits] : root["asap"].items()) {
      int prompt = 0;
      auto [ptr, ec] = std::from_chars(prompt_key.data(),
                                       prompt_key.data() + prompt_key.size(), prompt);
      if (ec != std::errc() || prompt < 1) {
        throw ConfigError("range config: bad prompt key '" + prompt_key + "'");
      }
      for (const auto& [trait_key, entry] : traits.items()) {
        auto trait = trait_from_string(trait_key);
        if (!trait) throw ConfigError("range config: unknown trait '" + trait_key + "'");
        config.asap_[prompt][*trait] =
            parse_range_entry(entry, 1, "prompt " + prompt_key + " " + trait_key);
      }
    }
  }
  if (root.contains("feedback")) {
    const auto& feedback = root["feedback"];
    config.feedback_scale_ = feedback.value("scale", 2);
    if (config.feedback_scale_ < 1) throw ConfigError("feedback scale must be >= 1");
    if (feedback.contains("traits")) {
      for (const auto& [trait_key, entry] : feedback["traits"].items()) {
        auto trait = trait_from_string(trait_key);
        if (!trait) throw ConfigError("range config: unknown trait '" + trait_key + "'");
        config.feedback_[*trait] =
            parse_range_entry(entry, config.feedback_scale_, "feedback " + trait_key);
      }
    }
  }
  return config;
}

std::optional<ScoreRange> RangeConfig::asap_range(PromptId prompt, TraitName trait) const {
  auto p = asap_.find(prompt);
  if (p == asap_.end()) return std::nullopt;
  auto t = p->second.find(trait);
  if (t == p->second.end()) return std::nullopt;
  return t->second;
}

std::optional<ScoreRange> RangeConfig::feedback_range(TraitName trait) const {
  auto t = feedback_.find(trait);
  if (t == feedback_.end()) return std::nullopt;
  return t->second;
}

PromptSpec prompt_spec(PromptId prompt, const RangeConfig& ranges) {
  PromptSpec spec;
  spec.prompt_id = prompt;
  if (prompt == kNoPrompt) {
    auto order = feedback_forward_order();
    spec.traits.assign(order.begin(), order.end());
    for (auto trait : spec.traits) {
      auto range = ranges.feedback_range(trait);
      if (!range) {
        throw LookupError("range config has no feedback entry for " +
                          std::string(surface(trait)));
      }
      spec.ranges[trait] = *range;
    }
    return spec;
  }
  spec.traits = table_traits(prompt);
  if (spec.traits.empty()) {
    throw LookupError("unknown prompt id " + std::to_string(prompt));
  }
  spec.essay_count_expected = kAsapCounts[static_cast<std::size_t>(prompt - 1)];
  for (auto trait : spec.traits) {
    auto range = ranges.asap_range(prompt, trait);
    if (!range) {
      throw LookupError("range config has no entry for prompt " +
                        std::to_string(prompt) + " " + std::string(surface(trait)));
    }
    spec.ranges[trait] = *range;
  }
  return spec;
}

std::span<const int> asap_expected_counts() { return kAsapCounts; }

int integerize(double value, int scale) {
  const double scaled = value * scale;
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9) {
    throw DataError("score " + std::to_string(value) + " is not a multiple of 1/" +
                    std::to_string(scale));
  }
  return static_cast<int>(rounded);
}

std::string display_score(int category, int scale) {
  if (scale == 1 || category % scale == 0) return std::to_string(category / scale);
  std::ostringstream out;
  out << static_cast<double>(category) / scale;
  return out.str();
}

Corpus load_asap_combined(const std::filesystem::path& asap_path,
                          std::span<const std::filesystem::path> asap_pp_paths,
                          const RangeConfig& ranges, LoadReport* report) {
  LoadReport local;
  LoadReport& log = report ? *report : local;

  Corpus corpus;
  corpus.family = Family::kAsap;
  auto order = asap_forward_order();
  corpus.universe.assign(order.begin(), order.end());
  for (PromptId p = 1; p <= 8; ++p) corpus.specs.emplace(p, prompt_spec(p, ranges));

  const std::string asap_name = asap_path.filename().string();
  const Table asap = Table::read(asap_path, '\t');
  const auto id_col = asap.require_column({"essay_id"}, asap_name);
  const auto set_col = asap.require_column({"essay_set"}, asap_name);
  const auto text_col = asap.require_column({"essay"}, asap_name);
  const auto overall_col = asap.require_column({"domain1_score"}, asap_name);

  // ASAP++ trait scores keyed by essay id.
  std::map<std::string, std::map<TraitName, ScoreValue>> plus;
  for (const auto& pp_path : asap_pp_paths) {
    const std::string pp_name = pp_path.filename().string();
    const Table pp = Table::read(pp_path, '\t');
    const auto pp_id = pp.require_column({"EssayID", "essay_id", "Essay ID", "ID"}, pp_name);
    std::vector<std::pair<TraitName, std::size_t>> columns;
    for (auto trait : all_traits()) {
      if (trait == T::kOverall) continue;
      if (auto col = find_trait_column(pp, trait)) columns.emplace_back(trait, *col);
    }
    if (columns.empty()) {
      throw SchemaError("no trait columns in " + pp_name);
    }
    for (const auto& row : pp.rows()) {
      if (pp_id >= row.size()) throw DataError("short row in " + pp_name);
      const std::string id(trim(row[pp_id]));
      auto& entry = plus[id];
      for (auto [trait, col] : columns) {
        const std::string_view cell = col < row.size() ? trim(row[col]) : "";
        if (cell.empty() || cell == "nan" || cell == "NaN") {
          entry[trait] = std::nullopt;
          continue;
        }
        auto value = parse_integer_score(cell);
        if (!value) {
          throw DataError(cell_error(id, pp.header()[col], "non-numeric score '" +
                                                               std::string(cell) + "'"));
        }
        entry[trait] = *value;
      }
    }
  }

  std::set<std::string> seen;
  for (const auto& row : asap.rows()) {
    const std::size_t needed = std::max({id_col, set_col, text_col, overall_col}) + 1;
    if (row.size() < needed) throw DataError("short row in " + asap_name);
    Essay essay;
    essay.essay_id = std::string(trim(row[id_col]));
    if (!seen.insert(essay.essay_id).second) {
      throw DataError("duplicate essay_id " + essay.essay_id);
    }
    auto prompt = parse_integer_score(row[set_col]);
    if (!prompt || *prompt < 1 || *prompt > 8) {
      throw DataError(cell_error(essay.essay_id, "essay_set",
                                 "unknown prompt id '" + row[set_col] + "'"));
    }
    essay.prompt_id = *prompt;
    essay.text = std::string(trim(row[text_col]));
    if (essay.text.empty()) {
      throw DataError(cell_error(essay.essay_id, "essay", "empty text"));
    }
    const PromptSpec& spec = corpus.spec(essay.prompt_id);
    essay.gold.prompt_id = essay.prompt_id;
    for (auto trait : spec.traits) essay.gold.scores[trait] = std::nullopt;

    auto overall = parse_integer_score(row[overall_col]);
    if (!overall) {
      throw DataError(cell_error(essay.essay_id, "domain1_score",
                                 "non-numeric score '" + row[overall_col] + "'"));
    }
    essay.gold.scores[T::kOverall] = *overall;

    if (essay.prompt_id >= 7) {
      const auto traits = asap_rater_traits(essay.prompt_id);
      for (std::size_t k = 0; k < traits.size(); ++k) {
        const std::string r1 = "rater1_trait" + std::to_string(k + 1);
        const std::string r2 = "rater2_trait" + std::to_string(k + 1);
        const auto c1 = asap.require_column({r1}, asap_name);
        const auto c2 = asap.require_column({r2}, asap_name);
        const std::string_view v1 = c1 < row.size() ? trim(row[c1]) : "";
        const std::string_view v2 = c2 < row.size() ? trim(row[c2]) : "";
        if (v1.empty() && v2.empty()) continue;
        auto s1 = parse_integer_score(v1);
        auto s2 = parse_integer_score(v2);
        if (!s1) throw DataError(cell_error(essay.essay_id, r1, "non-numeric score"));
        if (!s2) throw DataError(cell_error(essay.essay_id, r2, "non-numeric score"));
        essay.gold.scores[traits[k]] = *s1 + *s2;
      }
    } else {
      auto it = plus.find(essay.essay_id);
      if (it == plus.end()) {
        log.warnings.push_back("essay " + essay.essay_id + " (prompt " +
                               std::to_string(essay.prompt_id) +
                               ") has no trait row; dropped");
        ++log.dropped_rows;
        continue;
      }
      for (auto trait : spec.traits) {
        if (trait == T::kOverall) continue;
        auto value = it->second.find(trait);
        if (value != it->second.end()) essay.gold.scores[trait] = value->second;
      }
    }
    check_range(essay, spec);
    corpus.essays.push_back(std::move(essay));
  }
  for (const auto& message : log.warnings) warn(message);
  return corpus;
}

Corpus load_feedback_prize(const std::filesystem::path& path, const RangeConfig& ranges) {
  Corpus corpus;
  corpus.family = Family::kFeedback;
  corpus.score_scale = ranges.feedback_scale();
  auto order = feedback_forward_order();
  corpus.universe.assign(order.begin(), order.end());
  const PromptSpec& spec =
      corpus.specs.emplace(kNoPrompt, prompt_spec(kNoPrompt, ranges)).first->second;

  const std::string name = path.filename().string();
  const Table table = Table::read(path, ',');
  const auto id_col = table.require_column({"text_id", "essay_id"}, name);
  const auto text_col = table.require_column({"full_text", "text", "essay"}, name);
  std::vector<std::pair<TraitName, std::size_t>> columns;
  for (auto trait : spec.traits) {
    columns.emplace_back(trait, table.require_column({surface(trait)}, name));
  }

  std::set<std::string> seen;
  for (const auto& row : table.rows()) {
    Essay essay;
    essay.essay_id = id_col < row.size() ? std::string(trim(row[id_col])) : "";
    if (essay.essay_id.empty()) throw DataError("row without essay id in " + name);
    if (!seen.insert(essay.essay_id).second) {
      throw DataError("duplicate essay_id " + essay.essay_id);
    }
    essay.prompt_id = kNoPrompt;
    essay.text = text_col < row.size() ? std::string(trim(row[text_col])) : "";
    if (essay.text.empty()) throw DataError(cell_error(essay.essay_id, "full_text", "empty text"));
    essay.gold.prompt_id = kNoPrompt;
    for (auto [trait, col] : columns) {
      const std::string_view cell = col < row.size() ? trim(row[col]) : "";
      auto value = parse_number(cell);
      if (!value) {
        throw DataError(cell_error(essay.essay_id, table.header()[col],
                                   cell.empty() ? "missing score"
                                                : "non-numeric score '" + std::string(cell) + "'"));
      }
      essay.gold.scores[trait] = integerize(*value, corpus.score_scale);
    }
    check_range(essay, spec);
    corpus.essays.push_back(std::move(essay));
  }
  return corpus;
}

std::vector<FoldAssignment> make_folds(const Corpus& corpus, std::uint64_t seed) {
  std::map<PromptId, std::vector<std::string>> by_prompt;
  for (const auto& essay : corpus.essays) by_prompt[essay.prompt_id].push_back(essay.essay_id);

  Rng rng(seed);
  std::vector<FoldAssignment> folds(kFoldCount);
  for (int k = 0; k < kFoldCount; ++k) folds[k].fold_index = k;

  for (auto& [prompt, ids] : by_prompt) {
    rng.shuffle(std::span<std::string>(ids));
    for (int k = 0; k < kFoldCount; ++k) {
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (static_cast<int>(i % kFoldCount) == k) {
          folds[k].test.push_back(ids[i]);
        } else {
          folds[k].train.push_back(ids[i]);
        }
      }
    }
  }
  for (auto& fold : folds) carve_dev(corpus, fold);
  return folds;
}

std::vector<FoldAssignment> read_folds(const Corpus& corpus,
                                       const std::filesystem::path& dir) {
  std::set<std::string> known;
  for (const auto& essay : corpus.essays) known.insert(essay.essay_id);

  std::vector<FoldAssignment> folds;
  for (int k = 0; k < kFoldCount; ++k) {
    const auto fold_dir = dir / ("fold_" + std::to_string(k));
    FoldAssignment fold;
    fold.fold_index = k;
    fold.train = read_id_list(fold_dir / "train_ids.txt");
    fold.test = read_id_list(fold_dir / "test_ids.txt");
    const bool has_dev = std::filesystem::exists(fold_dir / "dev_ids.txt");
    if (has_dev) fold.dev = read_id_list(fold_dir / "dev_ids.txt");

    std::set<std::string> roles;
    for (const auto* list : {&fold.train, &fold.dev, &fold.test}) {
      for (const auto& id : *list) {
        if (!known.count(id)) {
          throw DataError("split file for fold " + std::to_string(k) +
                          " references unknown essay_id " + id);
        }
        if (!roles.insert(id).second) {
          throw DataError("essay_id " + id + " appears in two roles in fold " +
                          std::to_string(k));
        }
      }
    }
    if (!has_dev) carve_dev(corpus, fold);
    folds.push_back(std::move(fold));
  }
  return folds;
}

void write_folds(std::span<const FoldAssignment> folds, const std::filesystem::path& dir) {
  for (const auto& fold : folds) {
    const auto fold_dir = dir / ("fold_" + std::to_string(fold.fold_index));
    auto join = [](const std::vector<std::string>& ids) {
      std::string out;
      for (const auto& id : ids) out += id + "\n";
      return out;
    };
    write_file(fold_dir / "train_ids.txt", join(fold.train));
    write_file(fold_dir / "dev_ids.txt", join(fold.dev));
    write_file(fold_dir / "test_ids.txt", join(fold.test));
  }
}

std::string serialize(const Corpus& corpus) {
  json header;
  header["family"] = family_name(corpus.family);
  header["score_scale"] = corpus.score_scale;
  json universe = json::array();
  for (auto trait : corpus.universe) universe.push_back(surface(trait));
  header["universe"] = universe;
  json specs = json::array();
  for (const auto& [prompt, spec] : corpus.specs) {
    json s;
    s["prompt_id"] = prompt;
    json traits = json::array();
    json ranges = json::object();
    for (auto trait : spec.traits) {
      traits.push_back(surface(trait));
      const auto& r = spec.range(trait);
      ranges[std::string(surface(trait))] = {r.min, r.max};
    }
    s["traits"] = traits;
    s["ranges"] = ranges;
    if (spec.essay_count_expected) s["essay_count_expected"] = *spec.essay_count_expected;
    specs.push_back(s);
  }
  header["specs"] = specs;

  std::string out = header.dump() + "\n";
  for (const auto& essay : corpus.essays) {
    json record;
    record["essay_id"] = essay.essay_id;
    record["prompt_id"] = essay.prompt_id;
    record["text"] = essay.text;
    json gold = json::object();
    for (const auto& [trait, value] : essay.gold.scores) {
      gold[std::string(surface(trait))] = score_to_json(value);
    }
    record["gold"] = gold;
    out += record.dump() + "\n";
  }
  return out;
}

Corpus deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty corpus file");
  Corpus corpus;
  try {
    const json header = json::parse(line);
    auto family = family_from_string(header.at("family").get<std::string>());
    if (!family) throw DataError("unknown corpus family");
    corpus.family = *family;
    corpus.score_scale = header.value("score_scale", 1);
    for (const auto& name : header.at("universe")) {
      auto trait = trait_from_string(name.get<std::string>());
      if (!trait) throw DataError("unknown trait in corpus header");
      corpus.universe.push_back(*trait);
    }
    for (const auto& s : header.at("specs")) {
      PromptSpec spec;
      spec.prompt_id = s.at("prompt_id").get<int>();
      for (const auto& name : s.at("traits")) {
        auto trait = trait_from_string(name.get<std::string>());
        if (!trait) throw DataError("unknown trait in corpus spec");
        spec.traits.push_back(*trait);
        const auto& r = s.at("ranges").at(name.get<std::string>());
        spec.ranges[*trait] = ScoreRange{r.at(0).get<int>(), r.at(1).get<int>()};
      }
      if (s.contains("essay_count_expected")) {
        spec.essay_count_expected = s["essay_count_expected"].get<int>();
      }
      corpus.specs.emplace(spec.prompt_id, std::move(spec));
    }
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      const json record = json::parse(line);
      Essay essay;
      essay.essay_id = record.at("essay_id").get<std::string>();
      essay.prompt_id = record.at("prompt_id").get<int>();
      essay.text = record.at("text").get<std::string>();
      essay.gold.prompt_id = essay.prompt_id;
      for (const auto& [name, value] : record.at("gold").items()) {
        auto trait = trait_from_string(name);
        if (!trait) throw DataError("unknown trait '" + name + "' in corpus record");
        essay.gold.scores[*trait] =
            value.is_null() ? ScoreValue{} : ScoreValue{value.get<int>()};
      }
      corpus.essays.push_back(std::move(essay));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed corpus file: ") + e.what());
  }
  validate(corpus);
  return corpus;
}

void save(const Corpus& corpus, const std::filesystem::path& path) {
  write_file(path, serialize(corpus));
}

Corpus load(const std::filesystem::path& path) { return deserialize(read_file(path)); }

void validate(const Corpus& corpus) {
  std::set<std::string> ids;
  for (const auto& essay : corpus.essays) {
    if (!ids.insert(essay.essay_id).second) {
      throw DataError("duplicate essay_id " + essay.essay_id);
    }
    if (essay.text.empty()) throw DataError("essay " + essay.essay_id + " has empty text");
    const PromptSpec& spec = corpus.spec(essay.prompt_id);
    if (essay.gold.scores.size() != spec.traits.size()) {
      throw DataError("essay " + essay.essay_id + " gold key set differs from prompt spec");
    }
    for (auto trait : spec.traits) {
      if (!essay.gold.scores.count(trait)) {
        throw DataError("essay " + essay.essay_id + " lacks gold entry for " +
                        std::string(surface(trait)));
      }
    }
    check_range(essay, spec);
  }
}

}  // namespace arts::corpus
