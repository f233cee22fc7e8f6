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

#include "arts/harness/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

namespace arts::harness {

std::size_t OutOfRangeReport::total_count() const {
  std::size_t total = 0;
  for (const auto& e : entries) total += e.count;
  return total;
}

OutOfRangeReport out_of_range_analysis(std::span<const PredictionRecord> records,
                                       const std::map<PromptId, corpus::PromptSpec>& specs) {
  std::map<std::pair<PromptId, TraitName>, OutOfRangeEntry> entries;
  for (const auto& record : records) {
    auto spec_it = specs.find(record.prompt_id);
    if (spec_it == specs.end()) continue;
    const auto& spec = spec_it->second;
    for (auto trait : spec.traits) {
      auto& entry = entries[{spec.prompt_id, trait}];
      entry.prompt = spec.prompt_id;
      entry.trait = trait;
      auto it = record.parsed.scores.scores.find(trait);
      if (it == record.parsed.scores.scores.end() || !it->second) continue;
      ++entry.total;
      const auto& range = spec.range(trait);
      if (!range.contains(*it->second)) {
        ++entry.count;
        entry.examples.push_back({record.essay_id, record.fold, *it->second, range});
      }
    }
  }
  OutOfRangeReport report;
  for (auto& [key, entry] : entries) report.entries.push_back(std::move(entry));
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const OutOfRangeEntry& a, const OutOfRangeEntry& b) {
                     return a.count > b.count;
                   });
  return report;
}

namespace {

std::string example_list(const OutOfRangeEntry& entry, int scale) {
  std::string out;
  for (const auto& ex : entry.examples) {
    if (!out.empty()) out += "; ";
    out += ex.essay_id + "=" + corpus::display_score(ex.value, scale) + " not in [" +
           corpus::display_score(ex.expected.min, scale) + ", " +
           corpus::display_score(ex.expected.max, scale) + "]";
  }
  return out;
}

}  // namespace

std::string out_of_range_csv(const OutOfRangeReport& report, int score_scale) {
  std::string out = "prompt,trait,count,total,examples\n";
  for (const auto& e : report.entries) {
    out += prompt_label(e.prompt) + "," + std::string(surface(e.trait)) + "," +
           std::to_string(e.count) + "," + std::to_string(e.total) + ",\"" +
           example_list(e, score_scale) + "\"\n";
  }
  return out;
}

std::string out_of_range_text(const OutOfRangeReport& report, int score_scale) {
  std::string out = "Out-of-range predictions: " + std::to_string(report.total_count()) + "\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-7s %-17s %6s %6s\n", "Prompt", "Trait", "Count", "Total");
  out += line;
  for (const auto& e : report.entries) {
    std::snprintf(line, sizeof line, "%-7s %-17s %6zu %6zu\n", prompt_label(e.prompt).c_str(),
                  std::string(surface(e.trait)).c_str(), e.count, e.total);
    out += line;
    if (!e.examples.empty()) out += "        " + example_list(e, score_scale) + "\n";
  }
  return out;
}

namespace {

// Position in `decoded` of the score token that follows `trait`'s name.
std::optional<std::size_t> score_position(const std::vector<int>& decoded,
                                          const model::Vocab& vocab, TraitName trait) {
  const int name = vocab.id(surface(trait));
  for (std::size_t i = 0; i + 1 < decoded.size(); ++i) {
    if (decoded[i] == name) return i + 1;
  }
  return std::nullopt;
}

// Another score literal (or nan) to put in place of `token`.
int replacement_for(int token, const model::Vocab& vocab) {
  const std::string& text = vocab.token(token);
  const int candidates[] = {vocab.id(text == "1" ? "2" : "1"), vocab.id("nan")};
  for (int c : candidates) {
    if (c != token && c != model::Vocab::kUnk) return c;
  }
  return token;
}

model::RowMatrix probe_row(const model::Seq2SeqModel& net, std::span<const int> src,
                           const std::vector<int>& tgt_in, std::size_t row) {
  const auto probs = model::softmax_rows(net.logits(src, tgt_in));
  return probs.row(static_cast<Eigen::Index>(row));
}

}  // namespace

ConditioningCheck conditioning_sensitivity(const model::Seq2SeqModel& net,
                                           const model::Vocab& vocab,
                                           std::span<const std::vector<int>> sources,
                                           TraitName probe) {
  ConditioningCheck check;
  const int max_len = net.config().max_tgt_len;
  for (const auto& src : sources) {
    std::vector<int> decoded = net.generate_greedy(src, max_len);
    auto probe_at = score_position(decoded, vocab, probe);
    if (!probe_at || *probe_at < 2) continue;
    // The decoder input is BOS + decoded, so decoded[i] sits at input i + 1
    // and output row i predicts decoded[i].
    std::vector<int> tgt_in{model::Vocab::kBos};
    tgt_in.insert(tgt_in.end(), decoded.begin(), decoded.end());
    if (static_cast<int>(tgt_in.size()) > max_len) tgt_in.resize(max_len);
    const std::size_t row = *probe_at;
    if (row >= tgt_in.size()) continue;
    ++check.essays;
    const auto base = probe_row(net, src, tgt_in, row);

    // Earlier: the last score token decoded before the probe.
    std::optional<std::size_t> earlier;
    for (std::size_t i = 0; i + 1 < row; ++i) {
      const auto& text = vocab.token(decoded[i]);
      const bool literal = text == "nan" || (!text.empty() && std::isdigit(
                                                 static_cast<unsigned char>(text[0])));
      if (literal && i > 0) earlier = i;
    }
    if (earlier) {
      auto changed = tgt_in;
      changed[*earlier + 1] = replacement_for(decoded[*earlier], vocab);
      const auto moved = probe_row(net, src, changed, row);
      const double tv = 0.5 * (moved - base).cwiseAbs().sum();
      check.max_total_variation = std::max(check.max_total_variation, tv);
      if ((moved.array() != base.array()).any()) ++check.changed_by_earlier;
    }
    // Later: every input position after the probe row.
    if (row + 1 < tgt_in.size()) {
      auto changed = tgt_in;
      for (std::size_t i = row + 1; i < changed.size(); ++i) {
        changed[i] = replacement_for(changed[i], vocab);
      }
      const auto moved = probe_row(net, src, changed, row);
      if ((moved.array() != base.array()).any()) ++check.changed_by_later;
    }
  }
  return check;
}

}  // namespace arts::harness
