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

#include "arts/model/vocab.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "arts/errors.hpp"

namespace arts::model {
namespace {

constexpr std::string_view kPrefixWords[] = {"score", "the", "essay", "of", "prompt", ":"};

std::vector<std::string> reserved_tokens(ScoreRange literal_range) {
  std::vector<std::string> tokens{"<pad>", "<bos>", "<eos>", "<unk>"};
  for (auto trait : all_traits()) tokens.emplace_back(surface(trait));
  tokens.emplace_back(codec::kNanLiteral);
  tokens.emplace_back(",");
  for (int v = literal_range.min; v <= literal_range.max; ++v) {
    tokens.push_back(std::to_string(v));
  }
  for (auto word : kPrefixWords) {
    if (std::find(tokens.begin(), tokens.end(), word) == tokens.end()) {
      tokens.emplace_back(word);
    }
  }
  return tokens;
}

}  // namespace

std::vector<std::string> tokenize_source(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isspace(u)) {
      flush();
    } else if (u < 128 && std::ispunct(u)) {
      flush();
      tokens.emplace_back(1, c);
    } else {
      current.push_back(c);
    }
  }
  flush();
  return tokens;
}

Vocab Vocab::build(std::span<const std::string> texts, int min_freq,
                   ScoreRange literal_range) {
  Vocab vocab;
  vocab.tokens_ = reserved_tokens(literal_range);
  vocab.index();

  std::map<std::string, int> counts;
  for (const auto& text : texts) {
    for (auto& token : tokenize_source(text)) ++counts[token];
  }
  std::vector<std::pair<std::string, int>> words;
  for (auto& [word, count] : counts) {
    if (count >= min_freq && !vocab.contains(word)) words.emplace_back(word, count);
  }
  std::stable_sort(words.begin(), words.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (auto& [word, count] : words) vocab.tokens_.push_back(word);
  vocab.index();
  return vocab;
}

Vocab Vocab::build(const corpus::Corpus& corpus, int min_freq) {
  std::vector<std::string> texts;
  texts.reserve(corpus.essays.size());
  for (const auto& essay : corpus.essays) texts.push_back(essay.text);
  return build(texts, min_freq, corpus.global_range());
}

Vocab Vocab::from_tokens(std::vector<std::string> tokens) {
  Vocab vocab;
  vocab.tokens_ = std::move(tokens);
  vocab.index();
  if (vocab.ids_.size() != vocab.tokens_.size()) {
    throw DataError("vocabulary contains duplicate tokens");
  }
  if (vocab.size() <= kUnk || vocab.token(kPad) != "<pad>" || vocab.token(kBos) != "<bos>" ||
      vocab.token(kEos) != "<eos>" || vocab.token(kUnk) != "<unk>") {
    throw DataError("vocabulary special tokens are not in their reserved slots");
  }
  return vocab;
}

void Vocab::index() {
  ids_.clear();
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    ids_.emplace(tokens_[i], static_cast<int>(i));
  }
}

int Vocab::id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnk : it->second;
}

bool Vocab::contains(std::string_view token) const {
  return ids_.count(std::string(token)) != 0;
}

const std::string& Vocab::token(int id) const {
  if (id < 0 || id >= size()) throw InputError("token id out of range: " + std::to_string(id));
  return tokens_[static_cast<std::size_t>(id)];
}

Vocab::Encoded Vocab::encode_source(std::string_view text, int max_len) const {
  Encoded out;
  for (const auto& token : tokenize_source(text)) out.ids.push_back(id(token));
  const auto budget = static_cast<std::size_t>(std::max(max_len - 1, 0));
  if (out.ids.size() > budget) {
    out.ids.resize(budget);
    out.truncated = true;
  }
  out.ids.push_back(kEos);
  return out;
}

std::vector<int> Vocab::encode_target(std::span<const codec::TargetPair> pairs) const {
  std::vector<int> ids;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i > 0) ids.push_back(id(","));
    ids.push_back(id(surface(pairs[i].trait)));
    ids.push_back(pairs[i].value ? id(std::to_string(*pairs[i].value))
                                 : id(codec::kNanLiteral));
  }
  ids.push_back(kEos);
  return ids;
}

std::string Vocab::decode(std::span<const int> ids) const {
  std::string out;
  for (int id : ids) {
    if (id == kEos) break;
    if (id == kPad || id == kBos) continue;
    const std::string& tok = token(id);
    if (tok == ",") {
      out += ",";
      continue;
    }
    if (!out.empty()) out += ' ';
    out += tok;
  }
  return out;
}

}  // namespace arts::model
