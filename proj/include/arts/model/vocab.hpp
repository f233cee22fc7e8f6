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

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "arts/codec.hpp"
#include "arts/corpus.hpp"
#include "arts/scores.hpp"

namespace arts::model {

// Word-level vocabulary shared by encoder and decoder. Trait surface names,
// score literals, "nan" and "," are reserved whole tokens so every score
// sequence encodes without UNK.
class Vocab {
 public:
  static constexpr int kPad = 0;
  static constexpr int kBos = 1;
  static constexpr int kEos = 2;
  static constexpr int kUnk = 3;

  // Reserved tokens plus source words seen at least `min_freq` times, in
  // frequency-descending then lexicographic order.
  static Vocab build(std::span<const std::string> texts, int min_freq,
                     ScoreRange literal_range);
  static Vocab build(const corpus::Corpus& corpus, int min_freq);
  static Vocab from_tokens(std::vector<std::string> tokens);

  int size() const { return static_cast<int>(tokens_.size()); }
  // UNK when absent.
  int id(std::string_view token) const;
  bool contains(std::string_view token) const;
  const std::string& token(int id) const;
  const std::vector<std::string>& tokens() const { return tokens_; }

  struct Encoded {
    std::vector<int> ids;
    bool truncated = false;
  };
  // Word tokens followed by EOS, cut to at most max_len ids (EOS kept).
  Encoded encode_source(std::string_view text, int max_len) const;
  // Pair tokens with "," separators, followed by EOS.
  std::vector<int> encode_target(std::span<const codec::TargetPair> pairs) const;
  // Inverse of encode_target for well-formed output; stops at EOS, skips
  // PAD/BOS, attaches "," to the previous token.
  std::string decode(std::span<const int> ids) const;

  bool operator==(const Vocab& other) const { return tokens_ == other.tokens_; }

 private:
  void index();

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

// Splits on whitespace and detaches ASCII punctuation into single tokens.
std::vector<std::string> tokenize_source(std::string_view text);

}  // namespace arts::model
