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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "arts/model/config.hpp"
#include "arts/rng.hpp"

namespace arts::model {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// One teacher-forced pair. `tgt` ends with EOS and carries no BOS; the
// decoder input is BOS followed by tgt without its last token.
struct Example {
  std::vector<int> src;
  std::vector<int> tgt;
};

enum class Reduction {
  // Mean over all non-PAD target tokens of the batch.
  kMean,
  // Sum over all non-PAD target tokens of the batch.
  kSum,
};

struct TokenLoss {
  double sum = 0.0;
  std::size_t tokens = 0;

  // 0 for an all-PAD target.
  double mean() const { return tokens == 0 ? 0.0 : sum / static_cast<double>(tokens); }
};

// Summed cross-entropy of each row of `logits` against `targets`, skipping
// PAD targets. When `dlogits` is given it receives d(sum)/d(logits).
TokenLoss token_cross_entropy(const RowMatrix& logits, std::span<const int> targets,
                              RowMatrix* dlogits = nullptr);
// Mean token cross-entropy ignoring PAD; 0 when every target is PAD.
double loss(const RowMatrix& logits, std::span<const int> targets);

// Row-wise softmax, stable under large logits.
RowMatrix softmax_rows(const RowMatrix& logits);

enum class ParameterKind { kEmbedding, kWeight, kBias, kNormGain, kNormBias, kOutputWeight };

struct ParameterView {
  std::string name;
  ParameterKind kind;
  std::size_t offset = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const { return rows * cols; }
};

namespace detail {
struct LinearSlot {
  std::size_t w = 0;
  std::size_t b = 0;
  int in = 0;
  int out = 0;
};
struct NormSlot {
  std::size_t g = 0;
  std::size_t b = 0;
  int dim = 0;
};
struct AttentionSlot {
  LinearSlot q, k, v, o;
};
struct FeedForwardSlot {
  LinearSlot up, down;
};
struct EncoderSlot {
  NormSlot ln_attn;
  AttentionSlot attn;
  NormSlot ln_ff;
  FeedForwardSlot ff;
};
struct DecoderSlot {
  NormSlot ln_self;
  AttentionSlot self;
  NormSlot ln_cross;
  AttentionSlot cross;
  NormSlot ln_ff;
  FeedForwardSlot ff;
};
struct Layout {
  std::size_t embedding = 0;
  std::vector<EncoderSlot> encoder;
  NormSlot encoder_norm;
  std::vector<DecoderSlot> decoder;
  NormSlot decoder_norm;
  LinearSlot output;
  std::size_t total = 0;
  std::vector<ParameterView> views;
};
struct EncoderCache;
struct DecoderCache;
}  // namespace detail

// Pre-LayerNorm encoder-decoder transformer with a shared token embedding,
// fixed sinusoidal positions, GELU feed-forward blocks and a causal decoder.
// Parameters live in one flat vector; named views describe its layout.
class Seq2SeqModel {
 public:
  // Scaled-uniform initialization from config.seed; the output projection
  // starts at zero so an untrained model predicts the uniform distribution.
  Seq2SeqModel(ModelConfig config, int vocab_size);
  Seq2SeqModel(ModelConfig config, int vocab_size, std::vector<double> parameters);

  const ModelConfig& config() const { return config_; }
  int vocab_size() const { return vocab_size_; }
  std::span<double> parameters() { return parameters_; }
  std::span<const double> parameters() const { return parameters_; }
  const std::vector<ParameterView>& views() const { return layout_.views; }
  const ParameterView& view(std::string_view name) const;

  // Logits for every decoder position; `tgt_in` starts with BOS. Throws
  // InputError when a sequence is empty, too long, or has ids outside the
  // vocabulary.
  RowMatrix logits(std::span<const int> src, std::span<const int> tgt_in) const;

  struct Trace {
    RowMatrix logits;
    // Every attention probability matrix (per layer, per head), encoder first.
    std::vector<RowMatrix> attention;
  };
  Trace trace(std::span<const int> src, std::span<const int> tgt_in) const;

  TokenLoss batch_loss(std::span<const Example> batch) const;

  // Accumulates d(loss)/d(parameters) into `gradient` (same size as the
  // parameters, overwritten) and returns the loss under `reduction`.
  // Dropout is applied only when `dropout_rng` is non-null and the rate is
  // positive.
  double loss_and_gradient(std::span<const Example> batch, Reduction reduction,
                           std::span<double> gradient, Rng* dropout_rng = nullptr) const;

  // Argmax decoding from BOS until EOS or `max_len` generated tokens. PAD and
  // BOS are never emitted. The returned ids include the final EOS if produced.
  std::vector<int> generate_greedy(std::span<const int> src, int max_len) const;

 private:
  void check_input(std::span<const int> ids, int max_len, const char* what) const;
  RowMatrix embed(std::span<const int> ids) const;
  RowMatrix encode(std::span<const int> src, detail::EncoderCache* cache, Rng* rng) const;
  RowMatrix decode(std::span<const int> tgt_in, const RowMatrix& memory,
                   detail::DecoderCache* cache, Rng* rng) const;
  TokenLoss example_gradient(const Example& example, std::span<double> gradient,
                             Rng* rng) const;

  ModelConfig config_;
  int vocab_size_;
  detail::Layout layout_;
  std::vector<double> parameters_;
  RowMatrix positions_;
};

// Decoder input for a teacher-forced target: BOS + tgt[0..n-2].
std::vector<int> shift_right(std::span<const int> tgt);

}  // namespace arts::model
