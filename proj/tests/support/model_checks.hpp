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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "arts/model/transformer.hpp"
#include "arts/model/vocab.hpp"
#include "arts/rng.hpp"
#include "oracles/finite_difference.hpp"

// Checks shared by the unit tests and the acceptance binary.
namespace arts::testing {

inline model::ModelConfig tiny_config() {
  model::ModelConfig config;
  config.d_model = 8;
  config.n_heads = 2;
  config.n_enc_layers = 1;
  config.n_dec_layers = 1;
  config.ffn_dim = 16;
  config.max_src_len = 12;
  config.max_tgt_len = 8;
  config.seed = 5;
  return config;
}

// Token ids in [4, vocab) so no special id appears mid-sequence.
inline std::vector<int> random_ids(Rng& rng, int length, int vocab) {
  std::vector<int> ids(length);
  for (auto& id : ids) id = rng.uniform_int(4, vocab - 1);
  return ids;
}

inline model::Example random_example(Rng& rng, int vocab, int max_src, int max_tgt) {
  model::Example example;
  example.src = random_ids(rng, rng.uniform_int(2, max_src), vocab);
  example.tgt = random_ids(rng, rng.uniform_int(1, max_tgt - 1), vocab);
  example.tgt.push_back(model::Vocab::kEos);
  return example;
}

struct GradientCheck {
  double max_relative_error = 0;
  std::size_t coordinates = 0;
};

// Analytic gradient of the summed token loss vs central differences of the
// forward-only loss, on a model whose every parameter (output projection
// included) is drawn at random.
inline GradientCheck gradient_check(std::uint64_t seed, std::size_t coordinates,
                                    double epsilon = 1e-4) {
  constexpr int kVocab = 20;
  const auto config = tiny_config();
  Rng rng(seed);
  model::Seq2SeqModel net(config, kVocab);
  for (auto& p : net.parameters()) p = rng.uniform(-0.5, 0.5);

  std::vector<model::Example> batch;
  for (int i = 0; i < 2; ++i) {
    batch.push_back(random_example(rng, kVocab, config.max_src_len, config.max_tgt_len));
  }
  std::vector<double> gradient(net.parameters().size());
  net.loss_and_gradient(batch, model::Reduction::kSum, gradient);

  auto params = net.parameters();
  const auto forward = [&] { return net.batch_loss(batch).sum; };
  GradientCheck result;
  for (std::size_t n = 0; n < coordinates; ++n) {
    const auto index = static_cast<std::size_t>(rng.below(params.size()));
    const double numeric = oracle::central_difference(params, index, forward, epsilon);
    result.max_relative_error = std::max(
        result.max_relative_error, oracle::relative_error(gradient[index], numeric));
    ++result.coordinates;
  }
  return result;
}

// Perturbs target positions after t and compares the logits at positions
// <= t bit for bit. Returns the number of triples that differed.
inline int causal_mask_violations(const model::Seq2SeqModel& net, int triples,
                                  std::uint64_t seed) {
  const auto& config = net.config();
  const int vocab = net.vocab_size();
  Rng rng(seed);
  int violations = 0;
  for (int trial = 0; trial < triples; ++trial) {
    const auto src = random_ids(rng, rng.uniform_int(1, std::min(config.max_src_len, 40)), vocab);
    const int len = rng.uniform_int(2, config.max_tgt_len);
    auto tgt = random_ids(rng, len, vocab);
    tgt[0] = model::Vocab::kBos;
    const int t = rng.uniform_int(0, len - 2);
    auto changed = tgt;
    for (int pos = t + 1; pos < len; ++pos) {
      int replacement = rng.uniform_int(4, vocab - 1);
      if (replacement == changed[pos]) replacement = replacement == 4 ? 5 : 4;
      changed[pos] = replacement;
    }
    const auto a = net.logits(src, tgt);
    const auto b = net.logits(src, changed);
    const std::size_t bytes = static_cast<std::size_t>(t + 1) * a.cols() * sizeof(double);
    if (std::memcmp(a.data(), b.data(), bytes) != 0) ++violations;
  }
  return violations;
}

}  // namespace arts::testing
