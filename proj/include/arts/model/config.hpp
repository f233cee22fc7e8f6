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
#include <cstdint>

#include <nlohmann/json.hpp>

namespace arts::model {

struct ModelConfig {
  int d_model = 64;
  int n_heads = 4;
  int n_enc_layers = 2;
  int n_dec_layers = 2;
  int ffn_dim = 128;
  int max_src_len = 256;
  int max_tgt_len = 40;
  double dropout_rate = 0.0;
  std::uint64_t seed = 1;
  // Floating-point width of the parameters and activations. Only 64 is
  // implemented.
  int precision = 64;

  // Throws ConfigError on an inconsistent configuration.
  void validate() const;

  bool operator==(const ModelConfig&) const = default;
};

// Closed-form parameter count, with V = vocab_size, d = d_model,
// f = ffn_dim, Le/Ld = encoder/decoder layers:
//   attention block  A = 4d^2 + 4d            (Wq,Wk,Wv,Wo + biases)
//   feed-forward     F = 2df + f + d
//   layer norm       N = 2d                   (gain + bias)
//   total = Vd                                (shared embedding)
//         + Le (2N + A + F) + N               (encoder + final norm)
//         + Ld (3N + 2A + F) + N              (decoder + final norm)
//         + dV + V                            (output projection)
std::size_t parameter_count(const ModelConfig& config, int vocab_size);

void to_json(nlohmann::json& j, const ModelConfig& config);
void from_json(const nlohmann::json& j, ModelConfig& config);

}  // namespace arts::model
