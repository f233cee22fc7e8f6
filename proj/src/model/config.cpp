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

#include "arts/model/config.hpp"

#include "arts/errors.hpp"

namespace arts::model {

void ModelConfig::validate() const {
  if (d_model <= 0 || n_heads <= 0 || ffn_dim <= 0) {
    throw ConfigError("d_model, n_heads and ffn_dim must be positive");
  }
  if (d_model % n_heads != 0) {
    throw ConfigError("d_model (" + std::to_string(d_model) +
                      ") must be divisible by n_heads (" + std::to_string(n_heads) + ")");
  }
  if (n_enc_layers < 0 || n_dec_layers < 0) throw ConfigError("layer counts must be >= 0");
  if (max_src_len < 1 || max_tgt_len < 1) throw ConfigError("max lengths must be >= 1");
  if (dropout_rate < 0.0 || dropout_rate >= 1.0) {
    throw ConfigError("dropout_rate must be in [0, 1)");
  }
  if (precision != 64) {
    throw ConfigError("precision " + std::to_string(precision) +
                      " is not supported; only 64-bit is implemented");
  }
}

std::size_t parameter_count(const ModelConfig& c, int vocab_size) {
  const std::size_t v = static_cast<std::size_t>(vocab_size);
  const std::size_t d = static_cast<std::size_t>(c.d_model);
  const std::size_t f = static_cast<std::size_t>(c.ffn_dim);
  const std::size_t attention = 4 * d * d + 4 * d;
  const std::size_t feed_forward = 2 * d * f + f + d;
  const std::size_t norm = 2 * d;
  return v * d +
         static_cast<std::size_t>(c.n_enc_layers) * (2 * norm + attention + feed_forward) +
         norm +
         static_cast<std::size_t>(c.n_dec_layers) * (3 * norm + 2 * attention + feed_forward) +
         norm + d * v + v;
}

void to_json(nlohmann::json& j, const ModelConfig& c) {
  j = nlohmann::json{{"d_model", c.d_model},         {"n_heads", c.n_heads},
                     {"n_enc_layers", c.n_enc_layers}, {"n_dec_layers", c.n_dec_layers},
                     {"ffn_dim", c.ffn_dim},         {"max_src_len", c.max_src_len},
                     {"max_tgt_len", c.max_tgt_len}, {"dropout_rate", c.dropout_rate},
                     {"seed", c.seed},               {"precision", c.precision}};
}

void from_json(const nlohmann::json& j, ModelConfig& c) {
  ModelConfig defaults;
  c.d_model = j.value("d_model", defaults.d_model);
  c.n_heads = j.value("n_heads", defaults.n_heads);
  c.n_enc_layers = j.value("n_enc_layers", defaults.n_enc_layers);
  c.n_dec_layers = j.value("n_dec_layers", defaults.n_dec_layers);
  c.ffn_dim = j.value("ffn_dim", defaults.ffn_dim);
  c.max_src_len = j.value("max_src_len", defaults.max_src_len);
  c.max_tgt_len = j.value("max_tgt_len", defaults.max_tgt_len);
  c.dropout_rate = j.value("dropout_rate", defaults.dropout_rate);
  c.seed = j.value("seed", defaults.seed);
  c.precision = j.value("precision", defaults.precision);
}

}  // namespace arts::model
