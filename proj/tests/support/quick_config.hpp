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

#include <filesystem>

#include "arts/harness/experiment.hpp"
#include "support/model_checks.hpp"

namespace arts::testing {

// A small, fast experiment: tiny model, a few optimizer steps.
inline harness::ExperimentConfig quick_config(const std::filesystem::path& out) {
  harness::ExperimentConfig config;
  config.synthetic.n_essays = 60;
  config.synthetic.essay_length = 16;
  config.synthetic.vocab_size = 10;
  config.model = tiny_config();
  config.model.max_src_len = 32;
  config.model.max_tgt_len = 40;
  config.train.max_steps = 6;
  config.train.eval_steps = 3;
  config.train.learning_rate = 1e-2;
  config.folds = {0, 1};
  config.output_dir = out.string();
  return config;
}

}  // namespace arts::testing
