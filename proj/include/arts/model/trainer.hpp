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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "arts/model/transformer.hpp"

namespace arts::model {

struct TrainConfig {
  double learning_rate = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int batch_size = 4;
  int epochs = 15;
  int eval_steps = 200;
  int patience = 2;
  // Hard cap on optimizer steps; 0 means epochs alone bound training.
  int max_steps = 0;
  std::uint64_t seed = 1;

  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

void to_json(nlohmann::json& j, const TrainConfig& config);
void from_json(const nlohmann::json& j, TrainConfig& config);

class Adam {
 public:
  Adam(std::size_t size, const TrainConfig& config);

  void step(std::span<double> parameters, std::span<const double> gradient);
  long steps() const { return steps_; }
  const std::vector<double>& first_moment() const { return m_; }
  const std::vector<double>& second_moment() const { return v_; }

 private:
  double lr_, beta1_, beta2_, epsilon_;
  long steps_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

struct ShortlistEntry {
  int step = 0;
  double dev_loss = 0.0;
  std::vector<double> parameters;
};

// Keeps the `capacity` lowest-dev-loss checkpoints seen so far, ordered by
// loss (earlier step wins ties).
class Shortlist {
 public:
  explicit Shortlist(std::size_t capacity = 2) : capacity_(capacity) {}

  void offer(int step, double dev_loss, std::span<const double> parameters);
  const std::vector<ShortlistEntry>& entries() const { return entries_; }

 private:
  std::size_t capacity_;
  std::vector<ShortlistEntry> entries_;
};

// Counts consecutive evaluations that fail to improve on the best dev loss.
class EarlyStopping {
 public:
  explicit EarlyStopping(int patience) : patience_(patience) {}

  // Returns true when training should stop after this evaluation.
  bool update(double dev_loss);
  int stale_evaluations() const { return stale_; }
  std::optional<double> best() const {
    return seen_ ? std::optional<double>(best_) : std::nullopt;
  }

 private:
  int patience_;
  int stale_ = 0;
  bool seen_ = false;
  double best_ = 0.0;
};

struct TrainLogRecord {
  int step = 0;
  double train_loss = 0.0;
  double dev_loss = 0.0;
  double learning_rate = 0.0;
};

nlohmann::json to_json(const TrainLogRecord& record);

struct TrainResult {
  int steps = 0;
  int evaluations = 0;
  bool early_stopped = false;
  int selected_step = 0;
  double selected_dev_loss = 0.0;
  std::optional<double> selected_dev_score;
  std::vector<ShortlistEntry> shortlist;
  std::vector<TrainLogRecord> log;
};

// Dev-set quality of a candidate (higher is better), e.g. mean dev QWK.
using DevScorer = std::function<double(const Seq2SeqModel&)>;
using LogSink = std::function<void(const TrainLogRecord&)>;

// Adam on shuffled mini-batches with mean token loss. Every eval_steps (and
// once at the end) the dev loss is measured; the two lowest-loss checkpoints
// are short-listed and training stops after `patience` stale evaluations or
// the epoch limit. The final parameters are the short-listed checkpoint with
// the best dev score (or lowest dev loss without a scorer).
TrainResult train(Seq2SeqModel& model, std::span<const Example> train_set,
                  std::span<const Example> dev_set, const TrainConfig& config,
                  const DevScorer& scorer = {}, const LogSink& sink = {});

}  // namespace arts::model
