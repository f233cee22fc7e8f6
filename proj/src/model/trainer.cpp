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

#include "arts/model/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "arts/errors.hpp"
#include "arts/rng.hpp"

namespace arts::model {
namespace {

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0)) throw ConfigError("learning_rate must be >= 0");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (eval_steps < 1) throw ConfigError("eval_steps must be >= 1");
  if (patience < 1) throw ConfigError("patience must be >= 1");
  if (max_steps < 0) throw ConfigError("max_steps must be >= 0");
}

void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = nlohmann::json{{"learning_rate", c.learning_rate},
                     {"beta1", c.beta1},
                     {"beta2", c.beta2},
                     {"epsilon", c.epsilon},
                     {"batch_size", c.batch_size},
                     {"epochs", c.epochs},
                     {"eval_steps", c.eval_steps},
                     {"patience", c.patience},
                     {"max_steps", c.max_steps},
                     {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, TrainConfig& c) {
  TrainConfig d;
  c.learning_rate = j.value("learning_rate", d.learning_rate);
  c.beta1 = j.value("beta1", d.beta1);
  c.beta2 = j.value("beta2", d.beta2);
  c.epsilon = j.value("epsilon", d.epsilon);
  c.batch_size = j.value("batch_size", d.batch_size);
  c.epochs = j.value("epochs", d.epochs);
  c.eval_steps = j.value("eval_steps", d.eval_steps);
  c.patience = j.value("patience", d.patience);
  c.max_steps = j.value("max_steps", d.max_steps);
  c.seed = j.value("seed", d.seed);
}

Adam::Adam(std::size_t size, const TrainConfig& config)
    : lr_(config.learning_rate),
      beta1_(config.beta1),
      beta2_(config.beta2),
      epsilon_(config.epsilon),
      m_(size, 0.0),
      v_(size, 0.0) {}

void Adam::step(std::span<double> parameters, std::span<const double> gradient) {
  ++steps_;
  const double correction1 = 1.0 - std::pow(beta1_, static_cast<double>(steps_));
  const double correction2 = 1.0 - std::pow(beta2_, static_cast<double>(steps_));
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * gradient[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * gradient[i] * gradient[i];
    const double m_hat = m_[i] / correction1;
    const double v_hat = v_[i] / correction2;
    parameters[i] -= lr_ * m_hat / (std::sqrt(v_hat) + epsilon_);
  }
}

void Shortlist::offer(int step, double dev_loss, std::span<const double> parameters) {
  ShortlistEntry entry{step, dev_loss, {parameters.begin(), parameters.end()}};
  auto at = std::upper_bound(entries_.begin(), entries_.end(), dev_loss,
                             [](double loss, const ShortlistEntry& e) { return loss < e.dev_loss; });
  entries_.insert(at, std::move(entry));
  if (entries_.size() > capacity_) entries_.resize(capacity_);
}

bool EarlyStopping::update(double dev_loss) {
  if (!seen_ || dev_loss < best_) {
    seen_ = true;
    best_ = dev_loss;
    stale_ = 0;
  } else {
    ++stale_;
  }
  return stale_ >= patience_;
}

nlohmann::json to_json(const TrainLogRecord& r) {
  return nlohmann::json{{"step", r.step},
                        {"train_loss", r.train_loss},
                        {"dev_loss", r.dev_loss},
                        {"lr", r.learning_rate}};
}

TrainResult train(Seq2SeqModel& model, std::span<const Example> train_set,
                  std::span<const Example> dev_set, const TrainConfig& config,
                  const DevScorer& scorer, const LogSink& sink) {
  config.validate();
  if (train_set.empty()) throw TrainingError("training set is empty");
  if (dev_set.empty()) throw TrainingError("dev set is empty");

  auto params = model.parameters();
  Adam adam(params.size(), config);
  Shortlist shortlist(2);
  EarlyStopping stopper(config.patience);
  Rng order_rng(config.seed);
  Rng dropout_rng(config.seed ^ 0xD50F5EEDULL);
  std::vector<double> gradient(params.size());

  TrainResult result;
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  double window_loss = 0.0;
  int window_steps = 0;
  int last_eval_step = -1;
  bool stop = false;

  auto evaluate = [&](int step) {
    const double dev_loss = model.batch_loss(dev_set).mean();
    TrainLogRecord record{step, window_steps ? window_loss / window_steps : 0.0, dev_loss,
                          config.learning_rate};
    result.log.push_back(record);
    if (sink) sink(record);
    window_loss = 0.0;
    window_steps = 0;
    last_eval_step = step;
    ++result.evaluations;
    if (!std::isfinite(dev_loss)) {
      throw TrainingError("dev loss diverged at step " + std::to_string(step));
    }
    shortlist.offer(step, dev_loss, params);
    return stopper.update(dev_loss);
  };

  int step = 0;
  for (int epoch = 0; epoch < config.epochs && !stop; ++epoch) {
    order_rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < order.size() && !stop; start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      std::vector<Example> batch;
      batch.reserve(end - start);
      for (std::size_t i = start; i < end; ++i) batch.push_back(train_set[order[i]]);

      const double batch_loss =
          model.loss_and_gradient(batch, Reduction::kMean, gradient, &dropout_rng);
      if (!std::isfinite(batch_loss) || !all_finite(gradient)) {
        throw TrainingError("non-finite gradient at step " + std::to_string(step + 1) +
                            " (epoch " + std::to_string(epoch) + ", batch starting at " +
                            std::to_string(start) + ")");
      }
      adam.step(params, gradient);
      ++step;
      if (!all_finite(params)) {
        throw TrainingError("non-finite parameters after step " + std::to_string(step));
      }
      window_loss += batch_loss;
      ++window_steps;

      if (step % config.eval_steps == 0) stop = evaluate(step);
      if (config.max_steps > 0 && step >= config.max_steps) break;
    }
    if (config.max_steps > 0 && step >= config.max_steps) break;
  }
  if (last_eval_step != step) evaluate(step);

  result.steps = step;
  result.early_stopped = stop;
  result.shortlist = shortlist.entries();

  // Final pick among the short-list.
  const ShortlistEntry* chosen = &result.shortlist.front();
  if (scorer) {
    std::optional<double> best_score;
    for (const auto& entry : result.shortlist) {
      std::copy(entry.parameters.begin(), entry.parameters.end(), params.begin());
      const double score = scorer(model);
      if (!best_score || score > *best_score) {
        best_score = score;
        chosen = &entry;
      }
    }
    result.selected_dev_score = best_score;
  }
  std::copy(chosen->parameters.begin(), chosen->parameters.end(), params.begin());
  result.selected_step = chosen->step;
  result.selected_dev_loss = chosen->dev_loss;
  return result;
}

}  // namespace arts::model
