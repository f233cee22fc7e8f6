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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "arts/codec.hpp"
#include "arts/errors.hpp"
#include "arts/model/checkpoint.hpp"
#include "arts/model/config.hpp"
#include "arts/model/trainer.hpp"
#include "arts/model/transformer.hpp"
#include "arts/model/vocab.hpp"
#include "support/model_checks.hpp"
#include "support/temp_dir.hpp"

using namespace arts::model;
using arts::testing::random_example;
using arts::testing::tiny_config;

namespace {

std::vector<double> gradient_of(const Seq2SeqModel& net, const std::vector<Example>& batch,
                                Reduction reduction) {
  std::vector<double> g(net.parameters().size());
  net.loss_and_gradient(batch, reduction, g);
  return g;
}

}  // namespace

TEST_CASE("vocab thresholds, reserved tokens and determinism") {
  const std::vector<std::string> texts{"a a a b", "a a"};
  const auto vocab = Vocab::build(texts, 2, {0, 60});
  CHECK(vocab.contains("a"));
  CHECK_FALSE(vocab.contains("b"));
  CHECK(vocab.id("b") == Vocab::kUnk);
  for (const char* token : {"Overall", "nan", ",", "Word Choice", "16", "0", "60"}) {
    CHECK(vocab.contains(token));
  }
  CHECK(Vocab::build(texts, 2, {0, 60}) == vocab);

  const std::vector<std::string> tokens{"Dear", "editor", ",", "hi", "!"};
  CHECK(tokenize_source("Dear editor, hi!") == tokens);
}

TEST_CASE("every score sequence encodes without UNK and decodes back") {
  const std::vector<std::string> texts{"x"};
  const auto vocab = Vocab::build(texts, 1, {0, 60});
  auto order = arts::asap_forward_order();
  const std::vector<arts::TraitName> universe(order.begin(), order.end());
  arts::TraitScoreMap m;
  m.prompt_id = 8;
  m.scores = {{arts::TraitName::kOverall, 60}, {arts::TraitName::kVoice, 12}};
  const auto pairs = arts::codec::target_pairs(m, arts::codec::OrderPolicy::forward(), universe);
  const auto ids = vocab.encode_target(pairs);
  CHECK(std::find(ids.begin(), ids.end(), Vocab::kUnk) == ids.end());
  CHECK(ids.back() == Vocab::kEos);
  // 11 pairs of two tokens, 10 commas and EOS.
  CHECK(ids.size() == 33);
  CHECK(vocab.decode(ids) ==
        arts::codec::build_target(m, arts::codec::OrderPolicy::forward(), universe));
}

TEST_CASE("parameter count matches the closed form") {
  for (int vocab : {20, 57}) {
    auto config = tiny_config();
    Seq2SeqModel net(config, vocab);
    CHECK(net.parameters().size() == parameter_count(config, vocab));
    ModelConfig desk;
    Seq2SeqModel big(desk, vocab);
    CHECK(big.parameters().size() == parameter_count(desk, vocab));
  }
  ModelConfig bad;
  bad.n_heads = 5;
  CHECK_THROWS_AS(bad.validate(), arts::ConfigError);
  ModelConfig narrow;
  narrow.precision = 32;
  CHECK_THROWS_AS(narrow.validate(), arts::ConfigError);
}

TEST_CASE("untrained model is uniform and loss is ln V") {
  const int vocab = 20;
  Seq2SeqModel net(tiny_config(), vocab);
  const std::vector<int> src{4, 5, 6}, tgt{7, 8, Vocab::kEos};
  const auto logits = net.logits(src, shift_right(tgt));
  const auto probs = softmax_rows(logits);
  for (int r = 0; r < probs.rows(); ++r) {
    for (int c = 0; c < probs.cols(); ++c) CHECK(probs(r, c) == doctest::Approx(1.0 / vocab));
  }
  CHECK(loss(logits, tgt) == doctest::Approx(std::log(vocab)).epsilon(1e-12));
}

TEST_CASE("loss limits") {
  RowMatrix logits = RowMatrix::Zero(2, 5);
  logits(0, 3) = 1e4;
  logits(1, 2) = 1e4;
  const std::vector<int> right{3, 2};
  CHECK(loss(logits, right) < 1e-12);
  const std::vector<int> pads{Vocab::kPad, Vocab::kPad};
  RowMatrix dlogits;
  const auto none = token_cross_entropy(logits, pads, &dlogits);
  CHECK(none.mean() == 0.0);
  CHECK(dlogits.isZero(0.0));
}

TEST_CASE("softmax rows sum to one at every attention and output layer") {
  arts::Rng rng(3);
  Seq2SeqModel net(ModelConfig{}, 60);
  for (auto& p : net.parameters()) p = rng.uniform(-0.3, 0.3);
  const auto src = arts::testing::random_ids(rng, 30, 60);
  auto tgt = arts::testing::random_ids(rng, 12, 60);
  tgt[0] = Vocab::kBos;
  const auto trace = net.trace(src, tgt);
  CHECK(trace.attention.size() == 4 * (2 + 2 * 2));
  for (const auto& probs : trace.attention) {
    for (int r = 0; r < probs.rows(); ++r) CHECK(std::abs(probs.row(r).sum() - 1.0) < 1e-12);
  }
  const auto out = softmax_rows(trace.logits);
  for (int r = 0; r < out.rows(); ++r) CHECK(std::abs(out.row(r).sum() - 1.0) < 1e-12);
}

TEST_CASE("causal mask: later target tokens never change earlier logits") {
  arts::Rng rng(17);
  Seq2SeqModel net(ModelConfig{}, 50);
  for (auto& p : net.parameters()) p = rng.uniform(-0.3, 0.3);
  CHECK(arts::testing::causal_mask_violations(net, 25, 99) == 0);

  // Cross-attention reach: a source change moves every target position.
  const std::vector<int> src{4, 5, 6, 7}, other{4, 5, 6, 8}, tgt{Vocab::kBos, 9, 10};
  const auto a = net.logits(src, tgt);
  const auto b = net.logits(other, tgt);
  for (int r = 0; r < a.rows(); ++r) CHECK((a.row(r) - b.row(r)).norm() > 0);
}

TEST_CASE("length overflow and bad ids are input errors") {
  Seq2SeqModel net(tiny_config(), 20);
  const std::vector<int> long_src(13, 4), src{4}, tgt{Vocab::kBos}, bad{25}, empty;
  CHECK_THROWS_AS(net.logits(long_src, tgt), arts::InputError);
  CHECK_THROWS_AS(net.logits(src, bad), arts::InputError);
  CHECK_THROWS_AS(net.logits(empty, tgt), arts::InputError);
}

TEST_CASE("analytic gradient matches central finite differences") {
  const auto check = arts::testing::gradient_check(2024, 200);
  CHECK(check.coordinates == 200);
  CHECK(check.max_relative_error < 1e-5);
}

TEST_CASE("gradient linearity and zero learning rate") {
  arts::Rng rng(8);
  Seq2SeqModel net(tiny_config(), 20);
  for (auto& p : net.parameters()) p = rng.uniform(-0.5, 0.5);
  const auto ex = random_example(rng, 20, 12, 8);
  const auto once = gradient_of(net, {ex}, Reduction::kSum);
  const auto twice = gradient_of(net, {ex, ex}, Reduction::kSum);
  for (std::size_t i = 0; i < once.size(); ++i) CHECK(twice[i] == 2.0 * once[i]);

  TrainConfig cfg;
  cfg.learning_rate = 0.0;
  Adam adam(net.parameters().size(), cfg);
  const std::vector<double> before(net.parameters().begin(), net.parameters().end());
  adam.step(net.parameters(), once);
  CHECK(std::equal(before.begin(), before.end(), net.parameters().begin()));
}

TEST_CASE("greedy decoding bounds and determinism") {
  arts::Rng rng(4);
  Seq2SeqModel net(tiny_config(), 20);
  for (auto& p : net.parameters()) p = rng.uniform(-0.5, 0.5);
  const std::vector<int> src{4, 9, 11};
  CHECK(net.generate_greedy(src, 1).size() == 1);
  const auto a = net.generate_greedy(src, 8);
  CHECK(a == net.generate_greedy(src, 8));
  for (int id : a) CHECK((id != Vocab::kPad && id != Vocab::kBos));
}

TEST_CASE("early stopping and shortlist arithmetic") {
  EarlyStopping stop(2);
  CHECK_FALSE(stop.update(1.0));
  CHECK_FALSE(stop.update(0.9));
  CHECK_FALSE(stop.update(0.95));
  CHECK(stop.update(0.97));

  Shortlist shortlist(2);
  const std::vector<double> p{0.0};
  shortlist.offer(1, 0.9, p);
  shortlist.offer(2, 0.8, p);
  shortlist.offer(3, 0.85, p);
  REQUIRE(shortlist.entries().size() == 2);
  CHECK(shortlist.entries()[0].dev_loss == 0.8);
  CHECK(shortlist.entries()[1].dev_loss == 0.85);
}

TEST_CASE("training is bit-reproducible and checkpoints round-trip") {
  arts::Rng rng(6);
  std::vector<Example> train_set, dev_set;
  for (int i = 0; i < 12; ++i) train_set.push_back(random_example(rng, 20, 12, 8));
  for (int i = 0; i < 3; ++i) dev_set.push_back(random_example(rng, 20, 12, 8));
  TrainConfig cfg;
  cfg.learning_rate = 1e-2;
  cfg.epochs = 3;
  cfg.eval_steps = 4;

  Seq2SeqModel a(tiny_config(), 20), b(tiny_config(), 20);
  const auto ra = train(a, train_set, dev_set, cfg);
  const auto rb = train(b, train_set, dev_set, cfg);
  CHECK(parameter_hash(a.parameters()) == parameter_hash(b.parameters()));
  CHECK(ra.selected_step == rb.selected_step);
  CHECK(ra.shortlist.size() <= 2);
  CHECK(ra.log.front().dev_loss > ra.selected_dev_loss - 1e-12);
  for (std::size_t i = 1; i < ra.log.size(); ++i) CHECK(ra.log[i].step > ra.log[i - 1].step);

  arts::testing::TempDir dir;
  const auto vocab = Vocab::from_tokens([] {
    std::vector<std::string> t{"<pad>", "<bos>", "<eos>", "<unk>"};
    for (int i = 4; i < 20; ++i) t.push_back("w" + std::to_string(i));
    return t;
  }());
  const auto hash = save_checkpoint(dir.path() / "m.ckpt", a, vocab);
  const auto loaded = load_checkpoint(dir.path() / "m.ckpt");
  CHECK(loaded.hash == hash);
  CHECK(loaded.vocab == vocab);
  CHECK(parameter_hash(loaded.model.parameters()) == parameter_hash(a.parameters()));

  auto bytes = checkpoint_bytes(a, vocab);
  bytes[bytes.size() / 2] ^= 1;
  CHECK_THROWS_AS(parse_checkpoint(bytes), arts::DataError);
}
