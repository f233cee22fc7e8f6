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

#include "arts/model/transformer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arts/errors.hpp"
#include "arts/model/vocab.hpp"

namespace arts::model {
namespace detail {

struct NormCache {
  RowMatrix xhat;
  Eigen::VectorXd rstd;
};

struct AttentionCache {
  RowMatrix xq, xkv, q, k, v, concat;
  std::vector<RowMatrix> probs;
};

struct FeedForwardCache {
  RowMatrix x, pre, act;
};

struct EncoderLayerCache {
  NormCache ln_attn;
  AttentionCache attn;
  RowMatrix drop_attn;
  NormCache ln_ff;
  FeedForwardCache ff;
  RowMatrix drop_ff;
};

struct DecoderLayerCache {
  NormCache ln_self;
  AttentionCache self;
  RowMatrix drop_self;
  NormCache ln_cross;
  AttentionCache cross;
  RowMatrix drop_cross;
  NormCache ln_ff;
  FeedForwardCache ff;
  RowMatrix drop_ff;
};

struct EncoderCache {
  std::vector<EncoderLayerCache> layers;
  NormCache final_norm;
};

struct DecoderCache {
  std::vector<DecoderLayerCache> layers;
  NormCache final_norm;
  RowMatrix hidden;
};

}  // namespace detail

namespace {

using detail::AttentionCache;
using detail::AttentionSlot;
using detail::FeedForwardCache;
using detail::FeedForwardSlot;
using detail::LinearSlot;
using detail::NormCache;
using detail::NormSlot;
using Vec = Eigen::RowVectorXd;
using ConstMatMap = Eigen::Map<const RowMatrix>;
using MatMap = Eigen::Map<RowMatrix>;
using ConstVecMap = Eigen::Map<const Vec>;
using VecMap = Eigen::Map<Vec>;

constexpr double kNormEpsilon = 1e-6;
constexpr double kGeluC = 0.7978845608028654;  // sqrt(2 / pi)
constexpr double kGeluA = 0.044715;

// Builds parameter slots in a fixed order and records named views.
class LayoutBuilder {
 public:
  explicit LayoutBuilder(detail::Layout& layout) : layout_(layout) {}

  std::size_t take(std::string name, ParameterKind kind, std::size_t rows, std::size_t cols) {
    const std::size_t offset = layout_.total;
    layout_.views.push_back({std::move(name), kind, offset, rows, cols});
    layout_.total += rows * cols;
    return offset;
  }

  LinearSlot linear(const std::string& name, int in, int out,
                    ParameterKind kind = ParameterKind::kWeight) {
    LinearSlot slot;
    slot.in = in;
    slot.out = out;
    slot.w = take(name + ".w", kind, static_cast<std::size_t>(in), static_cast<std::size_t>(out));
    slot.b = take(name + ".b", ParameterKind::kBias, 1, static_cast<std::size_t>(out));
    return slot;
  }

  NormSlot norm(const std::string& name, int dim) {
    NormSlot slot;
    slot.dim = dim;
    slot.g = take(name + ".g", ParameterKind::kNormGain, 1, static_cast<std::size_t>(dim));
    slot.b = take(name + ".b", ParameterKind::kNormBias, 1, static_cast<std::size_t>(dim));
    return slot;
  }

  AttentionSlot attention(const std::string& name, int d) {
    return {linear(name + ".q", d, d), linear(name + ".k", d, d), linear(name + ".v", d, d),
            linear(name + ".o", d, d)};
  }

  FeedForwardSlot feed_forward(const std::string& name, int d, int f) {
    return {linear(name + ".up", d, f), linear(name + ".down", f, d)};
  }

 private:
  detail::Layout& layout_;
};

detail::Layout make_layout(const ModelConfig& c, int vocab) {
  detail::Layout layout;
  LayoutBuilder b(layout);
  const int d = c.d_model;
  layout.embedding = b.take("embedding", ParameterKind::kEmbedding,
                            static_cast<std::size_t>(vocab), static_cast<std::size_t>(d));
  for (int i = 0; i < c.n_enc_layers; ++i) {
    const std::string p = "encoder." + std::to_string(i);
    detail::EncoderSlot slot;
    slot.ln_attn = b.norm(p + ".ln_attn", d);
    slot.attn = b.attention(p + ".attn", d);
    slot.ln_ff = b.norm(p + ".ln_ff", d);
    slot.ff = b.feed_forward(p + ".ff", d, c.ffn_dim);
    layout.encoder.push_back(slot);
  }
  layout.encoder_norm = b.norm("encoder.norm", d);
  for (int i = 0; i < c.n_dec_layers; ++i) {
    const std::string p = "decoder." + std::to_string(i);
    detail::DecoderSlot slot;
    slot.ln_self = b.norm(p + ".ln_self", d);
    slot.self = b.attention(p + ".self", d);
    slot.ln_cross = b.norm(p + ".ln_cross", d);
    slot.cross = b.attention(p + ".cross", d);
    slot.ln_ff = b.norm(p + ".ln_ff", d);
    slot.ff = b.feed_forward(p + ".ff", d, c.ffn_dim);
    layout.decoder.push_back(slot);
  }
  layout.decoder_norm = b.norm("decoder.norm", d);
  layout.output = b.linear("output", d, vocab, ParameterKind::kOutputWeight);
  return layout;
}

RowMatrix sinusoidal_positions(int length, int d) {
  RowMatrix pe(length, d);
  for (int pos = 0; pos < length; ++pos) {
    for (int i = 0; i < d; i += 2) {
      const double angle = pos / std::pow(10000.0, static_cast<double>(i) / d);
      pe(pos, i) = std::sin(angle);
      if (i + 1 < d) pe(pos, i + 1) = std::cos(angle);
    }
  }
  return pe;
}

RowMatrix linear(const double* p, const LinearSlot& s, const RowMatrix& x) {
  ConstMatMap w(p + s.w, s.in, s.out);
  ConstVecMap b(p + s.b, s.out);
  RowMatrix y = x * w;
  y.rowwise() += b;
  return y;
}

RowMatrix linear_backward(const double* p, double* g, const LinearSlot& s, const RowMatrix& x,
                          const RowMatrix& dy) {
  MatMap gw(g + s.w, s.in, s.out);
  VecMap gb(g + s.b, s.out);
  gw.noalias() += x.transpose() * dy;
  gb += dy.colwise().sum();
  ConstMatMap w(p + s.w, s.in, s.out);
  return dy * w.transpose();
}

RowMatrix layer_norm(const double* p, const NormSlot& s, const RowMatrix& x, NormCache* cache) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  RowMatrix xhat(n, d);
  Eigen::VectorXd rstd(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mu = x.row(i).mean();
    Vec centered = x.row(i).array() - mu;
    const double var = centered.squaredNorm() / static_cast<double>(d);
    rstd(i) = 1.0 / std::sqrt(var + kNormEpsilon);
    xhat.row(i) = centered * rstd(i);
  }
  ConstVecMap gain(p + s.g, s.dim);
  ConstVecMap bias(p + s.b, s.dim);
  RowMatrix y = xhat.array().rowwise() * gain.array();
  y.rowwise() += bias;
  if (cache) {
    cache->xhat = std::move(xhat);
    cache->rstd = std::move(rstd);
  }
  return y;
}

RowMatrix layer_norm_backward(const double* p, double* g, const NormSlot& s,
                              const NormCache& cache, const RowMatrix& dy) {
  ConstVecMap gain(p + s.g, s.dim);
  VecMap g_gain(g + s.g, s.dim);
  VecMap g_bias(g + s.b, s.dim);
  g_gain += (dy.array() * cache.xhat.array()).colwise().sum().matrix();
  g_bias += dy.colwise().sum();
  RowMatrix dxhat = dy.array().rowwise() * gain.array();
  const double d = static_cast<double>(dy.cols());
  RowMatrix dx(dy.rows(), dy.cols());
  for (Eigen::Index i = 0; i < dy.rows(); ++i) {
    const double mean_dxhat = dxhat.row(i).sum() / d;
    const double mean_dot = dxhat.row(i).dot(cache.xhat.row(i)) / d;
    dx.row(i) = cache.rstd(i) *
                (dxhat.row(i).array() - mean_dxhat - cache.xhat.row(i).array() * mean_dot).matrix();
  }
  return dx;
}

// In-place softmax over the first `limit(i)` columns of each row; masked
// columns become exactly zero.
void softmax_in_place(RowMatrix& scores, bool causal) {
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const Eigen::Index limit = causal ? std::min<Eigen::Index>(i + 1, scores.cols()) : scores.cols();
    auto row = scores.row(i);
    const double max = row.head(limit).maxCoeff();
    double total = 0.0;
    for (Eigen::Index j = 0; j < limit; ++j) {
      row(j) = std::exp(row(j) - max);
      total += row(j);
    }
    row.head(limit) /= total;
    for (Eigen::Index j = limit; j < scores.cols(); ++j) row(j) = 0.0;
  }
}

RowMatrix attention(const double* p, const AttentionSlot& s, const RowMatrix& xq,
                    const RowMatrix& xkv, int heads, bool causal, AttentionCache* cache) {
  RowMatrix q = linear(p, s.q, xq);
  RowMatrix k = linear(p, s.k, xkv);
  RowMatrix v = linear(p, s.v, xkv);
  const int d = s.q.out;
  const int dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  RowMatrix concat(xq.rows(), d);
  std::vector<RowMatrix> probs;
  probs.reserve(static_cast<std::size_t>(heads));
  for (int h = 0; h < heads; ++h) {
    RowMatrix scores = (q.middleCols(h * dh, dh) * k.middleCols(h * dh, dh).transpose()) * scale;
    softmax_in_place(scores, causal);
    concat.middleCols(h * dh, dh).noalias() = scores * v.middleCols(h * dh, dh);
    probs.push_back(std::move(scores));
  }
  RowMatrix out = linear(p, s.o, concat);
  if (cache) {
    cache->xq = xq;
    cache->xkv = xkv;
    cache->q = std::move(q);
    cache->k = std::move(k);
    cache->v = std::move(v);
    cache->concat = std::move(concat);
    cache->probs = std::move(probs);
  }
  return out;
}

// Returns {d xq, d xkv}.
std::pair<RowMatrix, RowMatrix> attention_backward(const double* p, double* g,
                                                   const AttentionSlot& s, int heads,
                                                   const AttentionCache& c,
                                                   const RowMatrix& dout) {
  RowMatrix dconcat = linear_backward(p, g, s.o, c.concat, dout);
  const int d = s.q.out;
  const int dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  RowMatrix dq = RowMatrix::Zero(c.q.rows(), d);
  RowMatrix dk = RowMatrix::Zero(c.k.rows(), d);
  RowMatrix dv = RowMatrix::Zero(c.v.rows(), d);
  for (int h = 0; h < heads; ++h) {
    const RowMatrix& prob = c.probs[static_cast<std::size_t>(h)];
    const auto d_head = dconcat.middleCols(h * dh, dh);
    dv.middleCols(h * dh, dh).noalias() += prob.transpose() * d_head;
    RowMatrix dprob = d_head * c.v.middleCols(h * dh, dh).transpose();
    for (Eigen::Index i = 0; i < dprob.rows(); ++i) {
      const double dot = prob.row(i).dot(dprob.row(i));
      dprob.row(i) = (prob.row(i).array() * (dprob.row(i).array() - dot)).matrix();
    }
    dprob *= scale;
    dq.middleCols(h * dh, dh).noalias() += dprob * c.k.middleCols(h * dh, dh);
    dk.middleCols(h * dh, dh).noalias() += dprob.transpose() * c.q.middleCols(h * dh, dh);
  }
  RowMatrix dxq = linear_backward(p, g, s.q, c.xq, dq);
  RowMatrix dxkv = linear_backward(p, g, s.k, c.xkv, dk);
  dxkv += linear_backward(p, g, s.v, c.xkv, dv);
  return {std::move(dxq), std::move(dxkv)};
}

double gelu(double x) {
  return 0.5 * x * (1.0 + std::tanh(kGeluC * (x + kGeluA * x * x * x)));
}

double gelu_derivative(double x) {
  const double t = std::tanh(kGeluC * (x + kGeluA * x * x * x));
  return 0.5 * (1.0 + t) + 0.5 * x * (1.0 - t * t) * kGeluC * (1.0 + 3.0 * kGeluA * x * x);
}

RowMatrix feed_forward(const double* p, const FeedForwardSlot& s, const RowMatrix& x,
                       FeedForwardCache* cache) {
  RowMatrix pre = linear(p, s.up, x);
  RowMatrix act = pre.unaryExpr(&gelu);
  RowMatrix out = linear(p, s.down, act);
  if (cache) {
    cache->x = x;
    cache->pre = std::move(pre);
    cache->act = std::move(act);
  }
  return out;
}

RowMatrix feed_forward_backward(const double* p, double* g, const FeedForwardSlot& s,
                                const FeedForwardCache& c, const RowMatrix& dy) {
  RowMatrix dact = linear_backward(p, g, s.down, c.act, dy);
  RowMatrix dpre = dact.array() * c.pre.unaryExpr(&gelu_derivative).array();
  return linear_backward(p, g, s.up, c.x, dpre);
}

// Inverted dropout: returns an empty mask when inactive.
RowMatrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, Rng* rng) {
  if (!rng || rate <= 0.0) return {};
  RowMatrix mask(rows, cols);
  const double keep_scale = 1.0 / (1.0 - rate);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      mask(i, j) = rng->uniform() < rate ? 0.0 : keep_scale;
    }
  }
  return mask;
}

void apply_mask(RowMatrix& x, const RowMatrix& mask) {
  if (mask.size() != 0) x.array() *= mask.array();
}

RowMatrix masked(const RowMatrix& dy, const RowMatrix& mask) {
  if (mask.size() == 0) return dy;
  return dy.array() * mask.array();
}

}  // namespace

TokenLoss token_cross_entropy(const RowMatrix& logits, std::span<const int> targets,
                              RowMatrix* dlogits) {
  if (static_cast<std::size_t>(logits.rows()) != targets.size()) {
    throw InputError("logits rows and targets differ in length");
  }
  TokenLoss result;
  if (dlogits) *dlogits = RowMatrix::Zero(logits.rows(), logits.cols());
  for (Eigen::Index t = 0; t < logits.rows(); ++t) {
    const int target = targets[static_cast<std::size_t>(t)];
    if (target == Vocab::kPad) continue;
    if (target < 0 || target >= logits.cols()) throw InputError("target id out of range");
    const double max = logits.row(t).maxCoeff();
    Vec shifted = logits.row(t).array() - max;
    Vec expd = shifted.array().exp();
    const double total = expd.sum();
    result.sum += std::log(total) - shifted(target);
    ++result.tokens;
    if (dlogits) {
      dlogits->row(t) = expd / total;
      (*dlogits)(t, target) -= 1.0;
    }
  }
  return result;
}

double loss(const RowMatrix& logits, std::span<const int> targets) {
  return token_cross_entropy(logits, targets).mean();
}

RowMatrix softmax_rows(const RowMatrix& logits) {
  RowMatrix out = logits;
  softmax_in_place(out, false);
  return out;
}

std::vector<int> shift_right(std::span<const int> tgt) {
  std::vector<int> in;
  in.reserve(tgt.size());
  in.push_back(Vocab::kBos);
  if (!tgt.empty()) in.insert(in.end(), tgt.begin(), tgt.end() - 1);
  return in;
}

Seq2SeqModel::Seq2SeqModel(ModelConfig config, int vocab_size)
    : config_(config), vocab_size_(vocab_size) {
  config_.validate();
  if (vocab_size_ <= Vocab::kUnk) throw ConfigError("vocabulary too small");
  layout_ = make_layout(config_, vocab_size_);
  if (layout_.total != parameter_count(config_, vocab_size_)) {
    throw ConfigError("parameter layout disagrees with the closed-form count");
  }
  parameters_.assign(layout_.total, 0.0);
  positions_ = sinusoidal_positions(std::max(config_.max_src_len, config_.max_tgt_len),
                                    config_.d_model);

  Rng rng(config_.seed);
  for (const auto& view : layout_.views) {
    double* data = parameters_.data() + view.offset;
    switch (view.kind) {
      case ParameterKind::kEmbedding:
      case ParameterKind::kWeight: {
        const double limit =
            std::sqrt(6.0 / static_cast<double>(view.rows + view.cols));
        for (std::size_t i = 0; i < view.size(); ++i) data[i] = rng.uniform(-limit, limit);
        break;
      }
      case ParameterKind::kNormGain:
        std::fill(data, data + view.size(), 1.0);
        break;
      case ParameterKind::kBias:
      case ParameterKind::kNormBias:
      case ParameterKind::kOutputWeight:
        break;
    }
  }
}

Seq2SeqModel::Seq2SeqModel(ModelConfig config, int vocab_size, std::vector<double> parameters)
    : config_(config), vocab_size_(vocab_size) {
  config_.validate();
  layout_ = make_layout(config_, vocab_size_);
  if (parameters.size() != layout_.total) {
    throw ConfigError("parameter vector has " + std::to_string(parameters.size()) +
                      " entries, configuration needs " + std::to_string(layout_.total));
  }
  parameters_ = std::move(parameters);
  positions_ = sinusoidal_positions(std::max(config_.max_src_len, config_.max_tgt_len),
                                    config_.d_model);
}

const ParameterView& Seq2SeqModel::view(std::string_view name) const {
  for (const auto& v : layout_.views) {
    if (v.name == name) return v;
  }
  throw LookupError("no parameter named " + std::string(name));
}

void Seq2SeqModel::check_input(std::span<const int> ids, int max_len, const char* what) const {
  if (ids.empty()) throw InputError(std::string(what) + " sequence is empty");
  if (static_cast<int>(ids.size()) > max_len) {
    throw InputError(std::string(what) + " length " + std::to_string(ids.size()) +
                     " exceeds limit " + std::to_string(max_len));
  }
  for (int id : ids) {
    if (id < 0 || id >= vocab_size_) {
      throw InputError(std::string(what) + " token id " + std::to_string(id) +
                       " outside vocabulary");
    }
  }
}

RowMatrix Seq2SeqModel::embed(std::span<const int> ids) const {
  const int d = config_.d_model;
  const double scale = std::sqrt(static_cast<double>(d));
  ConstMatMap table(parameters_.data() + layout_.embedding, vocab_size_, d);
  RowMatrix x(static_cast<Eigen::Index>(ids.size()), d);
  for (std::size_t t = 0; t < ids.size(); ++t) {
    const auto row = static_cast<Eigen::Index>(t);
    x.row(row) = table.row(ids[t]) * scale + positions_.row(row);
  }
  return x;
}

RowMatrix Seq2SeqModel::encode(std::span<const int> src, detail::EncoderCache* cache,
                               Rng* rng) const {
  const double* p = parameters_.data();
  const double rate = config_.dropout_rate;
  RowMatrix x = embed(src);
  if (cache) cache->layers.resize(layout_.encoder.size());
  for (std::size_t l = 0; l < layout_.encoder.size(); ++l) {
    const auto& slot = layout_.encoder[l];
    detail::EncoderLayerCache* lc = cache ? &cache->layers[l] : nullptr;

    RowMatrix a = layer_norm(p, slot.ln_attn, x, lc ? &lc->ln_attn : nullptr);
    RowMatrix att = attention(p, slot.attn, a, a, config_.n_heads, false,
                              lc ? &lc->attn : nullptr);
    RowMatrix mask = dropout_mask(att.rows(), att.cols(), rate, rng);
    apply_mask(att, mask);
    x += att;
    if (lc) lc->drop_attn = std::move(mask);

    RowMatrix b = layer_norm(p, slot.ln_ff, x, lc ? &lc->ln_ff : nullptr);
    RowMatrix ff = feed_forward(p, slot.ff, b, lc ? &lc->ff : nullptr);
    mask = dropout_mask(ff.rows(), ff.cols(), rate, rng);
    apply_mask(ff, mask);
    x += ff;
    if (lc) lc->drop_ff = std::move(mask);
  }
  return layer_norm(p, layout_.encoder_norm, x, cache ? &cache->final_norm : nullptr);
}

RowMatrix Seq2SeqModel::decode(std::span<const int> tgt_in, const RowMatrix& memory,
                               detail::DecoderCache* cache, Rng* rng) const {
  const double* p = parameters_.data();
  const double rate = config_.dropout_rate;
  RowMatrix y = embed(tgt_in);
  if (cache) cache->layers.resize(layout_.decoder.size());
  for (std::size_t l = 0; l < layout_.decoder.size(); ++l) {
    const auto& slot = layout_.decoder[l];
    detail::DecoderLayerCache* lc = cache ? &cache->layers[l] : nullptr;

    RowMatrix a = layer_norm(p, slot.ln_self, y, lc ? &lc->ln_self : nullptr);
    RowMatrix self = attention(p, slot.self, a, a, config_.n_heads, true,
                               lc ? &lc->self : nullptr);
    RowMatrix mask = dropout_mask(self.rows(), self.cols(), rate, rng);
    apply_mask(self, mask);
    y += self;
    if (lc) lc->drop_self = std::move(mask);

    RowMatrix b = layer_norm(p, slot.ln_cross, y, lc ? &lc->ln_cross : nullptr);
    RowMatrix cross = attention(p, slot.cross, b, memory, config_.n_heads, false,
                                lc ? &lc->cross : nullptr);
    mask = dropout_mask(cross.rows(), cross.cols(), rate, rng);
    apply_mask(cross, mask);
    y += cross;
    if (lc) lc->drop_cross = std::move(mask);

    RowMatrix c = layer_norm(p, slot.ln_ff, y, lc ? &lc->ln_ff : nullptr);
    RowMatrix ff = feed_forward(p, slot.ff, c, lc ? &lc->ff : nullptr);
    mask = dropout_mask(ff.rows(), ff.cols(), rate, rng);
    apply_mask(ff, mask);
    y += ff;
    if (lc) lc->drop_ff = std::move(mask);
  }
  RowMatrix hidden = layer_norm(p, layout_.decoder_norm, y, cache ? &cache->final_norm : nullptr);
  if (cache) cache->hidden = hidden;
  return hidden;
}

RowMatrix Seq2SeqModel::logits(std::span<const int> src, std::span<const int> tgt_in) const {
  check_input(src, config_.max_src_len, "source");
  check_input(tgt_in, config_.max_tgt_len, "target");
  const RowMatrix memory = encode(src, nullptr, nullptr);
  const RowMatrix hidden = decode(tgt_in, memory, nullptr, nullptr);
  return linear(parameters_.data(), layout_.output, hidden);
}

Seq2SeqModel::Trace Seq2SeqModel::trace(std::span<const int> src,
                                        std::span<const int> tgt_in) const {
  check_input(src, config_.max_src_len, "source");
  check_input(tgt_in, config_.max_tgt_len, "target");
  detail::EncoderCache enc;
  detail::DecoderCache dec;
  const RowMatrix memory = encode(src, &enc, nullptr);
  const RowMatrix hidden = decode(tgt_in, memory, &dec, nullptr);
  Trace out;
  out.logits = linear(parameters_.data(), layout_.output, hidden);
  for (const auto& layer : enc.layers) {
    for (const auto& prob : layer.attn.probs) out.attention.push_back(prob);
  }
  for (const auto& layer : dec.layers) {
    for (const auto& prob : layer.self.probs) out.attention.push_back(prob);
    for (const auto& prob : layer.cross.probs) out.attention.push_back(prob);
  }
  return out;
}

TokenLoss Seq2SeqModel::batch_loss(std::span<const Example> batch) const {
  TokenLoss total;
  for (const auto& example : batch) {
    const auto tgt_in = shift_right(example.tgt);
    const TokenLoss one = token_cross_entropy(logits(example.src, tgt_in), example.tgt);
    total.sum += one.sum;
    total.tokens += one.tokens;
  }
  return total;
}

TokenLoss Seq2SeqModel::example_gradient(const Example& example, std::span<double> gradient,
                                         Rng* rng) const {
  const auto tgt_in = shift_right(example.tgt);
  check_input(example.src, config_.max_src_len, "source");
  check_input(tgt_in, config_.max_tgt_len, "target");

  const double* p = parameters_.data();
  double* g = gradient.data();
  detail::EncoderCache enc;
  detail::DecoderCache dec;
  const RowMatrix memory = encode(example.src, &enc, rng);
  const RowMatrix hidden = decode(tgt_in, memory, &dec, rng);
  const RowMatrix out = linear(p, layout_.output, hidden);

  RowMatrix dlogits;
  const TokenLoss result = token_cross_entropy(out, example.tgt, &dlogits);
  if (result.tokens == 0) return result;

  // Decoder.
  RowMatrix dhidden = linear_backward(p, g, layout_.output, hidden, dlogits);
  RowMatrix dy = layer_norm_backward(p, g, layout_.decoder_norm, dec.final_norm, dhidden);
  RowMatrix dmemory = RowMatrix::Zero(memory.rows(), memory.cols());
  for (std::size_t l = layout_.decoder.size(); l-- > 0;) {
    const auto& slot = layout_.decoder[l];
    const auto& lc = dec.layers[l];

    RowMatrix dc = feed_forward_backward(p, g, slot.ff, lc.ff, masked(dy, lc.drop_ff));
    dy += layer_norm_backward(p, g, slot.ln_ff, lc.ln_ff, dc);

    auto [dq_cross, dkv_cross] =
        attention_backward(p, g, slot.cross, config_.n_heads, lc.cross, masked(dy, lc.drop_cross));
    dmemory += dkv_cross;
    dy += layer_norm_backward(p, g, slot.ln_cross, lc.ln_cross, dq_cross);

    auto [dq_self, dkv_self] =
        attention_backward(p, g, slot.self, config_.n_heads, lc.self, masked(dy, lc.drop_self));
    dq_self += dkv_self;
    dy += layer_norm_backward(p, g, slot.ln_self, lc.ln_self, dq_self);
  }

  const int d = config_.d_model;
  const double scale = std::sqrt(static_cast<double>(d));
  MatMap g_table(g + layout_.embedding, vocab_size_, d);
  for (std::size_t t = 0; t < tgt_in.size(); ++t) {
    g_table.row(tgt_in[t]) += dy.row(static_cast<Eigen::Index>(t)) * scale;
  }

  // Encoder.
  RowMatrix dx = layer_norm_backward(p, g, layout_.encoder_norm, enc.final_norm, dmemory);
  for (std::size_t l = layout_.encoder.size(); l-- > 0;) {
    const auto& slot = layout_.encoder[l];
    const auto& lc = enc.layers[l];

    RowMatrix db = feed_forward_backward(p, g, slot.ff, lc.ff, masked(dx, lc.drop_ff));
    dx += layer_norm_backward(p, g, slot.ln_ff, lc.ln_ff, db);

    auto [dq, dkv] =
        attention_backward(p, g, slot.attn, config_.n_heads, lc.attn, masked(dx, lc.drop_attn));
    dq += dkv;
    dx += layer_norm_backward(p, g, slot.ln_attn, lc.ln_attn, dq);
  }
  for (std::size_t t = 0; t < example.src.size(); ++t) {
    g_table.row(example.src[t]) += dx.row(static_cast<Eigen::Index>(t)) * scale;
  }
  return result;
}

double Seq2SeqModel::loss_and_gradient(std::span<const Example> batch, Reduction reduction,
                                       std::span<double> gradient, Rng* dropout_rng) const {
  if (gradient.size() != parameters_.size()) {
    throw InputError("gradient buffer size does not match the parameter count");
  }
  std::fill(gradient.begin(), gradient.end(), 0.0);
  // Each example is differentiated into a zeroed scratch buffer and then
  // added, so the batch gradient is an ordered sum of per-example gradients.
  std::vector<double> scratch(parameters_.size());
  TokenLoss total;
  for (const auto& example : batch) {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    const TokenLoss one = example_gradient(example, scratch, dropout_rng);
    total.sum += one.sum;
    total.tokens += one.tokens;
    for (std::size_t i = 0; i < scratch.size(); ++i) gradient[i] += scratch[i];
  }
  if (reduction == Reduction::kSum) return total.sum;
  if (total.tokens == 0) return 0.0;
  const double inv = 1.0 / static_cast<double>(total.tokens);
  for (double& v : gradient) v *= inv;
  return total.sum * inv;
}

std::vector<int> Seq2SeqModel::generate_greedy(std::span<const int> src, int max_len) const {
  check_input(src, config_.max_src_len, "source");
  const int limit = std::min(max_len, config_.max_tgt_len);
  const RowMatrix memory = encode(src, nullptr, nullptr);
  std::vector<int> prefix{Vocab::kBos};
  std::vector<int> generated;
  ConstMatMap w(parameters_.data() + layout_.output.w, config_.d_model, vocab_size_);
  ConstVecMap b(parameters_.data() + layout_.output.b, vocab_size_);
  while (static_cast<int>(generated.size()) < limit) {
    const RowMatrix hidden = decode(prefix, memory, nullptr, nullptr);
    const Vec scores = hidden.row(hidden.rows() - 1) * w + b;
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int id = 0; id < vocab_size_; ++id) {
      if (id == Vocab::kPad || id == Vocab::kBos) continue;
      if (scores(id) > best_score) {
        best_score = scores(id);
        best = id;
      }
    }
    generated.push_back(best);
    if (best == Vocab::kEos) break;
    prefix.push_back(best);
  }
  return generated;
}

}  // namespace arts::model
