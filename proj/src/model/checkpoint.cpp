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

#include "arts/model/checkpoint.hpp"

#include <bit>
#include <cstring>

#include <nlohmann/json.hpp>

#include "arts/errors.hpp"
#include "arts/hashing.hpp"
#include "arts/tabular.hpp"

namespace arts::model {
namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint encoding assumes a little-endian host");

constexpr std::string_view kMagic = "ARTSCKPT";
constexpr std::size_t kDigestChars = 64;

template <typename T>
void put(std::string& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.append(bytes, sizeof(T));
}

template <typename T>
T get(std::string_view bytes, std::size_t& at) {
  if (at + sizeof(T) > bytes.size()) throw DataError("checkpoint is truncated");
  T value;
  std::memcpy(&value, bytes.data() + at, sizeof(T));
  at += sizeof(T);
  return value;
}

}  // namespace

std::string checkpoint_bytes(const Seq2SeqModel& model, const Vocab& vocab) {
  nlohmann::json header;
  header["config"] = model.config();
  header["vocab_size"] = model.vocab_size();
  header["vocab"] = vocab.tokens();
  const std::string header_text = header.dump();

  std::string out(kMagic);
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint64_t>(out, header_text.size());
  out += header_text;
  const auto params = model.parameters();
  put<std::uint64_t>(out, params.size());
  out.append(reinterpret_cast<const char*>(params.data()), params.size() * sizeof(double));
  out += sha256_hex(out);
  return out;
}

std::string save_checkpoint(const std::filesystem::path& path, const Seq2SeqModel& model,
                            const Vocab& vocab) {
  const std::string bytes = checkpoint_bytes(model, vocab);
  write_file(path, bytes);
  return bytes.substr(bytes.size() - kDigestChars);
}

LoadedCheckpoint parse_checkpoint(std::string_view bytes) {
  if (bytes.size() < kMagic.size() + kDigestChars || bytes.substr(0, kMagic.size()) != kMagic) {
    throw DataError("not a checkpoint file");
  }
  const std::string_view body = bytes.substr(0, bytes.size() - kDigestChars);
  const std::string stored(bytes.substr(bytes.size() - kDigestChars));
  if (sha256_hex(body) != stored) throw DataError("checkpoint hash mismatch");

  std::size_t at = kMagic.size();
  const auto version = get<std::uint32_t>(body, at);
  if (version != kCheckpointVersion) {
    throw DataError("unsupported checkpoint version " + std::to_string(version));
  }
  const auto header_len = get<std::uint64_t>(body, at);
  if (at + header_len > body.size()) throw DataError("checkpoint is truncated");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(body.substr(at, header_len));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("checkpoint header: ") + e.what());
  }
  at += header_len;
  const auto count = get<std::uint64_t>(body, at);
  if (at + count * sizeof(double) != body.size()) throw DataError("checkpoint is truncated");
  std::vector<double> params(count);
  std::memcpy(params.data(), body.data() + at, count * sizeof(double));

  Vocab vocab = Vocab::from_tokens(header.at("vocab").get<std::vector<std::string>>());
  const int vocab_size = header.at("vocab_size").get<int>();
  if (vocab_size != vocab.size()) throw DataError("checkpoint vocabulary size mismatch");
  Seq2SeqModel model(header.at("config").get<ModelConfig>(), vocab_size, std::move(params));
  return {std::move(model), std::move(vocab), stored};
}

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path) {
  return parse_checkpoint(read_file(path));
}

std::string parameter_hash(std::span<const double> parameters) {
  return sha256_hex(std::string_view(reinterpret_cast<const char*>(parameters.data()),
                                     parameters.size() * sizeof(double)));
}

}  // namespace arts::model
