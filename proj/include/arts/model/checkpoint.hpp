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
#include <string>

#include "arts/model/transformer.hpp"
#include "arts/model/vocab.hpp"

namespace arts::model {

// Binary checkpoint, little-endian:
//   "ARTSCKPT" | u32 version | u64 header bytes | header JSON
//   | u64 parameter count | f64 parameters... | 64 hex chars SHA-256
// The trailing digest covers every preceding byte. The header holds the
// model config and the vocabulary tokens.
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct LoadedCheckpoint {
  Seq2SeqModel model;
  Vocab vocab;
  std::string hash;
};

std::string checkpoint_bytes(const Seq2SeqModel& model, const Vocab& vocab);
// Writes the checkpoint and returns its content hash.
std::string save_checkpoint(const std::filesystem::path& path, const Seq2SeqModel& model,
                            const Vocab& vocab);
// Throws DataError on a bad magic, version, truncation or hash mismatch.
LoadedCheckpoint load_checkpoint(const std::filesystem::path& path);
LoadedCheckpoint parse_checkpoint(std::string_view bytes);

// Content hash of the parameter vector alone.
std::string parameter_hash(std::span<const double> parameters);

}  // namespace arts::model
