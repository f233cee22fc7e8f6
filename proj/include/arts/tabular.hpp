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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arts {

// A header row plus data rows read from a delimiter-separated file. Quoted
// fields follow RFC 4180 (doubled quotes, embedded delimiters and newlines).
class Table {
 public:
  static Table parse(std::string_view content, char delimiter);
  static Table read(const std::filesystem::path& path, char delimiter);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  // Index of the first header cell equal to any of `names`
  // (ASCII case-insensitive).
  std::optional<std::size_t> find_column(
      std::initializer_list<std::string_view> names) const;
  // As find_column, but throws SchemaError naming names.front().
  std::size_t require_column(std::initializer_list<std::string_view> names,
                             std::string_view source) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::string_view trim(std::string_view text);
bool iequals(std::string_view a, std::string_view b);

}  // namespace arts
