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
#include <string_view>
#include <vector>

#include "arts/metrics.hpp"

namespace arts::harness {

enum class ReportFormat { kCsv, kText };

// "csv" | "text"; anything else is an ArgumentError.
ReportFormat parse_report_format(std::string_view text);

// One model row of a trait-wise or prompt-wise table.
template <typename Key>
struct TableRow {
  std::string name;
  metrics::SummaryRow<Key> summary;
};

struct TraitTable {
  std::vector<TraitName> columns;
  // "←", "→" or empty: direction in which the model predicts the columns.
  std::string arrow;
  std::vector<TableRow<TraitName>> rows;
};

struct PromptTable {
  std::vector<PromptId> columns;
  std::vector<TableRow<PromptId>> rows;
};

TraitTable trait_table(const metrics::QwkReport& report, std::string name, std::string arrow);
PromptTable prompt_table(const metrics::QwkReport& report, std::string name);

// CSV: a header of column labels then AVG and SD, one line per row. A column
// a row lacks is left empty. Values are written round-trip exact.
std::string trait_table_csv(const TraitTable& table);
std::string prompt_table_csv(const PromptTable& table);
// One line per cell: prompt, trait, fold, qwk ("undefined" when Undefined), n.
std::string cells_csv(std::span<const metrics::QwkCell> cells);

// Aligned text with three decimals; the last column reads "AVG (±SD)".
std::string trait_table_text(const TraitTable& table, std::string_view title);
std::string prompt_table_text(const PromptTable& table, std::string_view title);

struct EmitOptions {
  std::string model_name = "ArTS";
  std::string arrow;
};

// Writes cells.csv, trait_wise.csv and prompt_wise.csv (kCsv) or report.txt
// (kText) under `dir`; returns the written paths. An empty report yields
// header-only files.
std::vector<std::filesystem::path> emit_report(const metrics::QwkReport& report,
                                               ReportFormat format,
                                               const std::filesystem::path& dir,
                                               const EmitOptions& options = {});

// Reads back what the kCsv format wrote: cells, both summary rows and the
// column lists. Fold means are not stored and come back empty.
metrics::QwkReport read_report_csv(const std::filesystem::path& dir);

// "←" when the model emits the displayed columns right to left.
std::string order_arrow(std::span<const TraitName> columns,
                        std::span<const TraitName> emission_order);

// Report column order: Overall first for the ASAP-style families, the
// emission order for Feedback Prize.
std::vector<TraitName> display_columns(Family family, std::span<const TraitName> universe);

}  // namespace arts::harness
