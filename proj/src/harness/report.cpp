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

#include "arts/harness/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "arts/errors.hpp"
#include "arts/tabular.hpp"

namespace arts::harness {
namespace {

std::string exact(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string fixed3(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3f", value);
  return buffer;
}

double parse_double(std::string_view text, std::string_view where) {
  double value = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw DataError("bad number '" + std::string(text) + "' in " + std::string(where));
  }
  return value;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Display width in code points, so the arrows and "±" align.
std::size_t width(std::string_view text) {
  std::size_t n = 0;
  for (unsigned char c : text) n += (c & 0xC0) != 0x80;
  return n;
}

std::string pad(std::string_view text, std::size_t target, bool left_align) {
  const std::size_t w = width(text);
  const std::string fill(target > w ? target - w : 0, ' ');
  return left_align ? std::string(text) + fill : fill + std::string(text);
}

template <typename Key>
std::string summary_csv(std::span<const std::string> labels, std::span<const Key> keys,
                        const std::vector<TableRow<Key>>& rows) {
  std::string out = "model";
  for (const auto& label : labels) out += "," + csv_field(label);
  out += ",AVG,SD\n";
  for (const auto& row : rows) {
    out += csv_field(row.name);
    for (const auto& key : keys) {
      out += ',';
      auto it = row.summary.values.find(key);
      if (it != row.summary.values.end()) out += exact(it->second);
    }
    out += "," + exact(row.summary.avg) + "," + exact(row.summary.sd) + "\n";
  }
  return out;
}

template <typename Key>
std::string summary_text(std::string_view title, std::vector<std::string> labels,
                         std::span<const Key> keys, const std::vector<TableRow<Key>>& rows) {
  labels.insert(labels.begin(), "Model");
  labels.push_back("AVG↑ (SD↓)");
  std::vector<std::vector<std::string>> grid{labels};
  for (const auto& row : rows) {
    std::vector<std::string> line{row.name};
    for (const auto& key : keys) {
      auto it = row.summary.values.find(key);
      line.push_back(it == row.summary.values.end() ? "-" : fixed3(it->second));
    }
    line.push_back(fixed3(row.summary.avg) + " (±" + fixed3(row.summary.sd) + ")");
    grid.push_back(std::move(line));
  }
  std::vector<std::size_t> widths(labels.size(), 0);
  for (const auto& line : grid) {
    for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], width(line[c]));
  }
  std::string out(title);
  out += "\n";
  for (std::size_t r = 0; r < grid.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < grid[r].size(); ++c) {
      if (c) line += "  ";
      line += pad(grid[r][c], widths[c], c == 0);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (auto w : widths) total += w;
      out += std::string(total + 2 * (widths.size() - 1), '-') + "\n";
    }
  }
  return out;
}

std::vector<std::string> trait_labels(const TraitTable& table) {
  std::vector<std::string> labels;
  for (auto t : table.columns) labels.emplace_back(short_label(t));
  return labels;
}

std::vector<std::string> prompt_labels(const PromptTable& table) {
  std::vector<std::string> labels;
  for (auto p : table.columns) labels.push_back(prompt_label(p));
  return labels;
}

PromptId prompt_from_label(std::string_view label) {
  if (label == "none") return kNoPrompt;
  return static_cast<PromptId>(parse_double(label, "prompt column"));
}

template <typename Key, typename ParseKey>
void read_summary(const std::filesystem::path& path, std::vector<Key>& columns,
                  metrics::SummaryRow<Key>& summary, ParseKey parse_key) {
  const Table table = Table::read(path, ',');
  const auto& header = table.header();
  if (header.size() < 3 || header.front() != "model" || header[header.size() - 2] != "AVG" ||
      header.back() != "SD") {
    throw DataError("unexpected header in " + path.string());
  }
  columns.clear();
  for (std::size_t c = 1; c + 2 < header.size(); ++c) columns.push_back(parse_key(header[c]));
  if (table.rows().empty()) return;
  const auto& row = table.rows().front();
  if (row.size() != header.size()) throw DataError("short row in " + path.string());
  for (std::size_t c = 1; c + 2 < header.size(); ++c) {
    if (!row[c].empty()) summary.values[columns[c - 1]] = parse_double(row[c], path.string());
  }
  summary.avg = parse_double(row[header.size() - 2], path.string());
  summary.sd = parse_double(row.back(), path.string());
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "text") return ReportFormat::kText;
  throw ArgumentError("unknown report format '" + std::string(text) +
                      "' (expected csv or text)");
}

TraitTable trait_table(const metrics::QwkReport& report, std::string name, std::string arrow) {
  TraitTable table;
  table.columns = report.trait_columns;
  table.arrow = std::move(arrow);
  if (!report.empty()) table.rows.push_back({std::move(name), report.trait_wise});
  return table;
}

PromptTable prompt_table(const metrics::QwkReport& report, std::string name) {
  PromptTable table;
  table.columns = report.prompt_columns;
  if (!report.empty()) table.rows.push_back({std::move(name), report.prompt_wise});
  return table;
}

std::string trait_table_csv(const TraitTable& table) {
  return summary_csv<TraitName>(trait_labels(table), table.columns, table.rows);
}

std::string prompt_table_csv(const PromptTable& table) {
  return summary_csv<PromptId>(prompt_labels(table), table.columns, table.rows);
}

std::string cells_csv(std::span<const metrics::QwkCell> cells) {
  std::string out = "prompt,trait,fold,qwk,n\n";
  for (const auto& cell : cells) {
    out += prompt_label(cell.prompt) + "," + csv_field(surface(cell.trait)) + "," +
           std::to_string(cell.fold) + "," + (cell.value ? exact(*cell.value) : "undefined") +
           "," + std::to_string(cell.n) + "\n";
  }
  return out;
}

std::string trait_table_text(const TraitTable& table, std::string_view title) {
  auto labels = trait_labels(table);
  if (!labels.empty() && !table.arrow.empty()) labels.back() += " (" + table.arrow + ")";
  return summary_text<TraitName>(title, labels, table.columns, table.rows);
}

std::string prompt_table_text(const PromptTable& table, std::string_view title) {
  return summary_text<PromptId>(title, prompt_labels(table), table.columns, table.rows);
}

std::vector<std::filesystem::path> emit_report(const metrics::QwkReport& report,
                                               ReportFormat format,
                                               const std::filesystem::path& dir,
                                               const EmitOptions& options) {
  const auto traits = trait_table(report, options.model_name, options.arrow);
  const auto prompts = prompt_table(report, options.model_name);
  std::vector<std::filesystem::path> written;
  const auto put = [&](const std::string& name, const std::string& content) {
    write_file(dir / name, content);
    written.push_back(dir / name);
  };
  switch (format) {
    case ReportFormat::kCsv:
      put("cells.csv", cells_csv(report.cells));
      put("trait_wise.csv", trait_table_csv(traits));
      put("prompt_wise.csv", prompt_table_csv(prompts));
      break;
    case ReportFormat::kText: {
      std::string text = trait_table_text(traits, "Trait-wise QWK, averaged over prompts") +
                         "\n" +
                         prompt_table_text(prompts, "Prompt-wise QWK, averaged over traits");
      if (report.undefined_cells > 0) {
        text += "\n" + std::to_string(report.undefined_cells) +
                " undefined cell(s) excluded from the averages\n";
      }
      put("report.txt", text);
      break;
    }
  }
  return written;
}

metrics::QwkReport read_report_csv(const std::filesystem::path& dir) {
  metrics::QwkReport report;
  const Table cells = Table::read(dir / "cells.csv", ',');
  for (const auto& row : cells.rows()) {
    if (row.size() != 5) throw DataError("malformed row in cells.csv");
    metrics::QwkCell cell;
    cell.prompt = prompt_from_label(row[0]);
    auto trait = trait_from_string(row[1]);
    if (!trait) throw DataError("unknown trait '" + row[1] + "' in cells.csv");
    cell.trait = *trait;
    cell.fold = static_cast<int>(parse_double(row[2], "cells.csv"));
    if (row[3] != "undefined") cell.value = parse_double(row[3], "cells.csv");
    cell.n = static_cast<std::size_t>(parse_double(row[4], "cells.csv"));
    if (!cell.value) ++report.undefined_cells;
    report.cells.push_back(cell);
  }
  read_summary<TraitName>(dir / "trait_wise.csv", report.trait_columns, report.trait_wise,
                          [](const std::string& label) {
                            auto trait = trait_from_string(label);
                            if (!trait) throw DataError("unknown trait column '" + label + "'");
                            return *trait;
                          });
  read_summary<PromptId>(dir / "prompt_wise.csv", report.prompt_columns, report.prompt_wise,
                         [](const std::string& label) { return prompt_from_label(label); });
  return report;
}

std::string order_arrow(std::span<const TraitName> columns,
                        std::span<const TraitName> emission_order) {
  std::vector<TraitName> shown;
  for (auto t : emission_order) {
    if (std::find(columns.begin(), columns.end(), t) != columns.end()) shown.push_back(t);
  }
  if (shown.size() < 2) return "";
  std::vector<TraitName> in_columns;
  for (auto t : columns) {
    if (std::find(shown.begin(), shown.end(), t) != shown.end()) in_columns.push_back(t);
  }
  return in_columns == shown ? "→" : "←";
}

std::vector<TraitName> display_columns(Family family, std::span<const TraitName> universe) {
  std::vector<TraitName> columns(universe.begin(), universe.end());
  if (family != Family::kFeedback) std::reverse(columns.begin(), columns.end());
  return columns;
}

}  // namespace arts::harness
