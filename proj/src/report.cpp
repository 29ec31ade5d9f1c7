// Copyright 2026 The emunet Authors
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

#include "emunet/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

namespace emunet {

std::vector<CentralityVector> normalize_baseline(std::span<const CentralityVector> per_year,
                                                 const CountryCode& ref_country, int ref_year) {
  const CentralityVector* ref = nullptr;
  for (const auto& v : per_year) {
    if (v.measure != per_year.front().measure)
      throw ValidationError("baseline normalization mixes measures");
    if (v.year == ref_year) ref = &v;
  }
  if (ref == nullptr)
    throw ValidationError("reference year " + std::to_string(ref_year) + " not among the inputs");
  const double base = ref->at(ref_country);
  if (base == 0.0)
    throw ValidationError("reference score of " + ref_country.str() + " in " +
                          std::to_string(ref_year) + " is zero for " +
                          std::string(to_string(ref->measure)));
  std::vector<CentralityVector> out(per_year.begin(), per_year.end());
  for (auto& v : out) {
    v.values /= base;
    v.normalization = Normalization::kBaselineRef;
  }
  return out;
}

CentralityVector normalize_intra_year(const CentralityVector& raw) {
  const double total = raw.values.sum();
  if (total == 0.0)
    throw ValidationError("zero aggregate for " + std::string(to_string(raw.measure)) + " in " +
                          std::to_string(raw.year));
  CentralityVector out = raw;
  out.values /= total;
  out.normalization = Normalization::kIntraYearShare;
  return out;
}

namespace {

std::string printf_double(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::string format_cell(double value, CellFormat format, const RenderOptions& options) {
  if (std::isnan(value)) return "";
  switch (format) {
    case CellFormat::kBaseline:
      return std::abs(value) < options.baseline_threshold ? "-" : printf_double("%.1f", value);
    case CellFormat::kShare:
      return std::abs(value) < options.share_threshold ? "-" : printf_double("%.1f", 100.0 * value);
    case CellFormat::kFixed2: return printf_double("%.2f", value);
    case CellFormat::kFixed1: return printf_double("%.1f", value);
    case CellFormat::kInteger: return std::to_string(std::llround(value));
    case CellFormat::kGeneral: return printf_double("%.6g", value);
  }
  return "";
}

RenderedTable render_table(std::string caption, std::vector<std::string> row_labels,
                           std::span<const TableColumn> columns, const RenderOptions& options) {
  RenderedTable t;
  t.caption = std::move(caption);
  t.row_labels = std::move(row_labels);
  const std::size_t rows = t.row_labels.size();
  t.cells.assign(rows, {});
  t.values.assign(rows, {});
  for (const auto& col : columns) {
    if (col.values.size() != rows)
      throw ValidationError("column '" + col.label + "' has " + std::to_string(col.values.size()) +
                            " values for " + std::to_string(rows) + " rows");
    t.column_labels.push_back(col.label);
    for (std::size_t r = 0; r < rows; ++r) {
      t.cells[r].push_back(format_cell(col.values[r], col.format, options));
      t.values[r].push_back(col.values[r]);
    }
  }
  return t;
}

RenderedTable render_frisch_table(const TradeMatrix& m, double unit) {
  const auto s = frisch_summary(m);
  const auto n = static_cast<std::size_t>(m.size());
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  RenderedTable t;
  t.caption = "Trade matrix " + std::to_string(m.year()) + " (exporters in rows)";
  for (const auto& c : m.countries()) {
    t.row_labels.push_back(c.str());
    t.column_labels.push_back(c.str());
  }
  t.row_labels.insert(t.row_labels.end(), {"Total", "Deficit"});
  t.column_labels.insert(t.column_labels.end(), {"Total", "Surplus"});
  t.cells.assign(n + 2, std::vector<std::string>(n + 2));
  t.values.assign(n + 2, std::vector<double>(n + 2, nan));

  auto put = [&](std::size_t r, std::size_t c, double v, const char* pattern) {
    t.values[r][c] = v;
    t.cells[r][c] = printf_double(pattern, v);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) t.cells[i][j] = "-";
      else put(i, j, m(ii, static_cast<Eigen::Index>(j)) / unit, "%.1f");
    }
    put(i, n, s.exports_total(ii) / unit, "%.0f");
    put(n, i, s.imports_total(ii) / unit, "%.0f");
    if (s.balance(ii) > 0) put(i, n + 1, s.balance(ii) / unit, "%.1f");
    if (s.balance(ii) < 0) put(n + 1, i, s.balance(ii) / unit, "%.1f");
  }
  put(n, n, s.total_trade / unit, "%.1f");
  put(n, n + 1, s.absolute_skewness / unit, "%.1f");
  put(n + 1, n, -s.total_deficit / unit, "%.1f");
  t.values[n + 1][n + 1] = s.relative_skewness;
  t.cells[n + 1][n + 1] = printf_double("%.1f%%", 100.0 * s.relative_skewness);
  return t;
}

std::optional<OutputFormat> parse_output_format(std::string_view s) noexcept {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "md") return OutputFormat::kMarkdown;
  if (s == "json") return OutputFormat::kJson;
  return std::nullopt;
}

std::string_view extension(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::kCsv: return ".csv";
    case OutputFormat::kMarkdown: return ".md";
    case OutputFormat::kJson: return ".json";
  }
  return "";
}

void write_table(std::ostream& out, const RenderedTable& table, OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv:
      out << "country";
      for (const auto& c : table.column_labels) out << ',' << c;
      out << '\n';
      for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        out << table.row_labels[r];
        for (const auto& cell : table.cells[r]) out << ',' << cell;
        out << '\n';
      }
      break;
    case OutputFormat::kMarkdown:
      out << "**" << table.caption << "**\n\n|";
      for (const auto& c : table.column_labels) out << " | " << c;
      out << " |\n|---";
      for (std::size_t c = 0; c < table.column_labels.size(); ++c) out << "|---:";
      out << "|\n";
      for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        out << "| " << table.row_labels[r];
        for (const auto& cell : table.cells[r]) out << " | " << cell;
        out << " |\n";
      }
      break;
    case OutputFormat::kJson: {
      nlohmann::ordered_json j;
      j["caption"] = table.caption;
      j["rows"] = table.row_labels;
      j["columns"] = table.column_labels;
      auto values = nlohmann::ordered_json::array();
      for (const auto& row : table.values) {
        auto jr = nlohmann::ordered_json::array();
        for (double v : row) {
          if (std::isnan(v)) jr.push_back(nullptr);
          else jr.push_back(v);
        }
        values.push_back(std::move(jr));
      }
      j["values"] = std::move(values);
      j["cells"] = table.cells;
      out << j.dump(2) << '\n';
      break;
    }
  }
}

}  // namespace emunet
