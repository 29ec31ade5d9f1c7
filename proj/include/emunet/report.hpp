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

#ifndef EMUNET_REPORT_HPP_
#define EMUNET_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "emunet/centrality.hpp"
#include "emunet/imbalance.hpp"
#include "emunet/null_model.hpp"
#include "emunet/paths.hpp"
#include "emunet/trade_data.hpp"

namespace emunet {

inline constexpr std::string_view kVersion = "0.1.0";

// Divides every score by the score of `ref_country` in `ref_year`. All
// vectors must carry the same measure. Throws ValidationError if the
// reference year is missing or its score is zero.
std::vector<CentralityVector> normalize_baseline(std::span<const CentralityVector> per_year,
                                                 const CountryCode& ref_country, int ref_year);

// score_i / sum_j score_j. Throws ValidationError on a zero aggregate.
CentralityVector normalize_intra_year(const CentralityVector& raw);

enum class CellFormat {
  kBaseline,  // one decimal, "-" below the baseline threshold
  kShare,     // fraction shown as percent with one decimal, "-" below threshold
  kFixed2,    // two decimals
  kFixed1,    // one decimal, no threshold
  kInteger,
  kGeneral,   // six significant digits, for raw scores
};

struct RenderOptions {
  double baseline_threshold = 0.05;
  double share_threshold = 0.0005;  // 0.05 %
};

// Values for one column of a table, aligned with the table's row labels.
struct TableColumn {
  std::string label;
  std::vector<double> values;
  CellFormat format = CellFormat::kFixed1;
};

struct RenderedTable {
  std::string caption;
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  std::vector<std::vector<std::string>> cells;  // [row][column]
  std::vector<std::vector<double>> values;      // unformatted source of each cell
};

// Throws ValidationError if a column's length differs from the row count.
RenderedTable render_table(std::string caption, std::vector<std::string> row_labels,
                           std::span<const TableColumn> columns, const RenderOptions& options = {});

std::string format_cell(double value, CellFormat format, const RenderOptions& options = {});

// The trade matrix with row/column totals, surplus and deficit margins.
// Monetary values are divided by `unit`.
RenderedTable render_frisch_table(const TradeMatrix& m, double unit = 1e9);

enum class OutputFormat { kCsv, kMarkdown, kJson };

std::optional<OutputFormat> parse_output_format(std::string_view s) noexcept;
std::string_view extension(OutputFormat f) noexcept;

void write_table(std::ostream& out, const RenderedTable& table, OutputFormat format);

enum class Command { kIngest, kSkewness, kCentrality, kPaths, kReport };

std::optional<Command> parse_command(std::string_view s) noexcept;
std::string_view to_string(Command c) noexcept;

struct ReportConfig {
  Command command = Command::kReport;
  std::vector<std::filesystem::path> inputs;
  FlowSchema schema;
  ParseOptions parse;
  std::vector<CountryCode> countries = emu_countries();
  std::vector<int> years;          // empty: every year in the data
  std::vector<Measure> measures;   // empty: the command's default set
  bool skewness = false;           // skewness explicitly requested as a measure
  Normalization normalization = Normalization::kBaselineRef;
  CountryCode ref_country{"DE"};
  int ref_year = 1995;
  int runs = 10000;
  std::uint64_t seed = 20260101;
  ClosenessMode closeness_mode = kDefaultClosenessMode;
  PopularityModes popularity;
  NullModel null_model;
  OutputFormat format = OutputFormat::kCsv;
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
  RenderOptions render;
  double display_unit = 1e9;  // presentation unit for money (billions)
  double balance_epsilon = 0.0;
  bool svg = false;
};

// Throws ValidationError if the reference country is outside the whitelist,
// the reference year is outside an explicit year list, or runs < 1.
void validate(const ReportConfig& config);

// Parsed records after the optional Belgium-Luxembourg split, and one matrix
// per selected year.
struct Dataset {
  std::vector<TradeFlowRecord> records;
  std::vector<TradeMatrix> matrices;
  bool blx_split = false;
};

// Reads every input, splits BLX flows when present and builds the yearly
// matrices. Errors carry the offending file or year.
Dataset load_dataset(const ReportConfig& config);

struct PipelineResult {
  std::vector<std::filesystem::path> files;
};

// Runs the command's stages and writes its outputs plus `metadata.json` into
// config.out_dir. Output bytes depend only on inputs and config.
PipelineResult run_pipeline(const ReportConfig& config);

// Max-abs-deviation score of one candidate mode against reference values.
template <typename Mode>
struct ModeScore {
  Mode mode;
  double max_abs_deviation;
};

struct ReferenceValue {
  CountryCode country;
  double value;
};

// Scores every popularity mode by comparing target-year scores, normalized
// to `ref_country` in the baseline matrix, with `reference`. Sorted best first.
std::vector<ModeScore<PopularityMode>> calibrate_popularity(const TradeMatrix& baseline,
                                                            const TradeMatrix& target,
                                                            bool in_side,
                                                            std::span<const ReferenceValue> reference,
                                                            const CountryCode& ref_country);

// Scores both closeness modes by the normalized closeness of each country in
// `reference` (one list per matrix). Sorted best first.
std::vector<ModeScore<ClosenessMode>> calibrate_closeness(
    std::span<const TradeMatrix> matrices,
    std::span<const std::vector<ReferenceValue>> reference, int runs, std::uint64_t seed,
    const NullModel& model = {}, unsigned threads = 1);

}  // namespace emunet

#endif  // EMUNET_REPORT_HPP_
