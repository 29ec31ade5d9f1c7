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

#ifndef EMUNET_TRADE_DATA_HPP_
#define EMUNET_TRADE_DATA_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "emunet/country.hpp"
#include "emunet/trade_matrix.hpp"

namespace emunet {

struct TradeFlowRecord {
  int year = 0;
  CountryCode exporter{"XX"};
  CountryCode importer{"YY"};
  double value = 0.0;  // currency units

  friend bool operator==(const TradeFlowRecord&, const TradeFlowRecord&) = default;
};

// Column mapping for delimited flow files.
struct FlowSchema {
  std::string year_column = "year";
  std::string exporter_column = "exporter";
  std::string importer_column = "importer";
  std::string value_column = "value";
  char delimiter = ',';
};

struct ParseOptions {
  int min_year = 1995;
  int max_year = 2100;
  // When set, codes outside the list are a validation error.
  std::optional<std::vector<CountryCode>> whitelist;
};

// Reads a header line followed by one record per line. Blank lines are
// skipped. Throws ParseError (with the line number) on malformed rows,
// negative values, self-loops, out-of-range years and codes outside the
// whitelist.
std::vector<TradeFlowRecord> parse_flows(std::istream& in, const FlowSchema& schema = {},
                                         const ParseOptions& options = {});

// Inverse of parse_flows with the default schema. Values are written with the
// shortest representation that round-trips bit-exactly.
void write_flows(std::ostream& out, std::span<const TradeFlowRecord> records);

enum class UnknownCountryPolicy { kDrop, kError };

// Sums all flows of `year` into an n x n matrix over `countries`. Duplicate
// (exporter, importer) rows are summed. Throws ValidationError if no record
// has that year.
TradeMatrix build_matrix(std::span<const TradeFlowRecord> records, int year,
                         const std::vector<CountryCode>& countries,
                         UnknownCountryPolicy policy = UnknownCountryPolicy::kDrop);

enum class FlowDirection { kExport, kImport };

// Belgium's share of combined Belgium + Luxembourg trade with each
// counterparty, per direction. Luxembourg's share is the complement.
class BlxShareTable {
 public:
  void set(const CountryCode& counterparty, FlowDirection dir, double share_be);
  std::optional<double> share_be(const CountryCode& counterparty, FlowDirection dir) const;
  std::optional<double> share_lu(const CountryCode& counterparty, FlowDirection dir) const {
    auto s = share_be(counterparty, dir);
    return s ? std::optional<double>(1.0 - *s) : std::nullopt;
  }

  // Counterparties whose share fell back to the default (no usable year).
  const std::vector<std::pair<CountryCode, FlowDirection>>& fallbacks() const noexcept {
    return fallbacks_;
  }
  void add_fallback(const CountryCode& c, FlowDirection dir) { fallbacks_.emplace_back(c, dir); }

  std::size_t size() const noexcept { return shares_.size(); }

 private:
  std::map<std::pair<CountryCode, FlowDirection>, double> shares_;
  std::vector<std::pair<CountryCode, FlowDirection>> fallbacks_;
};

struct ShareEstimationOptions {
  int first_year = 1999;
  int last_year = 2019;
  // Share assigned when a counterparty has zero combined flow in every year.
  double fallback_share_be = 1.0;
};

// Per counterparty and direction: mean over years of BE / (BE + LU). Years
// with zero combined flow are left out of the mean.
BlxShareTable estimate_blx_shares(std::span<const TradeFlowRecord> records,
                                  const ShareEstimationOptions& options = {});

struct LinearTrend {
  double slope = 0.0;
  double intercept = 0.0;

  // Value at `year`, clamped at zero.
  double at(int year) const;
};

// Least-squares lines for the Belgium -> Luxembourg and Luxembourg -> Belgium
// flows.
struct BeLuTrend {
  LinearTrend be_to_lu;
  LinearTrend lu_to_be;
};

// Ordinary least squares of value on year. Throws ValidationError with fewer
// than two distinct years.
LinearTrend fit_linear_trend(std::span<const std::pair<int, double>> series);

BeLuTrend fit_be_lu_trend(std::span<const TradeFlowRecord> records, int first_year = 1999,
                          int last_year = 2019);

// Replaces every BLX flow with a Belgium part and a Luxembourg part that sum
// exactly to the original value, and injects the BE <-> LU flows from the
// trend for each year that had BLX data. Non-BLX records pass through.
// Throws ValidationError listing every counterparty without a share.
std::vector<TradeFlowRecord> split_blx(std::span<const TradeFlowRecord> records,
                                       const BlxShareTable& shares, const BeLuTrend& trend);

}  // namespace emunet

#endif  // EMUNET_TRADE_DATA_HPP_
