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

#include "emunet/trade_data.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "csv.hpp"

namespace emunet {
namespace {

std::size_t column_index(const std::vector<std::string_view>& header, const std::string& name,
                         std::size_t line) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ParseError(line, "missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

bool is_be_or_lu(const CountryCode& c) { return c == kBelgium || c == kLuxembourg; }

}  // namespace

std::vector<TradeFlowRecord> parse_flows(std::istream& in, const FlowSchema& schema,
                                         const ParseOptions& options) {
  std::vector<TradeFlowRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t year_col = 0, exp_col = 0, imp_col = 0, val_col = 0, width = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (csv::trim(line).empty()) continue;
    auto fields = csv::split(line, schema.delimiter);
    if (!have_header) {
      year_col = column_index(fields, schema.year_column, line_no);
      exp_col = column_index(fields, schema.exporter_column, line_no);
      imp_col = column_index(fields, schema.importer_column, line_no);
      val_col = column_index(fields, schema.value_column, line_no);
      width = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != width)
      throw ParseError(line_no, "expected " + std::to_string(width) + " fields, got " +
                                    std::to_string(fields.size()));
    auto year = csv::to_int(fields[year_col]);
    if (!year) throw ParseError(line_no, "bad year '" + std::string(fields[year_col]) + "'");
    if (*year < options.min_year || *year > options.max_year)
      throw ParseError(line_no, "year " + std::to_string(*year) + " outside [" +
                                    std::to_string(options.min_year) + ", " +
                                    std::to_string(options.max_year) + "]");
    for (auto col : {exp_col, imp_col}) {
      if (!is_valid_country_code(fields[col]))
        throw ParseError(line_no, "bad country code '" + std::string(fields[col]) + "'");
    }
    CountryCode exporter(fields[exp_col]);
    CountryCode importer(fields[imp_col]);
    if (exporter == importer) throw ParseError(line_no, "self-loop " + exporter.str() + "->" + importer.str());
    if (options.whitelist) {
      for (const auto* c : {&exporter, &importer}) {
        if (!index_of(*options.whitelist, *c))
          throw ParseError(line_no, "country " + c->str() + " not in whitelist");
      }
    }
    auto value = csv::to_double(fields[val_col]);
    if (!value || !std::isfinite(*value))
      throw ParseError(line_no, "bad value '" + std::string(fields[val_col]) + "'");
    if (*value < 0) throw ParseError(line_no, "negative value " + std::string(fields[val_col]));
    records.push_back({*year, std::move(exporter), std::move(importer), *value});
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  return records;
}

void write_flows(std::ostream& out, std::span<const TradeFlowRecord> records) {
  out << "year,exporter,importer,value\n";
  for (const auto& r : records)
    out << r.year << ',' << r.exporter.str() << ',' << r.importer.str() << ','
        << csv::shortest(r.value) << '\n';
}

TradeMatrix build_matrix(std::span<const TradeFlowRecord> records, int year,
                         const std::vector<CountryCode>& countries, UnknownCountryPolicy policy) {
  require_unique(countries);
  const auto n = static_cast<Eigen::Index>(countries.size());
  Matrix<double> w = Matrix<double>::Zero(n, n);
  bool any = false;
  for (const auto& r : records) {
    if (r.year != year) continue;
    any = true;
    auto i = index_of(countries, r.exporter);
    auto j = index_of(countries, r.importer);
    if (!i || !j) {
      if (policy == UnknownCountryPolicy::kError)
        throw ValidationError("year " + std::to_string(year) + ": flow " + r.exporter.str() + "->" +
                              r.importer.str() + " involves a country outside the matrix");
      continue;
    }
    w(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(*j)) += r.value;
  }
  if (!any) throw ValidationError("empty year " + std::to_string(year));
  TradeMatrix m(year, countries, std::move(w));
  validate(m);
  return m;
}

void BlxShareTable::set(const CountryCode& counterparty, FlowDirection dir, double share_be) {
  if (!(share_be >= 0.0 && share_be <= 1.0))
    throw ValidationError("share for " + counterparty.str() + " outside [0, 1]");
  shares_[{counterparty, dir}] = share_be;
}

std::optional<double> BlxShareTable::share_be(const CountryCode& counterparty,
                                              FlowDirection dir) const {
  auto it = shares_.find({counterparty, dir});
  if (it == shares_.end()) return std::nullopt;
  return it->second;
}

BlxShareTable estimate_blx_shares(std::span<const TradeFlowRecord> records,
                                  const ShareEstimationOptions& options) {
  // flows[(counterparty, direction)][year] = {BE, LU}
  std::map<std::pair<CountryCode, FlowDirection>, std::map<int, std::pair<double, double>>> flows;
  for (const auto& r : records) {
    if (r.year < options.first_year || r.year > options.last_year) continue;
    const bool be_out = r.exporter == kBelgium, lu_out = r.exporter == kLuxembourg;
    const bool be_in = r.importer == kBelgium, lu_in = r.importer == kLuxembourg;
    if ((be_out || lu_out) && !is_be_or_lu(r.importer)) {
      auto& cell = flows[{r.importer, FlowDirection::kExport}][r.year];
      (be_out ? cell.first : cell.second) += r.value;
    } else if ((be_in || lu_in) && !is_be_or_lu(r.exporter)) {
      auto& cell = flows[{r.exporter, FlowDirection::kImport}][r.year];
      (be_in ? cell.first : cell.second) += r.value;
    }
  }

  BlxShareTable table;
  for (const auto& [key, by_year] : flows) {
    double sum = 0.0;
    int used = 0;
    for (const auto& [year, be_lu] : by_year) {
      const double combined = be_lu.first + be_lu.second;
      if (combined <= 0.0) continue;
      sum += be_lu.first / combined;
      ++used;
    }
    if (used == 0) {
      table.set(key.first, key.second, options.fallback_share_be);
      table.add_fallback(key.first, key.second);
    } else {
      table.set(key.first, key.second, std::clamp(sum / used, 0.0, 1.0));
    }
  }
  return table;
}

double LinearTrend::at(int year) const { return std::max(0.0, intercept + slope * year); }

LinearTrend fit_linear_trend(std::span<const std::pair<int, double>> series) {
  std::set<int> distinct;
  for (const auto& p : series) distinct.insert(p.first);
  if (distinct.size() < 2) throw ValidationError("linear trend needs at least two distinct years");
  const double n = static_cast<double>(series.size());
  double mean_x = 0, mean_y = 0;
  for (const auto& [x, y] : series) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= n;
  mean_y /= n;
  double sxy = 0, sxx = 0;
  for (const auto& [x, y] : series) {
    sxy += (x - mean_x) * (y - mean_y);
    sxx += (x - mean_x) * (x - mean_x);
  }
  LinearTrend t;
  t.slope = sxy / sxx;
  t.intercept = mean_y - t.slope * mean_x;
  return t;
}

BeLuTrend fit_be_lu_trend(std::span<const TradeFlowRecord> records, int first_year, int last_year) {
  std::map<int, double> be_lu, lu_be;
  for (const auto& r : records) {
    if (r.year < first_year || r.year > last_year) continue;
    if (r.exporter == kBelgium && r.importer == kLuxembourg) be_lu[r.year] += r.value;
    if (r.exporter == kLuxembourg && r.importer == kBelgium) lu_be[r.year] += r.value;
  }
  auto fit = [](const std::map<int, double>& m, const char* what) {
    std::vector<std::pair<int, double>> series(m.begin(), m.end());
    try {
      return fit_linear_trend(series);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(what) + ": " + e.what());
    }
  };
  return {fit(be_lu, "BE->LU trend"), fit(lu_be, "LU->BE trend")};
}

namespace {

// Splits `value` into (BE, LU) parts whose sum is exactly `value`: the
// smaller part comes from the product, the larger from an exact subtraction.
std::pair<double, double> split_exact(double value, double share_be) {
  if (share_be >= 0.5) {
    const double be = value * share_be;
    return {be, value - be};
  }
  const double lu = value * (1.0 - share_be);
  return {value - lu, lu};
}

}  // namespace

std::vector<TradeFlowRecord> split_blx(std::span<const TradeFlowRecord> records,
                                       const BlxShareTable& shares, const BeLuTrend& trend) {
  std::set<std::string> missing;
  std::set<int> blx_years;
  std::vector<TradeFlowRecord> out;
  out.reserve(records.size() * 2);
  for (const auto& r : records) {
    const bool blx_out = r.exporter == kBelgiumLuxembourg;
    const bool blx_in = r.importer == kBelgiumLuxembourg;
    if (!blx_out && !blx_in) {
      out.push_back(r);
      continue;
    }
    blx_years.insert(r.year);
    const CountryCode& other = blx_out ? r.importer : r.exporter;
    const auto dir = blx_out ? FlowDirection::kExport : FlowDirection::kImport;
    auto share = shares.share_be(other, dir);
    if (!share) {
      missing.insert(other.str() + (blx_out ? " (export)" : " (import)"));
      continue;
    }
    auto [be, lu] = split_exact(r.value, *share);
    if (blx_out) {
      out.push_back({r.year, kBelgium, r.importer, be});
      out.push_back({r.year, kLuxembourg, r.importer, lu});
    } else {
      out.push_back({r.year, r.exporter, kBelgium, be});
      out.push_back({r.year, r.exporter, kLuxembourg, lu});
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ValidationError("no Belgium/Luxembourg share for counterparties: " + list);
  }
  for (int year : blx_years) {
    out.push_back({year, kBelgium, kLuxembourg, trend.be_to_lu.at(year)});
    out.push_back({year, kLuxembourg, kBelgium, trend.lu_to_be.at(year)});
  }
  return out;
}

}  // namespace emunet
