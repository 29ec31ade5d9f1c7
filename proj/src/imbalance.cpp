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

#include "emunet/imbalance.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

#include "csv.hpp"

namespace emunet {

std::vector<SkewnessSummary> skewness_series(std::span<const TradeMatrix> matrices) {
  std::vector<const TradeMatrix*> sorted;
  for (const auto& m : matrices) sorted.push_back(&m);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TradeMatrix* a, const TradeMatrix* b) { return a->year() < b->year(); });
  std::vector<SkewnessSummary> out;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (k > 0 && sorted[k]->year() == sorted[k - 1]->year())
      throw ValidationError("duplicate year " + std::to_string(sorted[k]->year()) + " in series");
    if (k > 0 && sorted[k]->countries() != sorted[0]->countries())
      throw ValidationError("year " + std::to_string(sorted[k]->year()) +
                            " has a different country set");
    out.push_back(frisch_summary(validate(*sorted[k])));
  }
  return out;
}

void write_skewness_series_csv(std::ostream& out, std::span<const SkewnessSummary> series,
                               double unit) {
  out << "year,total_trade,absolute_skewness,relative_skewness\n";
  for (const auto& s : series)
    out << s.year << ',' << csv::shortest(s.total_trade / unit) << ','
        << csv::shortest(s.absolute_skewness / unit) << ',' << csv::shortest(s.relative_skewness)
        << '\n';
}

std::string_view to_string(TradePosition p) noexcept {
  switch (p) {
    case TradePosition::kSurplus: return "surplus";
    case TradePosition::kDeficit: return "deficit";
    case TradePosition::kBalanced: return "balanced";
  }
  return "unknown";
}

void write_skewness_summary_csv(std::ostream& out, const SkewnessSummary& s, double unit,
                                double epsilon) {
  const auto positions = surplus_classification(s, epsilon);
  out << "country,exports,imports,balance,position\n";
  for (std::size_t i = 0; i < s.countries.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out << s.countries[i].str() << ',' << csv::shortest(s.exports_total(k) / unit) << ','
        << csv::shortest(s.imports_total(k) / unit) << ',' << csv::shortest(s.balance(k) / unit)
        << ',' << to_string(positions[i]) << '\n';
  }
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

void write_skewness_svg(std::ostream& out, std::span<const SkewnessSummary> series, double unit) {
  constexpr double kWidth = 720, kHeight = 400, kLeft = 70, kRight = 70, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\">"
         "Total trade, absolute and relative skewness</text>\n";
  if (series.empty()) {
    out << "</svg>\n";
    return;
  }
  const int first = series.front().year, last = series.back().year;
  double money_max = 0, rel_max = 0;
  for (const auto& s : series) {
    money_max = std::max(money_max, s.total_trade / unit);
    rel_max = std::max(rel_max, s.relative_skewness);
  }
  money_max = money_max > 0 ? money_max * 1.1 : 1.0;
  rel_max = rel_max > 0 ? rel_max * 1.2 : 1.0;
  auto x_of = [&](int year) {
    return last == first ? kLeft + plot_w / 2 : kLeft + plot_w * (year - first) / (last - first);
  };
  auto y_money = [&](double v) { return kTop + plot_h * (1.0 - v / money_max); };
  auto y_rel = [&](double v) { return kTop + plot_h * (1.0 - v / rel_max); };

  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"#888\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double frac = t / 4.0;
    const double y = kTop + plot_h * (1.0 - frac);
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
        << fmt(money_max * frac) << "</text>\n";
    out << "<text x=\"" << kWidth - kRight + 6 << "\" y=\"" << y + 4 << "\">"
        << fmt(100.0 * rel_max * frac) << "%</text>\n";
  }
  for (const auto& s : series)
    out << "<text x=\"" << x_of(s.year) << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\">" << s.year << "</text>\n";

  auto polyline = [&](auto value_of, const char* color, const char* label, double legend_y) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& s : series) out << x_of(s.year) << ',' << value_of(s) << ' ';
    out << "\"/>\n";
    out << "<text x=\"" << kLeft + 10 << "\" y=\"" << legend_y << "\" fill=\"" << color << "\">"
        << label << "</text>\n";
  };
  polyline([&](const SkewnessSummary& s) { return y_money(s.total_trade / unit); }, "#1f77b4",
           "total trade", kTop + 16);
  polyline([&](const SkewnessSummary& s) { return y_money(s.absolute_skewness / unit); }, "#ff7f0e",
           "absolute skewness", kTop + 32);
  polyline([&](const SkewnessSummary& s) { return y_rel(s.relative_skewness); }, "#2ca02c",
           "relative skewness (right axis)", kTop + 48);
  out << "</svg>\n";
}

}  // namespace emunet
