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

#ifndef EMUNET_IMBALANCE_HPP_
#define EMUNET_IMBALANCE_HPP_

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "emunet/trade_matrix.hpp"

namespace emunet {

// Frisch accounting for one closed trade matrix.
template <typename Scalar>
struct BasicSkewnessSummary {
  int year = 0;
  std::vector<CountryCode> countries;
  Vector<Scalar> exports_total;  // row sums
  Vector<Scalar> imports_total;  // column sums
  Vector<Scalar> balance;        // exports - imports
  Scalar total_trade = 0;
  Scalar absolute_skewness = 0;  // sum of surpluses
  Scalar relative_skewness = 0;  // fraction in [0, 1]
  Scalar total_deficit = 0;      // sum of deficits, as a positive number
};

using SkewnessSummary = BasicSkewnessSummary<double>;

template <typename Scalar>
BasicSkewnessSummary<Scalar> frisch_summary(const BasicTradeMatrix<Scalar>& m) {
  BasicSkewnessSummary<Scalar> s;
  s.year = m.year();
  s.countries = m.countries();
  s.exports_total = m.weights().rowwise().sum();
  s.imports_total = m.weights().colwise().sum().transpose();
  s.balance = s.exports_total - s.imports_total;
  s.total_trade = m.weights().sum();
  s.absolute_skewness = s.balance.cwiseMax(Scalar(0)).sum();
  s.total_deficit = -s.balance.cwiseMin(Scalar(0)).sum();
  s.relative_skewness = s.total_trade > Scalar(0) ? s.absolute_skewness / s.total_trade : Scalar(0);
  return s;
}

enum class TradePosition { kSurplus, kDeficit, kBalanced };

// |balance| <= epsilon is Balanced; epsilon = 0 classifies by strict sign.
template <typename Scalar>
std::vector<TradePosition> surplus_classification(const BasicSkewnessSummary<Scalar>& s,
                                                  Scalar epsilon = Scalar(0)) {
  std::vector<TradePosition> out;
  out.reserve(static_cast<std::size_t>(s.balance.size()));
  for (Eigen::Index i = 0; i < s.balance.size(); ++i) {
    const Scalar b = s.balance(i);
    out.push_back(b > epsilon ? TradePosition::kSurplus
                  : b < -epsilon ? TradePosition::kDeficit
                                 : TradePosition::kBalanced);
  }
  return out;
}

// One summary per year, sorted by year. Throws ValidationError on a duplicate
// year or a country list that differs between years.
std::vector<SkewnessSummary> skewness_series(std::span<const TradeMatrix> matrices);

// `year,total_trade,absolute_skewness,relative_skewness`, one row per year.
// Monetary columns are divided by `unit`.
void write_skewness_series_csv(std::ostream& out, std::span<const SkewnessSummary> series,
                               double unit = 1.0);

std::string_view to_string(TradePosition p) noexcept;

// Per-country exports, imports, balance and position for a single year.
void write_skewness_summary_csv(std::ostream& out, const SkewnessSummary& s, double unit = 1.0,
                                double epsilon = 0.0);

// Line chart of total trade and absolute skewness with relative skewness on a
// secondary axis.
void write_skewness_svg(std::ostream& out, std::span<const SkewnessSummary> series,
                        double unit = 1e9);

}  // namespace emunet

#endif  // EMUNET_IMBALANCE_HPP_
