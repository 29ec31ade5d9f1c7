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

#include "emunet/trade_matrix.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "csv.hpp"

namespace emunet {

TradeMatrix read_matrix_csv(std::istream& in, int year, double unit) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<CountryCode> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!csv::trim(line).empty()) break;
  }
  auto head = csv::split(line, ',');
  if (head.size() < 3) throw ParseError(line_no, "matrix header needs at least two countries");
  for (std::size_t k = 1; k < head.size(); ++k) {
    if (!is_valid_country_code(head[k]))
      throw ParseError(line_no, "bad country code '" + std::string(head[k]) + "' in header");
    header.emplace_back(head[k]);
  }
  require_unique(header);

  const auto n = static_cast<Eigen::Index>(header.size());
  Matrix<double> w = Matrix<double>::Zero(n, n);
  Eigen::Index row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    auto fields = csv::split(line, ',');
    if (row >= n) throw ParseError(line_no, "more rows than header columns");
    if (static_cast<Eigen::Index>(fields.size()) != n + 1)
      throw ParseError(line_no, "expected " + std::to_string(n + 1) + " fields");
    if (fields[0] != header[static_cast<std::size_t>(row)].str())
      throw ParseError(line_no, "row label '" + std::string(fields[0]) + "' does not match column " +
                                    header[static_cast<std::size_t>(row)].str());
    for (Eigen::Index j = 0; j < n; ++j) {
      auto f = fields[static_cast<std::size_t>(j + 1)];
      if (j == row) {
        if (!f.empty() && f != "-" && csv::to_double(f) != 0.0)
          throw ParseError(line_no, "nonzero diagonal for " + header[static_cast<std::size_t>(j)].str());
        continue;
      }
      auto v = csv::to_double(f);
      if (!v) throw ParseError(line_no, "bad number '" + std::string(f) + "'");
      w(row, j) = *v * unit;
    }
    ++row;
  }
  if (row != n) throw ParseError(line_no, "expected " + std::to_string(n) + " rows, got " + std::to_string(row));
  TradeMatrix m(year, std::move(header), std::move(w));
  validate(m);
  return m;
}

void write_matrix_csv(std::ostream& out, const TradeMatrix& m, double unit) {
  out << "exporter";
  for (const auto& c : m.countries()) out << ',' << c.str();
  out << '\n';
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    out << m.countries()[static_cast<std::size_t>(i)].str();
    for (Eigen::Index j = 0; j < m.size(); ++j) {
      out << ',';
      if (i == j) out << '-';
      else out << csv::shortest(m(i, j) / unit);
    }
    out << '\n';
  }
}

}  // namespace emunet
