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

#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "emunet/country.hpp"
#include "emunet/trade_matrix.hpp"
#include "support.hpp"

namespace emunet {
namespace {

TradeMatrix make(Eigen::MatrixXd w) { return test::as_trade_matrix(w); }

TEST(CountryCode, Validation) {
  EXPECT_NO_THROW(CountryCode("DE"));
  EXPECT_NO_THROW(CountryCode("BLX"));
  EXPECT_THROW(CountryCode("d"), ValidationError);
  EXPECT_THROW(CountryCode("de"), ValidationError);
  EXPECT_THROW(CountryCode("DEUT"), ValidationError);
  EXPECT_TRUE(CountryCode("AT") < CountryCode("BE"));
}

TEST(CountryCode, EmuListAndParsing) {
  const auto& emu = emu_countries();
  ASSERT_EQ(emu.size(), 19u);
  EXPECT_EQ(emu.front(), CountryCode("AT"));
  EXPECT_EQ(emu[6], CountryCode("DE"));
  EXPECT_EQ(emu.back(), CountryCode("ES"));
  auto list = parse_country_list("DE, FR,IT");
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[1], CountryCode("FR"));
  EXPECT_THROW(parse_country_list("DE,DE"), ValidationError);
  EXPECT_EQ(index_of(emu, CountryCode("NL")), 14u);
  EXPECT_FALSE(index_of(emu, CountryCode("US")));
}

TEST(Validate, AcceptsWellFormed) {
  Eigen::MatrixXd w(2, 2);
  w << 0, 1, 2, 0;
  EXPECT_NO_THROW(validate(make(w)));
}

TEST(Validate, Rejections) {
  Eigen::MatrixXd w(2, 2);
  w << 1, 1, 2, 0;
  EXPECT_THROW(validate(make(w)), ValidationError);
  w << 0, -1, 2, 0;
  EXPECT_THROW(validate(make(w)), ValidationError);
  w << 0, std::numeric_limits<double>::infinity(), 2, 0;
  EXPECT_THROW(validate(make(w)), ValidationError);
  w << 0, std::numeric_limits<double>::quiet_NaN(), 2, 0;
  EXPECT_THROW(validate(make(w)), ValidationError);
  EXPECT_THROW(validate(make(Eigen::MatrixXd::Zero(1, 1))), ValidationError);
  EXPECT_THROW(validate(TradeMatrix(2000, {CountryCode("AT"), CountryCode("AT")},
                                    Eigen::MatrixXd::Zero(2, 2))),
               ValidationError);
  EXPECT_THROW(validate(TradeMatrix(2000, {CountryCode("AT")}, Eigen::MatrixXd::Zero(2, 2))),
               ValidationError);
  EXPECT_THROW(validate(make(Eigen::MatrixXd::Zero(2, 3))), ValidationError);
}

TEST(Lengths, InverseWeightsWithAbsentLinks) {
  Eigen::MatrixXd w(3, 3);
  w << 0, 2, 0, 0.5, 0, 4, 0, 0, 0;
  auto l = to_lengths(make(w));
  EXPECT_DOUBLE_EQ(l(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(l(1, 0), 2.0);
  EXPECT_FALSE(l.has_link(0, 2));
  EXPECT_FALSE(l.has_link(0, 0));
  EXPECT_TRUE(l.has_link(1, 2));
  EXPECT_EQ(to_weights(l), w);
}

TEST(Lengths, ExpressionInput) {
  Eigen::MatrixXd w(2, 2);
  w << 0, 2, 4, 0;
  auto l = to_lengths(w * 2.0);
  EXPECT_DOUBLE_EQ(l(0, 1), 0.25);
}

TEST(Weights, TotalAndScale) {
  Eigen::MatrixXd w(2, 2);
  w << 0, 1, 2, 0;
  auto m = make(w);
  EXPECT_DOUBLE_EQ(total_weight(m), 3.0);
  auto s = scale_weights(m, 10.0);
  EXPECT_DOUBLE_EQ(total_weight(s), 30.0);
  EXPECT_EQ(s.countries(), m.countries());
  EXPECT_THROW(scale_weights(m, 0.0), ValidationError);
  EXPECT_THROW(scale_weights(m, -2.0), ValidationError);
}

TEST(Weights, LongDoubleInstantiation) {
  Matrix<long double> w(2, 2);
  w << 0, 1, 3, 0;
  BasicTradeMatrix<long double> m(2000, {CountryCode("AT"), CountryCode("BE")}, w);
  EXPECT_NO_THROW(validate(m));
  EXPECT_EQ(total_weight(m), 4.0L);
  EXPECT_EQ(to_lengths(m)(1, 0), 1.0L / 3.0L);
}

TEST(MatrixCsv, RoundTrip) {
  Eigen::MatrixXd w(3, 3);
  w << 0, 1.25e9, 0, 3e9, 0, 7.5e8, 1, 2, 0;
  auto m = make(w);
  std::ostringstream out;
  write_matrix_csv(out, m, 1e9);
  std::istringstream in(out.str());
  auto back = read_matrix_csv(in, 2000, 1e9);
  EXPECT_EQ(back.countries(), m.countries());
  EXPECT_TRUE(back.weights().isApprox(w, 1e-15));
}

TEST(MatrixCsv, Errors) {
  auto read = [](const std::string& s) {
    std::istringstream in(s);
    return read_matrix_csv(in, 2000);
  };
  EXPECT_THROW(read("exporter,AT\nAT,-\n"), ParseError);
  EXPECT_THROW(read("exporter,AT,BE\nAT,-,1\n"), ParseError);
  EXPECT_THROW(read("exporter,AT,BE\nAT,-,1\nFR,2,-\n"), ParseError);
  EXPECT_THROW(read("exporter,AT,BE\nAT,5,1\nBE,2,-\n"), ParseError);
  EXPECT_THROW(read("exporter,AT,BE\nAT,-,x\nBE,2,-\n"), ParseError);
  EXPECT_THROW(read("exporter,AT,BE\nAT,-,-1\nBE,2,-\n"), ValidationError);
}

// The two encodings of each fixture describe the same matrix.
TEST(MatrixCsv, FixtureEncodingsAgree) {
  for (int year : {1995, 2019}) {
    std::ifstream in(test::data_dir() / ("table1_" + std::to_string(year) + "_matrix.csv"));
    auto dense = read_matrix_csv(in, year, 1e9);
    auto flows = test::load_fixture(year);
    EXPECT_EQ(dense.countries(), flows.countries());
    EXPECT_LT((dense.weights() - flows.weights()).cwiseAbs().maxCoeff(), 1.0);
  }
}

}  // namespace
}  // namespace emunet
