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
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "emunet/report.hpp"
#include "support.hpp"

namespace emunet {
namespace {

namespace fs = std::filesystem;
using test::load_fixture;
using test::ScratchDir;
using test::slurp;

CentralityVector vec(int year, std::vector<double> v) {
  CentralityVector c;
  c.measure = Measure::kOutDegree;
  c.year = year;
  for (std::size_t i = 0; i < v.size(); ++i) c.countries.emplace_back("C" + std::to_string(i));
  c.values = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  return c;
}

TEST(Normalize, Baseline) {
  std::vector<CentralityVector> years{vec(1995, {2, 4}), vec(2019, {6, 1})};
  auto out = normalize_baseline(years, CountryCode("C1"), 1995);
  EXPECT_EQ(out[0].values, Eigen::Vector2d(0.5, 1.0));
  EXPECT_EQ(out[1].values, Eigen::Vector2d(1.5, 0.25));
  EXPECT_EQ(out[1].normalization, Normalization::kBaselineRef);
  EXPECT_THROW(normalize_baseline(years, CountryCode("C1"), 2000), ValidationError);
  EXPECT_THROW(normalize_baseline(years, CountryCode("C9"), 1995), ValidationError);
  std::vector<CentralityVector> zero{vec(1995, {0, 4})};
  EXPECT_THROW(normalize_baseline(zero, CountryCode("C0"), 1995), ValidationError);
}

TEST(Normalize, IntraYearShares) {
  auto s = normalize_intra_year(vec(2000, {1, 3, 4}));
  EXPECT_EQ(s.values, Eigen::Vector3d(0.125, 0.375, 0.5));
  EXPECT_THROW(normalize_intra_year(vec(2000, {0, 0})), ValidationError);
}

TEST(Normalize, SharesSumToOne) {
  const auto m = load_fixture(2019);
  for (auto measure : local_measures())
    EXPECT_NEAR(normalize_intra_year(compute_local(m, measure)).values.sum(), 1.0, 1e-12);
}

TEST(Normalize, DegreeTotalsEqualTotalWeight) {
  for (int year : {1995, 2019}) {
    const auto m = load_fixture(year);
    EXPECT_NEAR(out_degree(m).values.sum(), total_weight(m), 1e-6);
    EXPECT_NEAR(in_degree(m).values.sum(), total_weight(m), 1e-6);
  }
}

TEST(Format, Cells) {
  EXPECT_EQ(format_cell(0.04, CellFormat::kBaseline), "-");
  EXPECT_EQ(format_cell(0.05, CellFormat::kBaseline), "0.1");
  EXPECT_EQ(format_cell(2.229, CellFormat::kBaseline), "2.2");
  EXPECT_EQ(format_cell(0.267, CellFormat::kShare), "26.7");
  EXPECT_EQ(format_cell(0.0004, CellFormat::kShare), "-");
  EXPECT_EQ(format_cell(0.613, CellFormat::kFixed2), "0.61");
  EXPECT_EQ(format_cell(13.0, CellFormat::kInteger), "13");
  EXPECT_EQ(format_cell(1.5e9, CellFormat::kGeneral), "1.5e+09");
  EXPECT_EQ(format_cell(std::nan(""), CellFormat::kFixed1), "");
  RenderOptions loose{0.5, 0.01};
  EXPECT_EQ(format_cell(0.4, CellFormat::kBaseline, loose), "-");
  EXPECT_EQ(format_cell(0.009, CellFormat::kShare, loose), "-");
}

RenderedTable sample_table() {
  std::vector<TableColumn> cols{{"a 1995", {1.0, 0.04}, CellFormat::kBaseline},
                                {"b 1995", {0.267, 0.5}, CellFormat::kShare}};
  return render_table("Sample", {"DE", "FR"}, cols);
}

TEST(Render, Grid) {
  const auto t = sample_table();
  EXPECT_EQ(t.cells, (std::vector<std::vector<std::string>>{{"1.0", "26.7"}, {"-", "50.0"}}));
  std::vector<TableColumn> bad{{"x", {1.0}, CellFormat::kFixed1}};
  EXPECT_THROW(render_table("", {"DE", "FR"}, bad), ValidationError);
}

TEST(Render, Formats) {
  const auto t = sample_table();
  std::ostringstream csv, md, js;
  write_table(csv, t, OutputFormat::kCsv);
  write_table(md, t, OutputFormat::kMarkdown);
  write_table(js, t, OutputFormat::kJson);
  EXPECT_EQ(csv.str(), "country,a 1995,b 1995\nDE,1.0,26.7\nFR,-,50.0\n");
  EXPECT_EQ(md.str(), "**Sample**\n\n| | a 1995 | b 1995 |\n|---|---:|---:|\n| DE | 1.0 | 26.7 |\n| FR | - | 50.0 |\n");
  const auto j = nlohmann::json::parse(js.str());
  EXPECT_EQ(j["caption"], "Sample");
  EXPECT_EQ(j["rows"][1], "FR");
  EXPECT_DOUBLE_EQ(j["values"][0][1].get<double>(), 0.267);
  EXPECT_EQ(j["cells"][1][0], "-");
}

TEST(Render, FrischTable) {
  const auto t = render_frisch_table(load_fixture(1995));
  ASSERT_EQ(t.row_labels.size(), 21u);
  ASSERT_EQ(t.column_labels.size(), 21u);
  EXPECT_EQ(t.cells[6][6], "-");
  EXPECT_EQ(t.cells[19][19], "872.5");
  EXPECT_EQ(t.cells[6][20], "6.9");    // DE surplus
  EXPECT_EQ(t.cells[20][0], "-9.8");   // AT deficit
  EXPECT_EQ(t.cells[20][20], "7.3%");
  EXPECT_EQ(t.cells[1][19], "104");
}

TEST(Names, OutputFormatsAndCommands) {
  EXPECT_EQ(parse_output_format("md"), OutputFormat::kMarkdown);
  EXPECT_EQ(extension(OutputFormat::kJson), ".json");
  EXPECT_FALSE(parse_output_format("xlsx"));
  for (auto c : {Command::kIngest, Command::kSkewness, Command::kCentrality, Command::kPaths, Command::kReport})
    EXPECT_EQ(parse_command(to_string(c)), c);
}

ReportConfig fixture_config(Command command, const fs::path& out) {
  ReportConfig c;
  c.command = command;
  c.inputs = {test::fixture_path(1995), test::fixture_path(2019)};
  c.out_dir = out;
  c.runs = 200;
  return c;
}

TEST(ConfigValidation, Rejections) {
  ScratchDir dir("cfg");
  auto c = fixture_config(Command::kReport, dir.path());
  EXPECT_NO_THROW(validate(c));
  auto bad = c;
  bad.runs = 0;
  EXPECT_THROW(validate(bad), ValidationError);
  bad = c;
  bad.countries = {CountryCode("DE")};
  EXPECT_THROW(validate(bad), ValidationError);
  bad = c;
  bad.ref_country = CountryCode("US");
  EXPECT_THROW(validate(bad), ValidationError);
  bad = c;
  bad.years = {2019};
  EXPECT_THROW(validate(bad), ValidationError);
  bad.command = Command::kSkewness;
  EXPECT_NO_THROW(validate(bad));
  bad = c;
  bad.inputs.clear();
  EXPECT_THROW(validate(bad), ValidationError);
}

TEST(Dataset, LoadsFixtures) {
  ScratchDir dir("ds");
  const auto d = load_dataset(fixture_config(Command::kIngest, dir.path()));
  ASSERT_EQ(d.matrices.size(), 2u);
  EXPECT_EQ(d.matrices[0].year(), 1995);
  EXPECT_FALSE(d.blx_split);
  EXPECT_EQ(d.matrices[1].weights(), load_fixture(2019).weights());
}

TEST(Dataset, YearFilterAndMissingFile) {
  ScratchDir dir("ds2");
  auto c = fixture_config(Command::kIngest, dir.path());
  c.years = {2019};
  EXPECT_EQ(load_dataset(c).matrices.size(), 1u);
  c.years = {2005};
  EXPECT_THROW(load_dataset(c), ValidationError);
  c.inputs = {dir.path() / "missing.csv"};
  EXPECT_THROW(load_dataset(c), IoError);
}

TEST(Dataset, AutoSplitsBlx) {
  ScratchDir dir("blx");
  const fs::path input = dir.path() / "blx.csv";
  {
    std::ofstream out(input);
    out << "year,exporter,importer,value\n"
        << "1995,BLX,DE,100\n1995,DE,BLX,50\n1995,DE,FR,10\n1995,FR,DE,10\n1995,BLX,FR,20\n1995,FR,BLX,20\n"
        << "2000,BE,DE,80\n2000,LU,DE,20\n2000,DE,BE,45\n2000,DE,LU,5\n"
        << "2000,BE,FR,10\n2000,LU,FR,10\n2000,FR,BE,10\n2000,FR,LU,10\n"
        << "2000,BE,LU,3\n2000,LU,BE,1\n2001,BE,LU,3\n2001,LU,BE,1\n"
        << "2001,BE,DE,1\n2001,DE,BE,1\n2001,BE,FR,1\n2001,FR,BE,1\n2001,DE,FR,1\n";
  }
  ReportConfig c;
  c.command = Command::kIngest;
  c.inputs = {input};
  c.countries = parse_country_list("BE,DE,FR,LU");
  c.years = {1995};
  c.ref_year = 1995;
  const auto d = load_dataset(c);
  EXPECT_TRUE(d.blx_split);
  const auto& m = d.matrices.at(0);
  const auto be = m.index(kBelgium), lu = m.index(kLuxembourg), de = m.index(CountryCode("DE"));
  // 2000 share 0.8 for exports to DE, 2001 share 1.0: mean 0.9
  EXPECT_NEAR(m(be, de), 90.0, 1e-9);
  EXPECT_NEAR(m(lu, de), 10.0, 1e-9);
  EXPECT_NEAR(m(be, lu), 3.0, 1e-9);
  EXPECT_NEAR(m(lu, be), 1.0, 1e-9);
  EXPECT_NEAR(m(de, be) + m(de, lu), 50.0, 1e-12);
}

TEST(Calibration, SelectsDefaultPopularityModes) {
  const auto a = load_fixture(1995), b = load_fixture(2019);
  const std::vector<ReferenceValue> out_ref{{CountryCode("DE"), 5.0}, {CountryCode("FR"), 1.1},
                                            {CountryCode("NL"), 1.4}};
  const std::vector<ReferenceValue> in_ref{{CountryCode("DE"), 4.6}, {CountryCode("FR"), 3.0},
                                           {CountryCode("NL"), 3.9}};
  const auto outs = calibrate_popularity(a, b, false, out_ref, CountryCode("DE"));
  const auto ins = calibrate_popularity(a, b, true, in_ref, CountryCode("DE"));
  ASSERT_EQ(outs.size(), 4u);
  EXPECT_EQ(outs.front().mode, kDefaultOutPopularityMode);
  EXPECT_EQ(ins.front().mode, kDefaultInPopularityMode);
  EXPECT_LT(outs.front().max_abs_deviation, 0.06);
  EXPECT_LT(ins.front().max_abs_deviation, 0.06);
}

TEST(Calibration, SelectsDefaultClosenessMode) {
  const std::vector<TradeMatrix> ms{load_fixture(1995), load_fixture(2019)};
  const std::vector<std::vector<ReferenceValue>> ref{
      {{CountryCode("FR"), 0.60}, {CountryCode("DE"), 0.61}, {CountryCode("NL"), 0.59}},
      {{CountryCode("FR"), 0.83}, {CountryCode("DE"), 0.87}, {CountryCode("NL"), 0.84}}};
  const auto scores = calibrate_closeness(ms, ref, 200, 20260101);
  EXPECT_EQ(scores.front().mode, kDefaultClosenessMode);
  EXPECT_LT(scores.front().max_abs_deviation, 0.05);
}

std::map<std::string, std::string> run_and_read(const ReportConfig& c) {
  std::map<std::string, std::string> out;
  for (const auto& f : run_pipeline(c).files) out[f.filename().string()] = slurp(f);
  return out;
}

TEST(Pipeline, ReportIsByteIdenticalAcrossRunsAndThreads) {
  ScratchDir a("rep_a"), b("rep_b");
  auto ca = fixture_config(Command::kReport, a.path());
  auto cb = fixture_config(Command::kReport, b.path());
  cb.threads = 3;
  const auto fa = run_and_read(ca), fb = run_and_read(cb);
  ASSERT_EQ(fa.size(), fb.size());
  for (const auto& [name, content] : fa) {
    if (name == "metadata.json") continue;  // records the thread-free config only
    EXPECT_EQ(content, fb.at(name)) << name;
  }
  EXPECT_TRUE(fa.contains("table2a.csv"));
  EXPECT_TRUE(fa.contains("table2b.csv"));
  EXPECT_TRUE(fa.contains("table3.csv"));
  EXPECT_TRUE(fa.contains("frisch_1995.csv"));
  EXPECT_TRUE(fa.contains("skewness_series.csv"));
  EXPECT_EQ(fa.at("metadata.json"), fb.at("metadata.json"));
}

TEST(Pipeline, MetadataRecordsModes) {
  ScratchDir dir("meta");
  auto c = fixture_config(Command::kPaths, dir.path());
  run_pipeline(c);
  const auto j = nlohmann::json::parse(slurp(dir.path() / "metadata.json"));
  EXPECT_EQ(j["command"], "paths");
  EXPECT_EQ(j["popularity_mode"]["out"], std::string(to_string(kDefaultOutPopularityMode)));
  EXPECT_EQ(j["popularity_mode"]["in"], std::string(to_string(kDefaultInPopularityMode)));
  EXPECT_EQ(j["closeness_mode"], "length");
  EXPECT_EQ(j["normalized_closeness"]["runs"], 200);
  EXPECT_EQ(j["normalized_closeness"]["seed"], 20260101u);
  EXPECT_TRUE(j["normalized_closeness"]["envelope"].contains("2019"));
  EXPECT_EQ(j["outputs"][0], "paths.csv");
}

TEST(Pipeline, CentralityCommandFormats) {
  for (auto norm : {Normalization::kRaw, Normalization::kBaselineRef, Normalization::kIntraYearShare}) {
    ScratchDir dir("cent");
    auto c = fixture_config(Command::kCentrality, dir.path());
    c.normalization = norm;
    c.format = OutputFormat::kJson;
    const auto files = run_pipeline(c).files;
    const auto name = "centrality_" + std::string(to_string(norm)) + ".json";
    EXPECT_EQ(files.front().filename(), name);
    const auto j = nlohmann::json::parse(slurp(files.front()));
    EXPECT_EQ(j["rows"].size(), 19u);
    EXPECT_EQ(j["columns"].size(), 14u);  // 7 measures x 2 years
  }
}

TEST(Pipeline, IngestRoundTrips) {
  ScratchDir dir("ing");
  run_pipeline(fixture_config(Command::kIngest, dir.path()));
  std::ifstream in(dir.path() / "matrix_2019.csv");
  const auto m = read_matrix_csv(in, 2019);
  EXPECT_EQ(m.weights(), load_fixture(2019).weights());
}

}  // namespace
}  // namespace emunet
