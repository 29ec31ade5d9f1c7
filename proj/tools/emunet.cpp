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

// emunet: trade-network metrics from bilateral flow files.
//
//   emunet report --input data/table1_1995.csv --input data/table1_2019.csv --out out/

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emunet/report.hpp"

namespace {

using emunet::ValidationError;

std::vector<int> parse_years(const std::string& text) {
  std::vector<int> years;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) {
      auto dash = item.find('-');
      try {
        if (dash == std::string::npos) {
          years.push_back(std::stoi(item));
        } else {
          const int from = std::stoi(item.substr(0, dash)), to = std::stoi(item.substr(dash + 1));
          if (to < from) throw ValidationError("empty year range " + item);
          for (int y = from; y <= to; ++y) years.push_back(y);
        }
      } catch (const std::logic_error&) {
        throw ValidationError("bad --years item '" + item + "'");
      }
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return years;
}

template <typename T, typename Parser>
T parse_enum(const std::string& flag, const std::string& value, Parser parse) {
  auto v = parse(value);
  if (!v) throw ValidationError("unknown value '" + value + "' for " + flag);
  return *v;
}

struct Flags {
  std::vector<std::string> inputs;
  std::string years;
  std::string countries;
  std::vector<std::string> measures;
  std::string normalization = "baseline";
  std::string ref_country = "DE";
  int ref_year = 1995;
  int k = 10000;
  std::uint64_t seed = 20260101;
  std::string closeness_mode = "length";
  std::string popularity_mode;
  std::string in_popularity_mode = "target-in";
  std::string out_popularity_mode = "own-squared";
  std::string null_law = "multinomial";
  double null_unit = 1e6;
  std::string null_pattern = "complete";
  std::string format = "csv";
  std::string out = ".";
  unsigned threads = 1;
  char delimiter = ',';
  int max_year = 2100;
  double balance_eps = 0.0;
  double threshold_baseline = 0.05;
  double threshold_share = 0.0005;
  bool svg = false;
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--input,-i", f.inputs, "flow CSV (year,exporter,importer,value); repeatable")->required();
  cmd.add_option("--years", f.years, "years to analyse, e.g. 1995,2019 or 1995-2019 (default: all)");
  cmd.add_option("--countries", f.countries, "comma-separated country codes (default: 19 EMU members)");
  cmd.add_option("--measure", f.measures, "measures (out-degree, in-degree, reciprocity, triplets, "
                                           "three-cycles, out-popularity, in-popularity, betweenness, "
                                           "closeness, normalized-closeness, skewness)")
      ->delimiter(',');
  cmd.add_option("--normalization", f.normalization, "raw, baseline or share")->capture_default_str();
  cmd.add_option("--ref-country", f.ref_country, "baseline reference country")->capture_default_str();
  cmd.add_option("--ref-year", f.ref_year, "baseline reference year")->capture_default_str();
  cmd.add_option("--k", f.k, "randomized networks for normalized closeness")->capture_default_str();
  cmd.add_option("--seed", f.seed, "random seed")->capture_default_str();
  cmd.add_option("--closeness-mode", f.closeness_mode, "length or hops")->capture_default_str();
  cmd.add_option("--popularity-mode", f.popularity_mode,
                 "target-in, target-out, product or own-squared for both popularity measures");
  cmd.add_option("--in-popularity-mode", f.in_popularity_mode)->capture_default_str();
  cmd.add_option("--out-popularity-mode", f.out_popularity_mode)->capture_default_str();
  cmd.add_option("--null-law", f.null_law, "uniform, multinomial or original")->capture_default_str();
  cmd.add_option("--null-unit", f.null_unit, "allocation unit of the multinomial law (currency)")
      ->capture_default_str();
  cmd.add_option("--null-pattern", f.null_pattern, "observed or complete")->capture_default_str();
  cmd.add_option("--format", f.format, "csv, md or json")->capture_default_str();
  cmd.add_option("--out,-o", f.out, "output directory")->capture_default_str();
  cmd.add_option("--threads", f.threads, "worker threads for the randomized runs")->capture_default_str();
  cmd.add_option("--delimiter", f.delimiter, "input field delimiter")->capture_default_str();
  cmd.add_option("--max-year", f.max_year, "latest accepted year")->capture_default_str();
  cmd.add_option("--balance-eps", f.balance_eps, "|balance| treated as balanced (currency)");
  cmd.add_option("--threshold-baseline", f.threshold_baseline, "display threshold for baseline ratios");
  cmd.add_option("--threshold-share", f.threshold_share, "display threshold for shares (fraction)");
  cmd.add_flag("--svg", f.svg, "also draw the skewness series as SVG");
}

emunet::ReportConfig to_config(emunet::Command command, const Flags& f) {
  emunet::ReportConfig c;
  c.command = command;
  for (const auto& p : f.inputs) c.inputs.emplace_back(p);
  c.schema.delimiter = f.delimiter;
  c.parse.max_year = f.max_year;
  if (!f.countries.empty()) c.countries = emunet::parse_country_list(f.countries);
  if (!f.years.empty()) c.years = parse_years(f.years);
  for (const auto& m : f.measures) {
    if (m == "skewness") {
      c.skewness = true;
      continue;
    }
    c.measures.push_back(parse_enum<emunet::Measure>("--measure", m, emunet::parse_measure));
  }
  c.normalization = parse_enum<emunet::Normalization>("--normalization", f.normalization,
                                                       emunet::parse_normalization);
  c.ref_country = emunet::CountryCode(f.ref_country);
  c.ref_year = f.ref_year;
  c.runs = f.k;
  c.seed = f.seed;
  c.closeness_mode = parse_enum<emunet::ClosenessMode>("--closeness-mode", f.closeness_mode,
                                                       emunet::parse_closeness_mode);
  c.popularity.in = parse_enum<emunet::PopularityMode>(
      "--popularity-mode", f.popularity_mode.empty() ? f.in_popularity_mode : f.popularity_mode,
      emunet::parse_popularity_mode);
  c.popularity.out = parse_enum<emunet::PopularityMode>(
      "--popularity-mode", f.popularity_mode.empty() ? f.out_popularity_mode : f.popularity_mode,
      emunet::parse_popularity_mode);
  c.null_model.law = parse_enum<emunet::WeightLaw>("--null-law", f.null_law, emunet::parse_weight_law);
  c.null_model.unit = f.null_unit;
  c.null_model.pattern =
      parse_enum<emunet::LinkPattern>("--null-pattern", f.null_pattern, emunet::parse_link_pattern);
  c.format = parse_enum<emunet::OutputFormat>("--format", f.format, emunet::parse_output_format);
  c.out_dir = f.out;
  c.threads = f.threads;
  c.balance_epsilon = f.balance_eps;
  c.render.baseline_threshold = f.threshold_baseline;
  c.render.share_threshold = f.threshold_share;
  c.svg = f.svg;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trade-network metrics for closed bilateral trade matrices"};
  app.set_version_flag("--version", std::string(emunet::kVersion));
  app.require_subcommand(1);

  Flags flags;
  std::vector<std::pair<CLI::App*, emunet::Command>> commands;
  for (auto [name, cmd, help] : {
           std::tuple{"ingest", emunet::Command::kIngest, "normalize flows and write yearly matrices"},
           std::tuple{"skewness", emunet::Command::kSkewness, "trade matrices and skewness series"},
           std::tuple{"centrality", emunet::Command::kCentrality, "centrality measures per year"},
           std::tuple{"paths", emunet::Command::kPaths, "closeness, betweenness and direct links"},
           std::tuple{"report", emunet::Command::kReport, "every table"},
       }) {
    auto* sub = app.add_subcommand(name, help);
    add_flags(*sub, flags);
    commands.emplace_back(sub, cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    for (const auto& [sub, cmd] : commands) {
      if (!sub->parsed()) continue;
      const auto result = emunet::run_pipeline(to_config(cmd, flags));
      for (const auto& f : result.files) std::cout << f.string() << '\n';
    }
  } catch (const emunet::IoError& e) {
    std::cerr << "emunet: " << e.what() << '\n';
    return 2;
  } catch (const emunet::Error& e) {
    std::cerr << "emunet: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "emunet: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
