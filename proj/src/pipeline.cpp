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

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "emunet/report.hpp"

namespace emunet {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

bool is_path_measure(Measure m) {
  return m == Measure::kBetweenness || m == Measure::kCloseness || m == Measure::kNormalizedCloseness;
}

std::vector<std::string> country_labels(const std::vector<CountryCode>& countries) {
  std::vector<std::string> out;
  for (const auto& c : countries) out.push_back(c.str());
  return out;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }
std::vector<double> to_std(const Eigen::VectorXi& v) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

// Collects every file the run writes; file and stream failures become IoError.
class OutputSink {
 public:
  explicit OutputSink(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  template <typename Writer>
  void write(const std::string& name, Writer&& writer) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    writer(out);
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
    files_.push_back(path);
  }

  void table(const std::string& stem, const RenderedTable& t, OutputFormat f) {
    write(stem + std::string(extension(f)), [&](std::ostream& o) { write_table(o, t, f); });
  }

  const std::vector<fs::path>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<fs::path> files_;
};

std::string column_label(Measure m, int year) { return std::string(to_string(m)) + " " + std::to_string(year); }

// Per-year path results, computed once per run.
struct PathResults {
  std::vector<PathStats> stats;
  std::vector<CentralityVector> betweenness;
  std::vector<DirectCounts> direct;
  std::vector<ClosenessNormalization> closeness;
};

PathResults compute_paths(const Dataset& data, const ReportConfig& config, bool with_closeness) {
  PathResults r;
  for (const auto& m : data.matrices) {
    r.stats.push_back(shortest_paths(m));
    r.betweenness.push_back(betweenness(r.stats.back()));
    r.direct.push_back(direct_counts(r.stats.back()));
    if (with_closeness) {
      try {
        r.closeness.push_back(normalized_closeness(m, config.runs, config.seed, config.closeness_mode,
                                                   config.null_model, config.threads));
      } catch (const ValidationError& e) {
        throw ValidationError("year " + std::to_string(m.year()) + ": " + e.what());
      }
    }
  }
  return r;
}

std::vector<CentralityVector> per_year(const Dataset& data, const ReportConfig& config, Measure measure,
                                       const PathResults* paths) {
  std::vector<CentralityVector> out;
  for (std::size_t k = 0; k < data.matrices.size(); ++k) {
    switch (measure) {
      case Measure::kBetweenness: out.push_back(paths->betweenness[k]); break;
      case Measure::kCloseness: out.push_back(closeness(paths->stats[k], config.closeness_mode)); break;
      case Measure::kNormalizedCloseness: out.push_back(paths->closeness[k].normalized); break;
      default: out.push_back(compute_local(data.matrices[k], measure, config.popularity));
    }
  }
  return out;
}

std::vector<CentralityVector> normalized(std::vector<CentralityVector> raw, Normalization norm,
                                         const ReportConfig& config) {
  switch (norm) {
    case Normalization::kRaw: return raw;
    case Normalization::kBaselineRef: return normalize_baseline(raw, config.ref_country, config.ref_year);
    case Normalization::kIntraYearShare:
      for (auto& v : raw) v = normalize_intra_year(v);
      return raw;
  }
  return raw;
}

CellFormat format_for(Normalization norm, Measure measure) {
  if (measure == Measure::kNormalizedCloseness) return CellFormat::kFixed2;
  switch (norm) {
    case Normalization::kRaw: return CellFormat::kGeneral;
    case Normalization::kBaselineRef: return CellFormat::kBaseline;
    case Normalization::kIntraYearShare: return CellFormat::kShare;
  }
  return CellFormat::kGeneral;
}

RenderedTable centrality_table(const Dataset& data, const ReportConfig& config,
                               const std::vector<Measure>& measures, Normalization norm,
                               const PathResults* paths, std::string caption) {
  std::vector<TableColumn> columns;
  for (Measure measure : measures) {
    // Normalized closeness is already a ratio; it is reported as computed.
    const Normalization applied = measure == Measure::kNormalizedCloseness ? Normalization::kRaw : norm;
    auto vectors = normalized(per_year(data, config, measure, paths), applied, config);
    for (const auto& v : vectors)
      columns.push_back({column_label(measure, v.year), to_std(v.values), format_for(applied, measure)});
  }
  return render_table(std::move(caption), country_labels(config.countries), columns, config.render);
}

RenderedTable shortest_path_table(const Dataset& data, const ReportConfig& config, const PathResults& p) {
  std::vector<TableColumn> columns;
  for (const auto& c : p.closeness)
    columns.push_back({"closeness normalized " + std::to_string(c.normalized.year), to_std(c.normalized.values),
                       CellFormat::kFixed2});
  for (const auto& v : normalize_baseline(p.betweenness, config.ref_country, config.ref_year))
    columns.push_back({"betweenness baseline " + std::to_string(v.year), to_std(v.values), CellFormat::kBaseline});
  for (const auto& v : p.betweenness) {
    auto share = normalize_intra_year(v);
    columns.push_back({"betweenness share " + std::to_string(v.year), to_std(share.values), CellFormat::kShare});
  }
  for (std::size_t k = 0; k < p.direct.size(); ++k)
    columns.push_back({"direct exporter " + std::to_string(data.matrices[k].year()), to_std(p.direct[k].exporter),
                       CellFormat::kInteger});
  for (std::size_t k = 0; k < p.direct.size(); ++k)
    columns.push_back({"direct importer " + std::to_string(data.matrices[k].year()), to_std(p.direct[k].importer),
                       CellFormat::kInteger});
  return render_table("Shortest paths", country_labels(config.countries), columns, config.render);
}

void write_skewness_stage(OutputSink& sink, const Dataset& data, const ReportConfig& config) {
  const auto series = skewness_series(data.matrices);
  sink.write("skewness_series.csv",
             [&](std::ostream& o) { write_skewness_series_csv(o, series, config.display_unit); });
  for (const auto& s : series)
    sink.write("balances_" + std::to_string(s.year) + ".csv", [&](std::ostream& o) {
      write_skewness_summary_csv(o, s, config.display_unit, config.balance_epsilon);
    });
  for (const auto& m : data.matrices)
    sink.table("frisch_" + std::to_string(m.year()), render_frisch_table(m, config.display_unit), config.format);
  if (config.svg)
    sink.write("skewness_series.svg",
               [&](std::ostream& o) { write_skewness_svg(o, series, config.display_unit); });
}

Json metadata(const ReportConfig& config, const Dataset& data, const PathResults* paths,
              const std::vector<fs::path>& files) {
  Json j;
  j["tool"] = "emunet";
  j["version"] = std::string(kVersion);
  j["command"] = std::string(to_string(config.command));
  auto inputs = Json::array();
  for (const auto& p : config.inputs) inputs.push_back(p.filename().string());
  j["inputs"] = std::move(inputs);
  j["countries"] = country_labels(config.countries);
  auto years = Json::array();
  for (const auto& m : data.matrices) years.push_back(m.year());
  j["years"] = std::move(years);
  j["blx_split"] = data.blx_split;
  j["reference"] = {{"country", config.ref_country.str()}, {"year", config.ref_year}};
  j["normalization"] = std::string(to_string(config.normalization));
  j["popularity_mode"] = {{"in", std::string(to_string(config.popularity.in))},
                          {"out", std::string(to_string(config.popularity.out))}};
  j["closeness_mode"] = std::string(to_string(config.closeness_mode));
  j["calibrated_defaults"] = {{"in_popularity", std::string(to_string(kDefaultInPopularityMode))},
                              {"out_popularity", std::string(to_string(kDefaultOutPopularityMode))},
                              {"closeness", std::string(to_string(kDefaultClosenessMode))}};
  j["tie_tolerance"] = kDefaultTieTolerance;
  if (paths != nullptr && !paths->closeness.empty()) {
    Json nc;
    nc["runs"] = config.runs;
    nc["seed"] = config.seed;
    nc["weight_law"] = std::string(to_string(config.null_model.law));
    nc["unit"] = config.null_model.unit;
    nc["link_pattern"] = std::string(to_string(config.null_model.pattern));
    Json env;
    for (const auto& c : paths->closeness) env[std::to_string(c.raw.year)] = c.envelope;
    nc["envelope"] = std::move(env);
    j["normalized_closeness"] = std::move(nc);
  }
  auto out = Json::array();
  for (const auto& f : files) out.push_back(f.filename().string());
  j["outputs"] = std::move(out);
  return j;
}

}  // namespace

std::optional<Command> parse_command(std::string_view s) noexcept {
  if (s == "ingest") return Command::kIngest;
  if (s == "skewness") return Command::kSkewness;
  if (s == "centrality") return Command::kCentrality;
  if (s == "paths") return Command::kPaths;
  if (s == "report") return Command::kReport;
  return std::nullopt;
}

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::kIngest: return "ingest";
    case Command::kSkewness: return "skewness";
    case Command::kCentrality: return "centrality";
    case Command::kPaths: return "paths";
    case Command::kReport: return "report";
  }
  return "unknown";
}

void validate(const ReportConfig& config) {
  if (config.runs < 1) throw ValidationError("--k must be at least 1");
  if (config.countries.size() < 2) throw ValidationError("need at least two countries");
  require_unique(config.countries);
  if (!index_of(config.countries, config.ref_country))
    throw ValidationError("reference country " + config.ref_country.str() + " not in country list");
  const bool needs_baseline =
      config.command == Command::kPaths ||
      (config.command == Command::kCentrality && config.normalization == Normalization::kBaselineRef) ||
      (config.command == Command::kReport && !(config.skewness && config.measures.empty()));
  if (needs_baseline && !config.years.empty() &&
      std::find(config.years.begin(), config.years.end(), config.ref_year) == config.years.end())
    throw ValidationError("reference year " + std::to_string(config.ref_year) + " not in --years");
  if (config.inputs.empty()) throw ValidationError("no input files");
}

Dataset load_dataset(const ReportConfig& config) {
  Dataset data;
  ParseOptions options = config.parse;
  std::vector<CountryCode> allowed = config.countries;
  if (!index_of(allowed, kBelgiumLuxembourg)) allowed.push_back(kBelgiumLuxembourg);
  options.whitelist = allowed;

  for (const auto& path : config.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    try {
      auto records = parse_flows(in, config.schema, options);
      data.records.insert(data.records.end(), records.begin(), records.end());
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ": " + e.what());
    }
    if (in.bad()) throw IoError("failed reading " + path.string());
  }

  const bool has_blx = std::any_of(data.records.begin(), data.records.end(), [](const TradeFlowRecord& r) {
    return r.exporter == kBelgiumLuxembourg || r.importer == kBelgiumLuxembourg;
  });
  if (has_blx) {
    try {
      const auto shares = estimate_blx_shares(data.records);
      const auto trend = fit_be_lu_trend(data.records);
      data.records = split_blx(data.records, shares, trend);
      data.blx_split = true;
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("Belgium-Luxembourg split: ") + e.what());
    }
  }

  std::vector<int> years = config.years;
  if (years.empty()) {
    std::set<int> present;
    for (const auto& r : data.records) present.insert(r.year);
    years.assign(present.begin(), present.end());
  }
  std::sort(years.begin(), years.end());
  years.erase(std::unique(years.begin(), years.end()), years.end());
  if (years.empty()) throw ValidationError("no data");
  for (int y : years) {
    try {
      data.matrices.push_back(build_matrix(data.records, y, config.countries, UnknownCountryPolicy::kError));
    } catch (const ValidationError& e) {
      throw ValidationError("year " + std::to_string(y) + ": " + e.what());
    }
  }
  return data;
}

PipelineResult run_pipeline(const ReportConfig& config) {
  validate(config);
  const Dataset data = load_dataset(config);
  OutputSink sink(config.out_dir);

  std::vector<Measure> local, path;
  for (Measure m : config.measures) (is_path_measure(m) ? path : local).push_back(m);
  const bool all = config.measures.empty() && !config.skewness;
  std::optional<PathResults> paths;

  switch (config.command) {
    case Command::kIngest:
      sink.write("flows.csv", [&](std::ostream& o) { write_flows(o, data.records); });
      for (const auto& m : data.matrices)
        sink.write("matrix_" + std::to_string(m.year()) + ".csv", [&](std::ostream& o) { write_matrix_csv(o, m); });
      break;

    case Command::kSkewness:
      write_skewness_stage(sink, data, config);
      break;

    case Command::kCentrality: {
      std::vector<Measure> measures = config.measures.empty() ? local_measures() : config.measures;
      const bool needs_paths = !path.empty();
      const bool needs_closeness = std::count(path.begin(), path.end(), Measure::kNormalizedCloseness) > 0;
      if (needs_paths) paths = compute_paths(data, config, needs_closeness);
      sink.table("centrality_" + std::string(to_string(config.normalization)),
                 centrality_table(data, config, measures, config.normalization, paths ? &*paths : nullptr,
                                  "Centrality measures (" + std::string(to_string(config.normalization)) + ")"),
                 config.format);
      break;
    }

    case Command::kPaths:
      paths = compute_paths(data, config, true);
      sink.table("paths", shortest_path_table(data, config, *paths), config.format);
      break;

    case Command::kReport: {
      if (all || config.skewness) write_skewness_stage(sink, data, config);
      const auto& table2 = all ? local_measures() : local;
      if (!table2.empty()) {
        sink.table("table2a", centrality_table(data, config, table2, Normalization::kBaselineRef, nullptr,
                                               "Centrality measures, " + config.ref_country.str() + " " +
                                                   std::to_string(config.ref_year) + " = 1"),
                   config.format);
        sink.table("table2b", centrality_table(data, config, table2, Normalization::kIntraYearShare, nullptr,
                                               "Centrality measures, % of yearly total"),
                   config.format);
      }
      if (all || !path.empty()) {
        paths = compute_paths(data, config, true);
        sink.table("table3", shortest_path_table(data, config, *paths), config.format);
      }
      break;
    }
  }

  auto files = sink.files();
  sink.write("metadata.json", [&](std::ostream& o) {
    o << metadata(config, data, paths ? &*paths : nullptr, files).dump(2) << '\n';
  });
  return {sink.files()};
}

std::vector<ModeScore<PopularityMode>> calibrate_popularity(const TradeMatrix& baseline,
                                                            const TradeMatrix& target, bool in_side,
                                                            std::span<const ReferenceValue> reference,
                                                            const CountryCode& ref_country) {
  std::vector<ModeScore<PopularityMode>> scores;
  for (auto mode : {PopularityMode::kTargetInDegree, PopularityMode::kTargetOutDegree,
                    PopularityMode::kProductOwnDegrees, PopularityMode::kOwnDegreeSquared}) {
    const auto base = popularity_scores(baseline.weights(), mode, in_side);
    const auto tgt = popularity_scores(target.weights(), mode, in_side);
    const double denom = base(baseline.index(ref_country));
    double worst = 0.0;
    for (const auto& r : reference) worst = std::max(worst, std::abs(tgt(target.index(r.country)) / denom - r.value));
    scores.push_back({mode, worst});
  }
  std::stable_sort(scores.begin(), scores.end(),
                   [](const auto& a, const auto& b) { return a.max_abs_deviation < b.max_abs_deviation; });
  return scores;
}

std::vector<ModeScore<ClosenessMode>> calibrate_closeness(std::span<const TradeMatrix> matrices,
                                                          std::span<const std::vector<ReferenceValue>> reference,
                                                          int runs, std::uint64_t seed, const NullModel& model,
                                                          unsigned threads) {
  if (matrices.size() != reference.size())
    throw ValidationError("closeness calibration needs one reference list per matrix");
  std::vector<ModeScore<ClosenessMode>> scores;
  for (auto mode : {ClosenessMode::kLength, ClosenessMode::kHops}) {
    double worst = 0.0;
    for (std::size_t k = 0; k < matrices.size(); ++k) {
      const auto nc = normalized_closeness(matrices[k], runs, seed, mode, model, threads);
      for (const auto& r : reference[k]) worst = std::max(worst, std::abs(nc.normalized.at(r.country) - r.value));
    }
    scores.push_back({mode, worst});
  }
  std::stable_sort(scores.begin(), scores.end(),
                   [](const auto& a, const auto& b) { return a.max_abs_deviation < b.max_abs_deviation; });
  return scores;
}

}  // namespace emunet
