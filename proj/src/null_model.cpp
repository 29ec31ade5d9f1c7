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

#include "emunet/null_model.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace emunet {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(WeightLaw law) noexcept {
  switch (law) {
    case WeightLaw::kUniform: return "uniform";
    case WeightLaw::kMultinomial: return "multinomial";
    case WeightLaw::kOriginal: return "original";
  }
  return "unknown";
}

std::string_view to_string(LinkPattern p) noexcept {
  return p == LinkPattern::kObserved ? "observed" : "complete";
}

std::optional<WeightLaw> parse_weight_law(std::string_view s) noexcept {
  if (s == "uniform") return WeightLaw::kUniform;
  if (s == "multinomial") return WeightLaw::kMultinomial;
  if (s == "original") return WeightLaw::kOriginal;
  return std::nullopt;
}

std::optional<LinkPattern> parse_link_pattern(std::string_view s) noexcept {
  if (s == "observed") return LinkPattern::kObserved;
  if (s == "complete") return LinkPattern::kComplete;
  return std::nullopt;
}

Rng run_stream(std::uint64_t seed, std::uint64_t k) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(k + 0x632BE59BD9B4E019ULL)));
}

TradeMatrix randomize_weights(const TradeMatrix& m, const NullModel& model, Rng& rng) {
  const auto& w = m.weights();
  const Eigen::Index n = m.size();
  const double w_tot = w.sum();

  std::vector<std::pair<Eigen::Index, Eigen::Index>> links;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && (model.pattern == LinkPattern::kComplete || w(i, j) > 0.0)) links.emplace_back(i, j);
  if (links.empty() || !(w_tot > 0.0)) throw ValidationError("network has no links to randomize");

  std::vector<double> draw(links.size());
  switch (model.law) {
    case WeightLaw::kUniform: {
      boost::random::uniform_01<double> u;
      for (auto& x : draw) x = 1.0 - u(rng);
      break;
    }
    case WeightLaw::kMultinomial: {
      if (!(model.unit > 0.0)) throw ValidationError("multinomial unit must be positive");
      auto remaining = static_cast<long long>(std::llround(w_tot / model.unit));
      if (remaining < 1) throw ValidationError("total weight is smaller than one allocation unit");
      const auto count = static_cast<long long>(draw.size());
      for (long long t = 0; t < count; ++t) {
        long long x = remaining;
        if (t + 1 < count && remaining > 0) {
          boost::random::binomial_distribution<long long, double> bin(
              remaining, 1.0 / static_cast<double>(count - t));
          x = bin(rng);
        }
        draw[static_cast<std::size_t>(t)] = static_cast<double>(x);
        remaining -= x;
      }
      break;
    }
    case WeightLaw::kOriginal:
      for (std::size_t t = 0; t < links.size(); ++t) draw[t] = w(links[t].first, links[t].second);
      break;
  }

  double drawn = 0.0;
  for (double x : draw) drawn += x;
  const double scale = w_tot / drawn;
  Matrix<double> out = Matrix<double>::Zero(n, n);
  for (std::size_t t = 0; t < links.size(); ++t) out(links[t].first, links[t].second) = draw[t] * scale;
  return {m.year(), m.countries(), std::move(out)};
}

ClosenessNormalization normalized_closeness(const TradeMatrix& m, int runs, std::uint64_t seed,
                                            ClosenessMode mode, const NullModel& model,
                                            unsigned threads) {
  if (runs < 1) throw ValidationError("normalized closeness needs at least one run");
  validate(m);
  if (!(m.weights().maxCoeff() > 0.0)) throw ValidationError("network has no links");

  ClosenessNormalization result;
  result.runs = runs;
  result.seed = seed;
  result.mode = mode;
  result.model = model;
  result.raw = closeness(shortest_paths(m), mode);
  result.run_maxima.assign(static_cast<std::size_t>(runs), 0.0);

  auto work = [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      auto rng = run_stream(seed, static_cast<std::uint64_t>(k));
      const auto randomized = randomize_weights(m, model, rng);
      result.run_maxima[static_cast<std::size_t>(k)] =
          closeness(shortest_paths(randomized), mode).values.maxCoeff();
    }
  };
  threads = std::clamp(threads, 1u, static_cast<unsigned>(runs));
  if (threads == 1) {
    work(0, runs);
  } else {
    std::vector<std::jthread> pool;
    const int block = (runs + static_cast<int>(threads) - 1) / static_cast<int>(threads);
    for (int begin = 0; begin < runs; begin += block)
      pool.emplace_back(work, begin, std::min(runs, begin + block));
  }

  result.envelope = *std::max_element(result.run_maxima.begin(), result.run_maxima.end());
  if (!(result.envelope > 0.0))
    throw ValidationError("every randomized network has zero closeness; cannot normalize");
  result.normalized = result.raw;
  result.normalized.measure = Measure::kNormalizedCloseness;
  result.normalized.values = result.raw.values / result.envelope;
  return result;
}

}  // namespace emunet
