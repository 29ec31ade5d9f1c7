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

#include <array>
#include <utility>

#include "emunet/centrality.hpp"
#include "emunet/paths.hpp"

namespace emunet {
namespace {

constexpr std::array<std::pair<Measure, std::string_view>, 10> kMeasureNames{{
    {Measure::kOutDegree, "out-degree"},
    {Measure::kInDegree, "in-degree"},
    {Measure::kReciprocity, "reciprocity"},
    {Measure::kTransitiveTriplets, "triplets"},
    {Measure::kThreeCycles, "three-cycles"},
    {Measure::kOutPopularity, "out-popularity"},
    {Measure::kInPopularity, "in-popularity"},
    {Measure::kBetweenness, "betweenness"},
    {Measure::kCloseness, "closeness"},
    {Measure::kNormalizedCloseness, "normalized-closeness"},
}};

constexpr std::array<std::pair<PopularityMode, std::string_view>, 4> kPopularityNames{{
    {PopularityMode::kTargetInDegree, "target-in"},
    {PopularityMode::kTargetOutDegree, "target-out"},
    {PopularityMode::kProductOwnDegrees, "product"},
    {PopularityMode::kOwnDegreeSquared, "own-squared"},
}};

constexpr std::array<std::pair<Normalization, std::string_view>, 3> kNormalizationNames{{
    {Normalization::kRaw, "raw"},
    {Normalization::kBaselineRef, "baseline"},
    {Normalization::kIntraYearShare, "share"},
}};

constexpr std::array<std::pair<ClosenessMode, std::string_view>, 2> kClosenessNames{{
    {ClosenessMode::kLength, "length"},
    {ClosenessMode::kHops, "hops"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E e) {
  for (const auto& [k, v] : table)
    if (k == e) return v;
  return "unknown";
}

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                        std::string_view s) {
  for (const auto& [k, v] : table)
    if (v == s) return k;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Measure m) noexcept { return name_of(kMeasureNames, m); }
std::string_view to_string(Normalization n) noexcept { return name_of(kNormalizationNames, n); }
std::string_view to_string(PopularityMode m) noexcept { return name_of(kPopularityNames, m); }
std::string_view to_string(ClosenessMode m) noexcept { return name_of(kClosenessNames, m); }

std::optional<Measure> parse_measure(std::string_view s) noexcept { return lookup(kMeasureNames, s); }
std::optional<Normalization> parse_normalization(std::string_view s) noexcept {
  return lookup(kNormalizationNames, s);
}
std::optional<PopularityMode> parse_popularity_mode(std::string_view s) noexcept {
  return lookup(kPopularityNames, s);
}
std::optional<ClosenessMode> parse_closeness_mode(std::string_view s) noexcept {
  return lookup(kClosenessNames, s);
}

const std::vector<Measure>& local_measures() {
  static const std::vector<Measure> m{Measure::kOutDegree,          Measure::kInDegree,
                                      Measure::kReciprocity,        Measure::kTransitiveTriplets,
                                      Measure::kThreeCycles,        Measure::kOutPopularity,
                                      Measure::kInPopularity};
  return m;
}

}  // namespace emunet
