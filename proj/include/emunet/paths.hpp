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

#ifndef EMUNET_PATHS_HPP_
#define EMUNET_PATHS_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "emunet/centrality.hpp"
#include "emunet/trade_matrix.hpp"

namespace emunet {

// Path lengths within this relative distance of the minimum count as ties.
inline constexpr double kDefaultTieTolerance = 1e-9;

// All-pairs shortest-path summary under l_ij = 1 / w_ij.
//  distance(i, j)  minimal length, +inf if j is unreachable from i
//  hops(i, j)      fewest links among the minimal paths, -1 if unreachable
//  sigma(i, j)     number of minimal paths (0 if unreachable)
//  direct(i, j)    the single link i -> j is itself a minimal path
// Diagonal entries are distance 0, hops 0, sigma 1, direct false.
template <typename Scalar>
struct BasicPathStats {
  std::vector<CountryCode> countries;
  int year = 0;
  Scalar tolerance = Scalar(kDefaultTieTolerance);
  Matrix<Scalar> distance;
  Eigen::MatrixXi hops;
  Matrix<Scalar> sigma;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> direct;

  Eigen::Index size() const noexcept { return distance.rows(); }
  bool reachable(Eigen::Index i, Eigen::Index j) const {
    return distance(i, j) != std::numeric_limits<Scalar>::infinity();
  }
};

using PathStats = BasicPathStats<double>;

namespace detail {
template <typename Scalar>
bool within_tolerance(Scalar candidate, Scalar best, Scalar tol) {
  using std::abs;
  return abs(candidate - best) <= tol * best;
}
}  // namespace detail

// Dense single-source Dijkstra from every node; sigma and hops accumulate over
// tied predecessors as nodes are settled in order of distance.
template <typename Scalar>
BasicPathStats<Scalar> shortest_paths(const BasicTradeMatrix<Scalar>& m,
                                      Scalar tolerance = Scalar(kDefaultTieTolerance)) {
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  const auto len = to_lengths(m);
  const Eigen::Index n = m.size();

  BasicPathStats<Scalar> out;
  out.countries = m.countries();
  out.year = m.year();
  out.tolerance = tolerance;
  out.distance.setConstant(n, n, inf);
  out.hops.setConstant(n, n, -1);
  out.sigma.setZero(n, n);
  out.direct.setConstant(n, n, false);

  std::vector<bool> settled(static_cast<std::size_t>(n));
  for (Eigen::Index s = 0; s < n; ++s) {
    auto dist = out.distance.row(s);
    auto hops = out.hops.row(s);
    auto sigma = out.sigma.row(s);
    std::fill(settled.begin(), settled.end(), false);
    dist(s) = Scalar(0);
    hops(s) = 0;
    sigma(s) = Scalar(1);

    for (Eigen::Index round = 0; round < n; ++round) {
      Eigen::Index v = -1;
      for (Eigen::Index u = 0; u < n; ++u) {
        if (!settled[u] && dist(u) != inf && (v < 0 || dist(u) < dist(v))) v = u;
      }
      if (v < 0) break;
      settled[v] = true;
      for (Eigen::Index u = 0; u < n; ++u) {
        if (settled[u] || !len.has_link(v, u)) continue;
        const Scalar candidate = dist(v) + len(v, u);
        if (dist(u) == inf || candidate < dist(u) * (Scalar(1) - tolerance)) {
          dist(u) = candidate;
          sigma(u) = sigma(v);
          hops(u) = hops(v) + 1;
        } else if (detail::within_tolerance(candidate, dist(u), tolerance)) {
          sigma(u) += sigma(v);
          hops(u) = std::min(hops(u), hops(v) + 1);
        }
      }
    }
    for (Eigen::Index t = 0; t < n; ++t) {
      out.direct(s, t) = t != s && len.has_link(s, t) &&
                         len(s, t) <= dist(t) * (Scalar(1) + tolerance);
    }
  }
  return out;
}

// b_i = sum over ordered pairs (j, k), i strictly interior, of
// sigma_jk(i) / sigma_jk, where sigma_jk(i) = sigma_ji * sigma_ik whenever
// d_ji + d_ik ties d_jk.
template <typename Scalar>
BasicCentralityVector<Scalar> betweenness(const BasicPathStats<Scalar>& stats) {
  const Eigen::Index n = stats.size();
  Vector<Scalar> b = Vector<Scalar>::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i || !stats.reachable(j, i)) continue;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k == i || k == j || !stats.reachable(i, k)) continue;
        const Scalar through = stats.distance(j, i) + stats.distance(i, k);
        if (detail::within_tolerance(through, stats.distance(j, k), stats.tolerance))
          b(i) += stats.sigma(j, i) * stats.sigma(i, k) / stats.sigma(j, k);
      }
    }
  }
  return {Measure::kBetweenness, stats.year, stats.countries, std::move(b), Normalization::kRaw};
}

// kLength: c_i = n / sum_j d_ij. kHops: c_i = n / sum_j mu_ij (link counts).
enum class ClosenessMode { kLength, kHops };

// Calibrated against the published normalized closeness.
inline constexpr ClosenessMode kDefaultClosenessMode = ClosenessMode::kLength;

std::string_view to_string(ClosenessMode m) noexcept;
std::optional<ClosenessMode> parse_closeness_mode(std::string_view s) noexcept;

// A node that cannot reach every other node scores 0.
template <typename Scalar>
BasicCentralityVector<Scalar> closeness(const BasicPathStats<Scalar>& stats,
                                        ClosenessMode mode = kDefaultClosenessMode) {
  const Eigen::Index n = stats.size();
  Vector<Scalar> c = Vector<Scalar>::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar farness(0);
    bool complete = true;
    for (Eigen::Index j = 0; j < n && complete; ++j) {
      if (j == i) continue;
      if (!stats.reachable(i, j)) {
        complete = false;
      } else {
        farness += mode == ClosenessMode::kLength ? stats.distance(i, j)
                                                  : static_cast<Scalar>(stats.hops(i, j));
      }
    }
    if (complete && farness > Scalar(0)) c(i) = static_cast<Scalar>(n) / farness;
  }
  return {Measure::kCloseness, stats.year, stats.countries, std::move(c), Normalization::kRaw};
}

struct DirectCounts {
  std::vector<CountryCode> countries;
  Eigen::VectorXi exporter;  // #{ j : i -> j direct link is shortest }
  Eigen::VectorXi importer;  // #{ i : i -> j direct link is shortest }
};

template <typename Scalar>
DirectCounts direct_counts(const BasicPathStats<Scalar>& stats) {
  const auto d = stats.direct.template cast<int>();
  return {stats.countries, d.rowwise().sum(), d.colwise().sum().transpose()};
}

}  // namespace emunet

#endif  // EMUNET_PATHS_HPP_
