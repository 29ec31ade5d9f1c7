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

#ifndef EMUNET_CENTRALITY_HPP_
#define EMUNET_CENTRALITY_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emunet/trade_matrix.hpp"

namespace emunet {

enum class Measure {
  kOutDegree,
  kInDegree,
  kReciprocity,
  kTransitiveTriplets,
  kThreeCycles,
  kInPopularity,
  kOutPopularity,
  kBetweenness,
  kCloseness,
  kNormalizedCloseness,
};

enum class Normalization { kRaw, kBaselineRef, kIntraYearShare };

// The popularity sums admit several index bindings; each is selectable.
//   kTargetInDegree    sum_j w_ij * id_j
//   kTargetOutDegree   sum_j w_ij * od_j
//   kProductOwnDegrees od_i * id_i
//   kOwnDegreeSquared  id_i^2 for in-popularity, od_i^2 for out-popularity
enum class PopularityMode { kTargetInDegree, kTargetOutDegree, kProductOwnDegrees, kOwnDegreeSquared };

// Calibrated against the published 2019/1995 ratios for DE, FR and NL.
inline constexpr PopularityMode kDefaultInPopularityMode = PopularityMode::kTargetInDegree;
inline constexpr PopularityMode kDefaultOutPopularityMode = PopularityMode::kOwnDegreeSquared;

std::string_view to_string(Measure m) noexcept;
std::string_view to_string(Normalization n) noexcept;
std::string_view to_string(PopularityMode m) noexcept;
std::optional<Measure> parse_measure(std::string_view s) noexcept;
std::optional<Normalization> parse_normalization(std::string_view s) noexcept;
std::optional<PopularityMode> parse_popularity_mode(std::string_view s) noexcept;
const std::vector<Measure>& local_measures();

template <typename Scalar>
struct BasicCentralityVector {
  Measure measure = Measure::kOutDegree;
  int year = 0;
  std::vector<CountryCode> countries;
  Vector<Scalar> values;
  Normalization normalization = Normalization::kRaw;

  Scalar at(const CountryCode& c) const {
    auto idx = index_of(countries, c);
    if (!idx) throw ValidationError("country " + c.str() + " not in centrality vector");
    return values(static_cast<Eigen::Index>(*idx));
  }
};

using CentralityVector = BasicCentralityVector<double>;

// Score kernels over a zero-diagonal weight matrix. The zero diagonal makes the
// triad sums skip every repeated index without explicit masking.

template <typename Derived>
auto out_degree_scores(const Eigen::MatrixBase<Derived>& w) {
  return w.rowwise().sum().eval();
}

template <typename Derived>
auto in_degree_scores(const Eigen::MatrixBase<Derived>& w) {
  return w.colwise().sum().transpose().eval();
}

// lr_i = sum_j w_ij w_ji
template <typename Derived>
auto reciprocity_scores(const Eigen::MatrixBase<Derived>& w) {
  return w.cwiseProduct(w.transpose()).rowwise().sum().eval();
}

// tt_i = sum_{j,h} w_ij w_jh w_ih
template <typename Derived>
auto transitive_triplet_scores(const Eigen::MatrixBase<Derived>& w) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> two_step = w * w;
  return two_step.cwiseProduct(w).rowwise().sum().eval();
}

// c3_i = sum_{j,h} w_ij w_jh w_hi, the diagonal of w^3.
template <typename Derived>
auto three_cycle_scores(const Eigen::MatrixBase<Derived>& w) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> two_step = w * w;
  return two_step.cwiseProduct(w.transpose()).rowwise().sum().eval();
}

template <typename Derived>
auto popularity_scores(const Eigen::MatrixBase<Derived>& w, PopularityMode mode,
                       bool in_side) {
  using Scalar = typename Derived::Scalar;
  const Vector<Scalar> od = out_degree_scores(w);
  const Vector<Scalar> id = in_degree_scores(w);
  switch (mode) {
    case PopularityMode::kTargetInDegree:
      return Vector<Scalar>(w * id);
    case PopularityMode::kTargetOutDegree:
      return Vector<Scalar>(w * od);
    case PopularityMode::kProductOwnDegrees:
      return Vector<Scalar>(od.cwiseProduct(id));
    case PopularityMode::kOwnDegreeSquared:
      return Vector<Scalar>(in_side ? id.cwiseAbs2() : od.cwiseAbs2());
  }
  return Vector<Scalar>(Vector<Scalar>::Zero(w.rows()));
}

namespace detail {
template <typename Scalar>
BasicCentralityVector<Scalar> make_vector(const BasicTradeMatrix<Scalar>& m, Measure measure,
                                          Vector<Scalar> values) {
  return {measure, m.year(), m.countries(), std::move(values), Normalization::kRaw};
}
}  // namespace detail

template <typename Scalar>
BasicCentralityVector<Scalar> out_degree(const BasicTradeMatrix<Scalar>& m) {
  return detail::make_vector(m, Measure::kOutDegree, out_degree_scores(m.weights()));
}

template <typename Scalar>
BasicCentralityVector<Scalar> in_degree(const BasicTradeMatrix<Scalar>& m) {
  return detail::make_vector(m, Measure::kInDegree, in_degree_scores(m.weights()));
}

template <typename Scalar>
BasicCentralityVector<Scalar> reciprocity(const BasicTradeMatrix<Scalar>& m) {
  return detail::make_vector(m, Measure::kReciprocity, reciprocity_scores(m.weights()));
}

template <typename Scalar>
BasicCentralityVector<Scalar> transitive_triplets(const BasicTradeMatrix<Scalar>& m) {
  return detail::make_vector(m, Measure::kTransitiveTriplets,
                             transitive_triplet_scores(m.weights()));
}

template <typename Scalar>
BasicCentralityVector<Scalar> three_cycles(const BasicTradeMatrix<Scalar>& m) {
  return detail::make_vector(m, Measure::kThreeCycles, three_cycle_scores(m.weights()));
}

template <typename Scalar>
BasicCentralityVector<Scalar> in_popularity(const BasicTradeMatrix<Scalar>& m,
                                            PopularityMode mode = kDefaultInPopularityMode) {
  return detail::make_vector(m, Measure::kInPopularity,
                             popularity_scores(m.weights(), mode, /*in_side=*/true));
}

template <typename Scalar>
BasicCentralityVector<Scalar> out_popularity(const BasicTradeMatrix<Scalar>& m,
                                             PopularityMode mode = kDefaultOutPopularityMode) {
  return detail::make_vector(m, Measure::kOutPopularity,
                             popularity_scores(m.weights(), mode, /*in_side=*/false));
}

struct PopularityModes {
  PopularityMode in = kDefaultInPopularityMode;
  PopularityMode out = kDefaultOutPopularityMode;
};

// Any matrix-only measure (degrees, reciprocity, triads, popularity).
// Path-based measures throw ValidationError here.
template <typename Scalar>
BasicCentralityVector<Scalar> compute_local(const BasicTradeMatrix<Scalar>& m, Measure measure,
                                            PopularityModes modes = {}) {
  switch (measure) {
    case Measure::kOutDegree: return out_degree(m);
    case Measure::kInDegree: return in_degree(m);
    case Measure::kReciprocity: return reciprocity(m);
    case Measure::kTransitiveTriplets: return transitive_triplets(m);
    case Measure::kThreeCycles: return three_cycles(m);
    case Measure::kInPopularity: return in_popularity(m, modes.in);
    case Measure::kOutPopularity: return out_popularity(m, modes.out);
    default:
      throw ValidationError(std::string(to_string(measure)) + " is not a local measure");
  }
}

}  // namespace emunet

#endif  // EMUNET_CENTRALITY_HPP_
