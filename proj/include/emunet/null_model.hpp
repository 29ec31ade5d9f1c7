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

#ifndef EMUNET_NULL_MODEL_HPP_
#define EMUNET_NULL_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <boost/random/mersenne_twister.hpp>

#include "emunet/centrality.hpp"
#include "emunet/paths.hpp"
#include "emunet/trade_matrix.hpp"

namespace emunet {

// How the randomized networks re-draw link weights. Every law rescales so the
// drawn weights sum to the original w_tot.
//  kUniform      i.i.d. uniform(0, 1] per link
//  kMultinomial  w_tot split into indivisible units of size `unit`, each
//                unit assigned to a link uniformly at random
//  kOriginal     the original weights (self-normalization hook)
enum class WeightLaw { kUniform, kMultinomial, kOriginal };

// Which pairs carry a link in the randomized networks.
//  kObserved  the pairs with w_ij > 0
//  kComplete  every ordered pair i != j (rounded data reports small flows as 0)
enum class LinkPattern { kObserved, kComplete };

struct NullModel {
  WeightLaw law = WeightLaw::kMultinomial;
  double unit = 1e6;
  LinkPattern pattern = LinkPattern::kComplete;
};

std::string_view to_string(WeightLaw law) noexcept;
std::string_view to_string(LinkPattern p) noexcept;
std::optional<WeightLaw> parse_weight_law(std::string_view s) noexcept;
std::optional<LinkPattern> parse_link_pattern(std::string_view s) noexcept;

using Rng = boost::random::mt19937_64;

// Independent stream for run k of a job seeded with `seed`.
Rng run_stream(std::uint64_t seed, std::uint64_t k);

// One randomized copy of `m`: links per `model.pattern`, weights per
// `model.law`, total weight preserved. A multinomial link that receives no
// unit is absent in that copy.
TradeMatrix randomize_weights(const TradeMatrix& m, const NullModel& model, Rng& rng);

struct ClosenessNormalization {
  int runs = 0;
  std::uint64_t seed = 0;
  ClosenessMode mode = kDefaultClosenessMode;
  NullModel model;
  std::vector<double> run_maxima;  // M_k
  double envelope = 0.0;           // max_k M_k
  CentralityVector raw;            // c_i on the original network
  CentralityVector normalized;     // c_i / envelope
};

// Closeness divided by the largest maximum closeness seen over `runs`
// randomized networks. Runs are split over `threads` workers; every run uses
// its own stream so the result does not depend on the thread count.
// Throws ValidationError if runs < 1, the matrix has no link or the envelope
// is zero.
ClosenessNormalization normalized_closeness(const TradeMatrix& m, int runs, std::uint64_t seed,
                                            ClosenessMode mode = kDefaultClosenessMode,
                                            const NullModel& model = {}, unsigned threads = 1);

}  // namespace emunet

#endif  // EMUNET_NULL_MODEL_HPP_
