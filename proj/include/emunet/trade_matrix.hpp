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

#ifndef EMUNET_TRADE_MATRIX_HPP_
#define EMUNET_TRADE_MATRIX_HPP_

#include <cmath>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "emunet/country.hpp"
#include "emunet/error.hpp"

namespace emunet {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// One year of the closed trade network: entry (i, j) holds exports from
// countries[i] to countries[j] in currency units. A zero entry means "no link".
template <typename Scalar>
class BasicTradeMatrix {
 public:
  using scalar_type = Scalar;

  BasicTradeMatrix() = default;
  BasicTradeMatrix(int year, std::vector<CountryCode> countries, Matrix<Scalar> weights)
      : year_(year), countries_(std::move(countries)), weights_(std::move(weights)) {}

  int year() const noexcept { return year_; }
  const std::vector<CountryCode>& countries() const noexcept { return countries_; }
  const Matrix<Scalar>& weights() const noexcept { return weights_; }
  Eigen::Index size() const noexcept { return weights_.rows(); }

  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return weights_(i, j); }

  // Index of `code`; throws ValidationError if the country is not in the matrix.
  Eigen::Index index(const CountryCode& code) const {
    auto idx = index_of(countries_, code);
    if (!idx) throw ValidationError("country " + code.str() + " not in matrix");
    return static_cast<Eigen::Index>(*idx);
  }

 private:
  int year_ = 0;
  std::vector<CountryCode> countries_;
  Matrix<Scalar> weights_;
};

using TradeMatrix = BasicTradeMatrix<double>;

// Checks n >= 2, label count, zero diagonal, finite non-negative weights.
// Returns the matrix unchanged so calls can be chained.
template <typename Scalar>
const BasicTradeMatrix<Scalar>& validate(const BasicTradeMatrix<Scalar>& m) {
  const auto& w = m.weights();
  const auto n = w.rows();
  if (n < 2) throw ValidationError("trade matrix needs n >= 2 countries, got " + std::to_string(n));
  if (w.cols() != n) throw ValidationError("trade matrix is not square");
  if (static_cast<Eigen::Index>(m.countries().size()) != n)
    throw ValidationError("trade matrix has " + std::to_string(n) + " rows but " +
                          std::to_string(m.countries().size()) + " country labels");
  require_unique(m.countries());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (w(i, i) != Scalar(0))
      throw ValidationError("nonzero diagonal entry for " + m.countries()[i].str());
    for (Eigen::Index j = 0; j < n; ++j) {
      using std::isfinite;
      if (!isfinite(w(i, j)) || w(i, j) < Scalar(0))
        throw ValidationError("invalid weight " + m.countries()[i].str() + "->" +
                              m.countries()[j].str() + " (must be finite and >= 0)");
    }
  }
  return m;
}

// Edge lengths l_ij = 1 / w_ij; missing links carry +infinity.
template <typename Scalar>
class BasicLengthMatrix {
 public:
  static constexpr Scalar kAbsent = std::numeric_limits<Scalar>::infinity();

  explicit BasicLengthMatrix(Matrix<Scalar> lengths) : lengths_(std::move(lengths)) {}

  const Matrix<Scalar>& lengths() const noexcept { return lengths_; }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return lengths_(i, j); }
  bool has_link(Eigen::Index i, Eigen::Index j) const { return lengths_(i, j) != kAbsent; }
  Eigen::Index size() const noexcept { return lengths_.rows(); }

 private:
  Matrix<Scalar> lengths_;
};

using LengthMatrix = BasicLengthMatrix<double>;

template <typename Derived>
auto to_lengths(const Eigen::MatrixBase<Derived>& weights) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> lengths = weights.unaryExpr([](Scalar w) {
    return w > Scalar(0) ? Scalar(1) / w : BasicLengthMatrix<Scalar>::kAbsent;
  });
  return BasicLengthMatrix<Scalar>(std::move(lengths));
}

template <typename Scalar>
BasicLengthMatrix<Scalar> to_lengths(const BasicTradeMatrix<Scalar>& m) {
  return to_lengths(m.weights());
}

// Inverse of to_lengths: absent links map back to weight 0.
template <typename Scalar>
Matrix<Scalar> to_weights(const BasicLengthMatrix<Scalar>& l) {
  return l.lengths().unaryExpr([](Scalar len) {
    return len == BasicLengthMatrix<Scalar>::kAbsent ? Scalar(0) : Scalar(1) / len;
  });
}

// w_tot: sum of every weight in the network.
template <typename Scalar>
Scalar total_weight(const BasicTradeMatrix<Scalar>& m) {
  return m.weights().sum();
}

template <typename Scalar>
BasicTradeMatrix<Scalar> scale_weights(const BasicTradeMatrix<Scalar>& m, Scalar lambda) {
  if (!(lambda > Scalar(0))) throw ValidationError("scale factor must be positive");
  return {m.year(), m.countries(), m.weights() * lambda};
}

// Square CSV: header row and first column carry country codes, the diagonal
// is "-" (or empty). Values are multiplied by `unit` on read and divided by it
// on write, so billions-denominated files load with unit = 1e9.
TradeMatrix read_matrix_csv(std::istream& in, int year, double unit = 1.0);
void write_matrix_csv(std::ostream& out, const TradeMatrix& m, double unit = 1.0);

}  // namespace emunet

#endif  // EMUNET_TRADE_MATRIX_HPP_
