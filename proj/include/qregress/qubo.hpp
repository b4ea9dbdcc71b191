// Copyright 2026 The qregress Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QREGRESS_QUBO_HPP
#define QREGRESS_QUBO_HPP

#include <Eigen/Dense>

#include <string>
#include <utility>

#include "qregress/error.hpp"
#include "qregress/precision.hpp"
#include "qregress/regression.hpp"

namespace qregress {

/// min_z z^T A z + z^T b over z in {0,1}^M. A is stored symmetric with the
/// linear term kept apart; `offset` carries the constant dropped from the
/// objective (Y^T Y for regression problems) so energies map back to errors.
template <typename Scalar>
class BasicQubo {
 public:
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;

  BasicQubo(Matrix a, Vector b, Scalar offset = Scalar(0))
      : a_(std::move(a)), b_(std::move(b)), offset_(offset) {
    require(a_.rows() == a_.cols(), "QUBO matrix must be square");
    require(a_.rows() == b_.size(), "QUBO matrix and linear term differ in size");
    require(a_.allFinite() && b_.allFinite() && std::isfinite(offset_),
            "QUBO coefficients must be finite");
    require(a_ == a_.transpose(), "QUBO matrix must be symmetric");
  }

  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  Scalar offset() const { return offset_; }
  Eigen::Index m() const { return a_.rows(); }

  /// Coefficient of z_i in the upper-triangular form: a_ii + b_i.
  Vector diagonal_terms() const { return a_.diagonal() + b_; }

 private:
  Matrix a_;
  Vector b_;
  Scalar offset_;
};

using Qubo = BasicQubo<double>;

template <typename Scalar>
struct BasicBinarySolution {
  BitVector bits;
  Scalar energy;
};

using BinarySolution = BasicBinarySolution<double>;

/// z^T A z + z^T b, offset excluded. Evaluated in the upper-triangular form
/// sum_i z_i (a_ii + b_i) + sum_{i<j} 2 a_ij z_i z_j in row-major order, so
/// any two QUBOs with the same upper-triangular coefficients produce
/// bit-identical energies.
template <typename Scalar>
Scalar qubo_energy(const BasicQubo<Scalar>& q, const BitVector& bits) {
  require(bits.size() == q.m(), "bit vector length " + std::to_string(bits.size()) +
                                    " does not match QUBO size " + std::to_string(q.m()));
  const auto& a = q.a();
  Scalar energy(0);
  for (Eigen::Index i = 0; i < q.m(); ++i) {
    require(bits(i) <= 1, "bit vector entries must be 0 or 1");
    if (!bits(i)) continue;
    energy += a(i, i) + q.b()(i);
    for (Eigen::Index j = i + 1; j < q.m(); ++j)
      if (bits(j)) energy += Scalar(2) * a(i, j);
  }
  return energy;
}

/// Regression -> QUBO: A = P^T (X^T X) P, b = -2 P^T X^T Y, offset = Y^T Y,
/// where P is the precision matrix. Only the (d+1)x(d+1) Gram matrix is
/// formed from the data; the precision expansion is applied blockwise.
template <typename Scalar>
BasicQubo<Scalar> qubo_from_normal_equations(const NormalEquations<Scalar>& ne,
                                             const BasicPrecisionVector<Scalar>& p) {
  const Eigen::Index cols = ne.gram.rows();
  const Eigen::Index k = p.size();
  const Eigen::Index m = cols * k;
  const auto& pv = p.values();
  const MatrixX<Scalar> pp = pv * pv.transpose();
  MatrixX<Scalar> a(m, m);
  VectorX<Scalar> b(m);
  for (Eigen::Index i = 0; i < cols; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j)
      a.block(i * k, j * k, k, k) = pp * ne.gram(i, j);
    b.segment(i * k, k) = Scalar(-2) * pv * ne.moment(i);
  }
  return BasicQubo<Scalar>(std::move(a), std::move(b), ne.label_energy);
}

template <typename Scalar>
BasicQubo<Scalar> build_qubo(const BasicDataset<Scalar>& ds,
                             const BasicPrecisionVector<Scalar>& p) {
  return qubo_from_normal_equations(normal_equations(ds), p);
}

}  // namespace qregress

#endif  // QREGRESS_QUBO_HPP
