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

#ifndef QREGRESS_REGRESSION_HPP
#define QREGRESS_REGRESSION_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qregress/error.hpp"

namespace qregress {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Regression coefficients; the last entry is the intercept.
using Weights = Eigen::VectorXd;

/// Augmented training set: x is N x (d+1) with the final column fixed at 1,
/// y holds the N labels. Instances are validated on construction and
/// immutable afterwards.
template <typename Scalar>
class BasicDataset {
 public:
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;

  /// Takes an already augmented design matrix.
  BasicDataset(Matrix x, Vector y) : x_(std::move(x)), y_(std::move(y)) {
    require(x_.rows() >= 1, "dataset must contain at least one row");
    require(x_.cols() >= 1, "dataset must contain at least one column");
    require(x_.rows() == y_.size(),
            "design matrix has " + std::to_string(x_.rows()) +
                " rows but label vector has " + std::to_string(y_.size()));
    require(x_.allFinite() && y_.allFinite(), "dataset contains non-finite entries");
    require((x_.col(x_.cols() - 1).array() == Scalar(1)).all(),
            "last column of the design matrix must be identically 1");
  }

  /// Appends the unit column to raw features (N x d, d may be 0).
  template <typename DerivedF, typename DerivedY>
  static BasicDataset from_features(const Eigen::MatrixBase<DerivedF>& features,
                                    const Eigen::MatrixBase<DerivedY>& labels) {
    Matrix x(features.rows(), features.cols() + 1);
    x.leftCols(features.cols()) = features.template cast<Scalar>();
    x.col(features.cols()).setOnes();
    return BasicDataset(std::move(x), labels.template cast<Scalar>());
  }

  const Matrix& x() const { return x_; }
  const Vector& y() const { return y_; }
  Eigen::Index n() const { return x_.rows(); }
  Eigen::Index d_plus_1() const { return x_.cols(); }

 private:
  Matrix x_;
  Vector y_;
};

using Dataset = BasicDataset<double>;

/// Sufficient statistics of a least-squares problem.
template <typename Scalar>
struct NormalEquations {
  MatrixX<Scalar> gram;    // X^T X
  VectorX<Scalar> moment;  // X^T Y
  Scalar label_energy;     // Y^T Y
};

/// Rows streamed per block when forming X^T X. Fixed so that the reduction
/// order, and hence the result, never depends on the input size.
inline constexpr Eigen::Index kGramChunkRows = 8192;

/// Accumulates X^T X, X^T Y and Y^T Y in one pass over the rows, block by
/// block, left to right. Never materialises anything wider than X itself.
template <typename DerivedX, typename DerivedY>
NormalEquations<typename DerivedX::Scalar> accumulate_normal_equations(
    const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  require(x.rows() == y.size(), "row count mismatch between X and Y");
  const Eigen::Index cols = x.cols();
  NormalEquations<Scalar> ne{MatrixX<Scalar>::Zero(cols, cols),
                             VectorX<Scalar>::Zero(cols), Scalar(0)};
  for (Eigen::Index start = 0; start < x.rows(); start += kGramChunkRows) {
    const Eigen::Index len = std::min(kGramChunkRows, x.rows() - start);
    const auto xb = x.middleRows(start, len);
    const auto yb = y.segment(start, len);
    // lower triangle, one column-pair dot per entry
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto cj = xb.col(j);
      for (Eigen::Index i = j; i < cols; ++i) ne.gram(i, j) += xb.col(i).dot(cj);
      ne.moment(j) += cj.dot(yb);
    }
    ne.label_energy += yb.squaredNorm();
  }
  ne.gram.template triangularView<Eigen::StrictlyUpper>() = ne.gram.transpose();
  return ne;
}

template <typename Scalar>
NormalEquations<Scalar> normal_equations(const BasicDataset<Scalar>& ds) {
  return accumulate_normal_equations(ds.x(), ds.y());
}

/// Sum of squared residuals ||Xw - Y||^2.
template <typename Scalar, typename Derived>
Scalar regression_error(const BasicDataset<Scalar>& ds,
                        const Eigen::MatrixBase<Derived>& w) {
  require(w.size() == ds.d_plus_1(),
          "weight vector has length " + std::to_string(w.size()) + ", expected " +
              std::to_string(ds.d_plus_1()));
  return (ds.x() * w.template cast<Scalar>() - ds.y()).squaredNorm();
}

/// Singular values below this fraction of the largest are treated as zero
/// by the pseudo-inverse path.
inline constexpr double kPseudoInverseCutoff = 1e-12;

/// Minimiser of (X^T X) w = X^T Y. Uses a Cholesky solve when the Gram
/// matrix is numerically full rank and the minimum-norm pseudo-inverse
/// solution otherwise.
template <typename Scalar>
VectorX<Scalar> solve_normal_equations(const MatrixX<Scalar>& gram,
                                       const VectorX<Scalar>& moment) {
  require(gram.rows() == gram.cols() && gram.rows() == moment.size(),
          "normal equations have inconsistent shapes");
  require(gram.allFinite() && moment.allFinite(), "normal equations are not finite");
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> eig(gram);
  const auto& lambda = eig.eigenvalues();  // ascending
  const Scalar largest = lambda.cwiseAbs().maxCoeff();
  const Scalar cutoff = Scalar(kPseudoInverseCutoff) * largest;
  if (largest > Scalar(0) && lambda(0) > cutoff) {
    Eigen::LLT<MatrixX<Scalar>> llt(gram);
    if (llt.info() == Eigen::Success) return llt.solve(moment);
  }
  // pinv(G) m = V diag(1/lambda_i, lambda_i > cutoff) V^T m
  VectorX<Scalar> coeffs = eig.eigenvectors().transpose() * moment;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    coeffs(i) = std::abs(lambda(i)) > cutoff && largest > Scalar(0) ? coeffs(i) / lambda(i)
                                                                     : Scalar(0);
  return eig.eigenvectors() * coeffs;
}

/// Classical least-squares baseline, w = (X^T X)^-1 X^T Y with a
/// pseudo-inverse fallback for rank-deficient designs.
template <typename Scalar>
VectorX<Scalar> solve_analytical(const BasicDataset<Scalar>& ds) {
  const auto ne = normal_equations(ds);
  return solve_normal_equations(ne.gram, ne.moment);
}

}  // namespace qregress

#endif  // QREGRESS_REGRESSION_HPP
