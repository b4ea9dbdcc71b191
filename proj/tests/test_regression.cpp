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


#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "qregress/regression.hpp"

using qregress::ContractViolation;
using qregress::Dataset;

namespace {

Dataset two_point() {
  Eigen::MatrixXd x(2, 2);
  x << 1, 1, 2, 1;
  Eigen::VectorXd y(2);
  y << 3, 5;
  return Dataset(x, y);
}

}  // namespace

TEST_CASE("dataset validates its invariants") {
  Eigen::MatrixXd x(2, 2);
  x << 1, 1, 2, 1;
  CHECK_THROWS_AS(Dataset(x, Eigen::VectorXd::Zero(3)), ContractViolation);

  Eigen::MatrixXd no_unit(2, 2);
  no_unit << 1, 1, 2, 0.5;
  CHECK_THROWS_AS(Dataset(no_unit, Eigen::VectorXd::Zero(2)), ContractViolation);

  Eigen::VectorXd y(2);
  y << 1, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Dataset(x, y), ContractViolation);

  CHECK_THROWS_AS(Dataset(Eigen::MatrixXd(0, 1), Eigen::VectorXd(0)), ContractViolation);

  const auto ds = Dataset::from_features(Eigen::MatrixXd::Zero(3, 0), Eigen::VectorXd::Ones(3));
  CHECK(ds.d_plus_1() == 1);
  CHECK(ds.x().isOnes());
}

TEST_CASE("regression_error on hand instances") {
  Eigen::Vector2d w(2, 1);
  CHECK(qregress::regression_error(two_point(), w) == 0.0);

  Eigen::MatrixXd x(1, 2);
  x << 0, 1;
  const Dataset single(x, Eigen::VectorXd::Zero(1));
  CHECK(qregress::regression_error(single, Eigen::Vector2d(0, 1)) == 1.0);

  CHECK_THROWS_AS(qregress::regression_error(single, Eigen::Vector3d(0, 1, 2)), ContractViolation);
}

TEST_CASE("regression_error agrees with a per-row residual loop") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset ds = oracle::random_dataset(10, 3, rng);
    Eigen::VectorXd w(3);
    for (int i = 0; i < 3; ++i) w(i) = g(rng);
    const double expected = oracle::residual_loop(ds, oracle::to_std(w));
    CHECK(qregress::regression_error(ds, w) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("residual form equals the expanded quadratic form") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset ds = oracle::random_dataset(30, 4, rng);
    Eigen::VectorXd w(4);
    for (int i = 0; i < 4; ++i) w(i) = g(rng);
    const auto ne = qregress::normal_equations(ds);
    const double expanded = w.dot(ne.gram * w) - 2.0 * w.dot(ne.moment) + ne.label_energy;
    const double residual = qregress::regression_error(ds, w);
    CHECK(std::abs(expanded - residual) <= 1e-9 * std::max(1.0, residual));
  }
}

TEST_CASE("error is invariant under row permutation") {
  std::mt19937_64 rng(13);
  const Dataset ds = oracle::random_dataset(25, 3, rng);
  std::vector<Eigen::Index> order(25);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  Eigen::MatrixXd x(25, 3);
  Eigen::VectorXd y(25);
  for (Eigen::Index r = 0; r < 25; ++r) {
    x.row(r) = ds.x().row(order[r]);
    y(r) = ds.y()(order[r]);
  }
  const Dataset permuted(x, y);
  const Eigen::Vector3d w(0.3, -1.2, 0.7);
  CHECK(qregress::regression_error(permuted, w) ==
        doctest::Approx(qregress::regression_error(ds, w)).epsilon(1e-12));
}

TEST_CASE("normal equations streamed in chunks match a dense product") {
  std::mt19937_64 rng(14);
  const Dataset ds = oracle::random_dataset(3 * qregress::kGramChunkRows + 17, 5, rng);
  const auto ne = qregress::normal_equations(ds);
  const Eigen::MatrixXd dense = ds.x().transpose() * ds.x();
  CHECK((ne.gram - dense).cwiseAbs().maxCoeff() <= 1e-9 * dense.cwiseAbs().maxCoeff());
  CHECK(ne.gram == ne.gram.transpose());
  CHECK((ne.moment - ds.x().transpose() * ds.y()).cwiseAbs().maxCoeff() <= 1e-9 * ds.n());
  CHECK(ne.label_energy == doctest::Approx(ds.y().squaredNorm()).epsilon(1e-12));
}

TEST_CASE("solve_analytical exact two-point fit") {
  const Eigen::VectorXd w = qregress::solve_analytical(two_point());
  CHECK(w(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(w(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_analytical is stationary and beats random perturbations") {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> g;
  const Dataset ds = oracle::random_dataset(50, 4, rng);
  const Eigen::VectorXd w = qregress::solve_analytical(ds);
  const auto ne = qregress::normal_equations(ds);
  const double stationarity = (ne.gram * w - ne.moment).cwiseAbs().maxCoeff();
  CHECK(stationarity <= 1e-8 * (1.0 + ne.moment.cwiseAbs().maxCoeff()));

  const double best = qregress::regression_error(ds, w);
  for (int i = 0; i < 1000; ++i) {
    Eigen::VectorXd probe = w;
    for (Eigen::Index c = 0; c < probe.size(); ++c) probe(c) += 0.01 * g(rng);
    CHECK(best <= qregress::regression_error(ds, probe));
  }
}

TEST_CASE("rank-deficient design falls back to the minimum-norm solution") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd f(20, 2);
  Eigen::VectorXd y(20);
  for (int r = 0; r < 20; ++r) {
    f(r, 0) = f(r, 1) = u(rng);  // duplicated feature
    y(r) = u(rng);
  }
  const Dataset ds = Dataset::from_features(f, y);
  const Eigen::VectorXd w = qregress::solve_analytical(ds);
  REQUIRE(w.allFinite());

  // Gradient oracle: X^T X w = X^T Y.
  const Eigen::MatrixXd gram = ds.x().transpose() * ds.x();
  const Eigen::VectorXd moment = ds.x().transpose() * ds.y();
  CHECK((gram * w - moment).cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + moment.cwiseAbs().maxCoeff()));

  // Minimum norm: the duplicated pair shares its weight equally.
  CHECK(w(0) == doctest::Approx(w(1)).epsilon(1e-9));

  // Same residual as another least-squares solution (weight moved onto one column).
  Eigen::VectorXd other = w;
  other(0) += other(1);
  other(1) = 0.0;
  CHECK(qregress::regression_error(ds, w) ==
        doctest::Approx(qregress::regression_error(ds, other)).epsilon(1e-10));

  // Agrees with the SVD-based pseudo-inverse.
  const Eigen::VectorXd svd = ds.x().jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(ds.y());
  CHECK((w - svd).norm() <= 1e-8);
}

TEST_CASE("all-zero design gives zero weights") {
  const Dataset ds = Dataset::from_features(Eigen::MatrixXd::Zero(4, 1), Eigen::VectorXd::Zero(4));
  const Eigen::VectorXd w = qregress::solve_analytical(ds);
  CHECK(w.isZero());
}
