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

#ifndef QREGRESS_DATAGEN_HPP
#define QREGRESS_DATAGEN_HPP

#include <cstdint>
#include <optional>

#include "qregress/precision.hpp"
#include "qregress/qubo.hpp"
#include "qregress/regression.hpp"

namespace qregress {

/// Synthetic regression problem whose ground truth lies on the grid of
/// values representable by `precision`.
struct GenSpec {
  Eigen::Index n = 100;
  Eigen::Index d_plus_1 = 2;
  PrecisionVector precision{0.25, 0.5};
  double noise_sigma = 0.0;
  double feature_low = -1.0;
  double feature_high = 1.0;
  std::uint64_t seed = 0;
  std::optional<Weights> ground_truth;

  void validate() const;
};

struct GeneratedData {
  Dataset dataset;
  Weights weights;
  BitVector bits;
};

/// Features ~ U[low, high), labels Y = Xw + N(0, sigma^2). Features, noise
/// and the ground-truth bits come from independent substreams of spec.seed.
GeneratedData generate(const GenSpec& spec);

}  // namespace qregress

#endif  // QREGRESS_DATAGEN_HPP
