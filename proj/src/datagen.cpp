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

#include "qregress/datagen.hpp"

#include <cmath>
#include <random>

#include "qregress/rng.hpp"

namespace qregress {

void GenSpec::validate() const {
  require(n >= 1, "n must be at least 1");
  require(d_plus_1 >= 1, "d+1 must be at least 1");
  require(std::isfinite(noise_sigma) && noise_sigma >= 0.0, "noise sigma must be >= 0");
  require(std::isfinite(feature_low) && std::isfinite(feature_high) &&
              feature_low < feature_high,
          "feature range must satisfy low < high");
  if (ground_truth) {
    require(ground_truth->size() == d_plus_1,
            "ground truth has " + std::to_string(ground_truth->size()) +
                " weights, expected d+1=" + std::to_string(d_plus_1));
    const auto grid = enumerate_representable(precision);
    for (Eigen::Index i = 0; i < ground_truth->size(); ++i)
      require(grid.count((*ground_truth)(i)) == 1,
              "ground truth weight " + std::to_string((*ground_truth)(i)) +
                  " is not representable by the precision vector");
  }
}

GeneratedData generate(const GenSpec& spec) {
  spec.validate();
  const Eigen::Index n = spec.n;
  const Eigen::Index cols = spec.d_plus_1;

  BitVector bits;
  if (spec.ground_truth) {
    bits = encode(spec.precision, *spec.ground_truth);
  } else {
    Engine truth_rng = substream(spec.seed, Stream::kGroundTruth);
    bits.resize(cols * spec.precision.size());
    for (Eigen::Index i = 0; i < bits.size(); ++i)
      bits(i) = static_cast<std::uint8_t>(truth_rng() >> 63);
  }
  Weights w = decode(spec.precision, bits);

  // Row-major draw order so row r depends only on the stream position, not
  // on the matrix layout.
  Engine feature_rng = substream(spec.seed, Stream::kFeatures);
  std::uniform_real_distribution<double> feature(spec.feature_low, spec.feature_high);
  Eigen::MatrixXd x(n, cols);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c + 1 < cols; ++c) x(r, c) = feature(feature_rng);
    x(r, cols - 1) = 1.0;
  }

  Eigen::VectorXd y = x * w;
  if (spec.noise_sigma > 0.0) {
    Engine noise_rng = substream(spec.seed, Stream::kNoise);
    std::normal_distribution<double> noise(0.0, spec.noise_sigma);
    for (Eigen::Index r = 0; r < n; ++r) y(r) += noise(noise_rng);
  }

  return {Dataset(std::move(x), std::move(y)), std::move(w), std::move(bits)};
}

}  // namespace qregress
