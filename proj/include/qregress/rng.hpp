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

#ifndef QREGRESS_RNG_HPP
#define QREGRESS_RNG_HPP

#include <cstdint>
#include <random>

namespace qregress {

using Engine = std::mt19937_64;

/// Named substreams derived from one experiment seed. Each consumer draws
/// from its own engine so that, e.g., changing N never perturbs the ground
/// truth draw.
enum class Stream : std::uint32_t {
  kFeatures = 1,
  kNoise = 2,
  kGroundTruth = 3,
  kFaults = 4,
};

inline Engine substream(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Engine(seq);
}

}  // namespace qregress

#endif  // QREGRESS_RNG_HPP
