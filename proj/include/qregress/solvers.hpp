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

#ifndef QREGRESS_SOLVERS_HPP
#define QREGRESS_SOLVERS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qregress/precision.hpp"
#include "qregress/qubo.hpp"
#include "qregress/regression.hpp"

namespace qregress {

enum class Backend { kExhaustive, kSimulatedAnnealing };

std::string to_string(Backend backend);
Backend backend_from_string(const std::string& name);

/// Largest QUBO the exhaustive backend will enumerate.
inline constexpr Eigen::Index kMaxExhaustiveSize = 24;

struct SolverConfig {
  Backend backend = Backend::kSimulatedAnnealing;
  std::uint64_t num_reads = 1000;
  std::uint64_t sweeps_per_read = 1000;
  double beta_initial = 0.1;
  double beta_final = 10.0;
  std::uint64_t seed = 0;
  // Worker threads for independent reads; 0 picks the hardware count.
  unsigned threads = 1;
  // Per-bit flip probability applied to the returned regression solution.
  // Emulates hardware qubit faults; 0 disables it.
  double fault_probability = 0.0;

  void validate() const;
};

struct SolveOutcome {
  BinarySolution best;
  std::vector<double> read_energies;
  std::uint64_t ground_state_hits = 0;
  double solve_time_ms = 0.0;
};

/// Global minimum by enumeration of all 2^M assignments. Ties go to the
/// lexicographically smallest bit vector (bit 0 most significant).
SolveOutcome solve_exhaustive(const Qubo& q);

/// Multi-read simulated annealing. Each read is a single-bit-flip Metropolis
/// chain from a random start, scanning variables in index order once per
/// sweep under a geometric inverse-temperature ramp, seeded with
/// seed ^ read_index. Energies are divided by the largest absolute
/// upper-triangular coefficient before the Metropolis test, so the beta
/// range is independent of problem scale. A read reports the lowest-energy
/// state it visited.
SolveOutcome solve_annealing(const Qubo& q, const SolverConfig& cfg);

/// Dispatches on cfg.backend.
SolveOutcome solve(const Qubo& q, const SolverConfig& cfg);

/// Flips each bit independently with the given probability.
BitVector apply_bit_faults(const BitVector& bits, double probability, std::uint64_t seed);

std::uint64_t hamming_distance(const BitVector& lhs, const BitVector& rhs);

/// Strict weak order used for every tie-break: lower energy, then the
/// lexicographically smaller bit vector.
bool better_solution(const BinarySolution& lhs, const BinarySolution& rhs);

struct SolveReport {
  Weights weights;
  BitVector bits;
  double energy = 0.0;  // QUBO energy of `bits`, offset excluded
  double error = 0.0;   // regression error of `weights`
  double formulate_time_ms = 0.0;
  double solve_time_ms = 0.0;
  std::uint64_t ground_state_hits = 0;
  std::uint64_t num_reads = 0;
  std::optional<std::uint64_t> hamming_distance;
};

/// Formulate, solve and decode. When `truth` is supplied the report carries
/// the Hamming distance between the returned bits and it.
SolveReport solve_regression_via_qubo(const Dataset& ds, const PrecisionVector& p,
                                      const SolverConfig& cfg,
                                      const std::optional<BitVector>& truth = std::nullopt);

}  // namespace qregress

#endif  // QREGRESS_SOLVERS_HPP
