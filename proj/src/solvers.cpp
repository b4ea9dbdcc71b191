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

#include "qregress/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <span>
#include <thread>

#include "qregress/rng.hpp"
#include "qregress/timer.hpp"

namespace qregress {

namespace {

// Upper-triangular view of a QUBO with the symmetric off-diagonal part
// folded: energy(z) = sum_i z_i diag_i + sum_{i<j} z_i z_j coupling_ij.
// `coupling` is stored full and symmetric with a zero diagonal so a single
// column gives the field change caused by flipping one variable.
struct FoldedQubo {
  Eigen::VectorXd diag;
  Eigen::MatrixXd coupling;

  explicit FoldedQubo(const Qubo& q) : diag(q.diagonal_terms()), coupling(2.0 * q.a()) {
    coupling.diagonal().setZero();
  }

  Eigen::Index size() const { return diag.size(); }

  double scale() const {
    const double d = diag.size() ? diag.cwiseAbs().maxCoeff() : 0.0;
    const double c = coupling.size() ? coupling.cwiseAbs().maxCoeff() : 0.0;
    return std::max(d, c);
  }

  double magnitude() const { return diag.cwiseAbs().sum() + 0.5 * coupling.cwiseAbs().sum(); }

  // field_i = energy change of setting z_i from 0 to 1 given the others.
  Eigen::VectorXd fields(const BitVector& bits) const {
    Eigen::VectorXd f = diag;
    for (Eigen::Index j = 0; j < size(); ++j)
      if (bits(j)) f += coupling.col(j);
    return f;
  }
};

struct ReadResult {
  BitVector bits;
  double energy = 0.0;
};

// Geometric ramp beta_initial -> beta_final over the sweeps, pre-divided by
// the energy scale.
std::vector<double> beta_schedule(const SolverConfig& cfg, double inv_scale) {
  const std::uint64_t sweeps = cfg.sweeps_per_read;
  const double ratio = cfg.beta_final / cfg.beta_initial;
  std::vector<double> betas(sweeps);
  for (std::uint64_t s = 0; s < sweeps; ++s) {
    const double t = sweeps > 1 ? static_cast<double>(s) / static_cast<double>(sweeps - 1) : 1.0;
    betas[s] = cfg.beta_initial * std::pow(ratio, t) * inv_scale;
  }
  return betas;
}

ReadResult anneal_one_read(const Qubo& q, const FoldedQubo& folded, std::uint64_t seed,
                           std::span<const double> betas) {
  Engine rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const Eigen::Index m = folded.size();

  BitVector state(m);
  for (Eigen::Index i = 0; i < m; ++i) state(i) = static_cast<std::uint8_t>(rng() >> 63);
  Eigen::VectorXd field = folded.fields(state);
  double energy = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    if (state(i)) energy += folded.diag(i);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j)
      if (state(i) && state(j)) energy += folded.coupling(i, j);

  BitVector best = state;
  double best_energy = energy;

  std::uint8_t* z = state.data();
  double* f = field.data();
  const double* coupling = folded.coupling.data();
  for (const double beta : betas) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const double delta = z[i] ? -f[i] : f[i];
      if (delta > 0.0) {
        const double exponent = beta * delta;
        // exp(-40) is below the resolution of the uniform draw.
        if (exponent >= 40.0 || uniform(rng) >= std::exp(-exponent)) continue;
      }
      const double step = z[i] ? -1.0 : 1.0;
      z[i] ^= 1u;
      energy += delta;
      const double* col = coupling + i * m;
      for (Eigen::Index j = 0; j < m; ++j) f[j] += step * col[j];
      if (energy < best_energy) {
        best_energy = energy;
        best = state;
      }
    }
  }
  return {best, qubo_energy(q, best)};
}

bool lex_less(const BitVector& lhs, const BitVector& rhs) {
  return std::lexicographical_compare(lhs.data(), lhs.data() + lhs.size(), rhs.data(),
                                      rhs.data() + rhs.size());
}

}  // namespace

std::string to_string(Backend backend) {
  switch (backend) {
    case Backend::kExhaustive:
      return "exhaustive";
    case Backend::kSimulatedAnnealing:
      return "simulated_annealing";
  }
  return "unknown";
}

Backend backend_from_string(const std::string& name) {
  if (name == "exhaustive") return Backend::kExhaustive;
  if (name == "simulated_annealing" || name == "annealing" || name == "sa")
    return Backend::kSimulatedAnnealing;
  throw ContractViolation("unknown backend '" + name + "'");
}

void SolverConfig::validate() const {
  require(num_reads >= 1, "num_reads must be at least 1");
  require(sweeps_per_read >= 1, "sweeps_per_read must be at least 1");
  require(std::isfinite(beta_initial) && beta_initial > 0.0, "beta_initial must be positive");
  require(std::isfinite(beta_final) && beta_final > beta_initial,
          "beta_final must exceed beta_initial");
  require(fault_probability >= 0.0 && fault_probability <= 1.0,
          "fault_probability must lie in [0, 1]");
}

bool better_solution(const BinarySolution& lhs, const BinarySolution& rhs) {
  if (lhs.energy != rhs.energy) return lhs.energy < rhs.energy;
  return lex_less(lhs.bits, rhs.bits);
}

SolveOutcome solve_exhaustive(const Qubo& q) {
  const Eigen::Index m = q.m();
  if (m > kMaxExhaustiveSize)
    throw SizeGuardError("exhaustive solve of M=" + std::to_string(m) +
                         " exceeds the cap of " + std::to_string(kMaxExhaustiveSize));
  Stopwatch timer;
  const FoldedQubo folded(q);
  // Gray-code walk: one flip per step, energies tracked incrementally and
  // resynchronised periodically. Candidates within `tol` of the incumbent are
  // re-scored exactly so near-ties resolve the same way as qubo_energy().
  const double tol = 1e-10 * (1.0 + folded.magnitude());
  constexpr std::uint64_t kResync = 4096;

  BitVector state = BitVector::Zero(m);
  Eigen::VectorXd field = folded.diag;
  double energy = 0.0;

  BinarySolution best{state, qubo_energy(q, state)};
  double best_tracked = energy;

  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto i = static_cast<Eigen::Index>(std::countr_zero(step));
    const double delta = state(i) ? -field(i) : field(i);
    const double sign = state(i) ? -1.0 : 1.0;
    state(i) ^= 1u;
    field += sign * folded.coupling.col(i);
    energy += delta;
    if (step % kResync == 0) {
      field = folded.fields(state);
      energy = qubo_energy(q, state);
    }
    if (energy > best_tracked + tol) continue;
    BinarySolution candidate{state, qubo_energy(q, state)};
    if (better_solution(candidate, best)) {
      best = std::move(candidate);
      best_tracked = energy;
    }
  }

  SolveOutcome out;
  out.read_energies = {best.energy};
  out.best = std::move(best);
  out.ground_state_hits = 1;
  out.solve_time_ms = timer.elapsed_ms();
  return out;
}

SolveOutcome solve_annealing(const Qubo& q, const SolverConfig& cfg) {
  cfg.validate();
  Stopwatch timer;
  const FoldedQubo folded(q);
  const double scale = folded.scale();
  const double inv_scale = scale > 0.0 ? 1.0 / scale : 1.0;

  const std::vector<double> betas = beta_schedule(cfg, inv_scale);

  std::vector<ReadResult> reads(cfg.num_reads);
  unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, cfg.num_reads));
  auto work = [&](unsigned worker) {
    for (std::uint64_t r = worker; r < cfg.num_reads; r += workers)
      reads[r] = anneal_one_read(q, folded, cfg.seed ^ r, betas);
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  SolveOutcome out;
  out.read_energies.reserve(reads.size());
  BinarySolution best{reads.front().bits, reads.front().energy};
  for (const auto& r : reads) {
    out.read_energies.push_back(r.energy);
    BinarySolution candidate{r.bits, r.energy};
    if (better_solution(candidate, best)) best = std::move(candidate);
  }
  const double hit_tol = 1e-9 * (1.0 + std::abs(best.energy));
  for (double e : out.read_energies)
    if (e <= best.energy + hit_tol) ++out.ground_state_hits;
  out.best = std::move(best);
  out.solve_time_ms = timer.elapsed_ms();
  return out;
}

SolveOutcome solve(const Qubo& q, const SolverConfig& cfg) {
  cfg.validate();
  switch (cfg.backend) {
    case Backend::kExhaustive:
      return solve_exhaustive(q);
    case Backend::kSimulatedAnnealing:
      return solve_annealing(q, cfg);
  }
  throw ContractViolation("unknown backend");
}

BitVector apply_bit_faults(const BitVector& bits, double probability, std::uint64_t seed) {
  require(probability >= 0.0 && probability <= 1.0, "fault probability must lie in [0, 1]");
  if (probability == 0.0) return bits;
  Engine rng = substream(seed, Stream::kFaults);
  std::bernoulli_distribution flip(probability);
  BitVector out = bits;
  for (Eigen::Index i = 0; i < out.size(); ++i)
    if (flip(rng)) out(i) ^= 1u;
  return out;
}

std::uint64_t hamming_distance(const BitVector& lhs, const BitVector& rhs) {
  require(lhs.size() == rhs.size(), "hamming distance needs equal-length bit vectors");
  std::uint64_t count = 0;
  for (Eigen::Index i = 0; i < lhs.size(); ++i) count += lhs(i) != rhs(i);
  return count;
}

SolveReport solve_regression_via_qubo(const Dataset& ds, const PrecisionVector& p,
                                      const SolverConfig& cfg,
                                      const std::optional<BitVector>& truth) {
  cfg.validate();
  Stopwatch timer;
  const Qubo q = build_qubo(ds, p);
  const double formulate_ms = timer.elapsed_ms();

  const SolveOutcome outcome = solve(q, cfg);

  SolveReport report;
  report.bits = apply_bit_faults(outcome.best.bits, cfg.fault_probability, cfg.seed);
  report.energy = qubo_energy(q, report.bits);
  report.weights = decode(p, report.bits);
  report.error = regression_error(ds, report.weights);
  report.formulate_time_ms = formulate_ms;
  report.solve_time_ms = outcome.solve_time_ms;
  report.ground_state_hits = outcome.ground_state_hits;
  report.num_reads = cfg.backend == Backend::kExhaustive ? 1 : cfg.num_reads;
  if (truth) report.hamming_distance = hamming_distance(report.bits, *truth);
  return report;
}

}  // namespace qregress
