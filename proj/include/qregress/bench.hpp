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

#ifndef QREGRESS_BENCH_HPP
#define QREGRESS_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qregress/datagen.hpp"
#include "qregress/solvers.hpp"

namespace qregress::bench {

struct Measurement {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single run

  friend bool operator==(const Measurement&, const Measurement&) = default;
};

Measurement summarize(std::span<const double> samples);

/// One sweep point of a scaling experiment. Times are per run in ms;
/// combined = formulate + solve, summed per run before aggregation.
struct ExperimentRow {
  std::uint64_t scale_param = 0;  // N or d+1
  std::uint64_t runs = 0;
  Measurement classical_ms;
  Measurement formulate_ms;
  Measurement solve_ms;
  Measurement combined_ms;
  double classical_error = 0.0;
  double qubo_error = 0.0;
  // QUBO size M = (d+1)K at this point. Not part of the CSV schema.
  std::uint64_t qubo_size = 0;
};

/// Per-method mean regression errors split the same way as the recovery
/// table: runs that fit, runs that did not, and all runs. An empty stratum
/// reports 0.
struct StratifiedError {
  double fit = 0.0;
  double nofit = 0.0;
  double overall = 0.0;
};

struct RecoveryReport {
  std::uint64_t runs = 0;
  std::uint64_t fit_runs = 0;
  double fit_fraction = 0.0;
  double fit_threshold = 0.0;
  double noise_sigma = 0.0;
  std::uint64_t exact_recoveries = 0;  // runs with Hamming distance 0
  StratifiedError classical_error;
  StratifiedError qubo_error;
  double mean_hamming_fit = 0.0;
  double mean_hamming_nofit = 0.0;
  double mean_hamming_overall = 0.0;
};

inline constexpr double kDefaultFitThreshold = 1.5;

/// A run "fits" when qubo_error <= fit_threshold * classical_error, with an
/// absolute floor of 1e-12 * (1 + Y^T Y) so exact zero-residual problems
/// are not decided by rounding noise.
bool run_fits(double qubo_error, double classical_error, double label_energy,
              double fit_threshold);

/// `runs` independent repetitions; run r regenerates data with seed
/// spec.seed ^ r and solves with seed cfg.seed ^ r.
RecoveryReport run_recovery_experiment(std::uint64_t runs, const GenSpec& spec,
                                       const SolverConfig& cfg,
                                       double fit_threshold = kDefaultFitThreshold);

struct ScalingOptions {
  std::uint64_t runs_per_point = 10;
  // Upper bound on N * (d+1) cells summed over all points; every
  // dataset of a sweep is held in memory at once.
  std::uint64_t max_cells = std::uint64_t{1} << 28;
  // Untimed runs per point before measurement.
  std::uint64_t warmup_runs = 1;
};

/// Sweep over N with d+1 taken from the template. One dataset per point
/// (seed template.seed ^ point index); every run times the classical solve,
/// QUBO formulation and QUBO solve on it, serially. Runs are interleaved
/// across points: run r of every point before run r+1 of any.
std::vector<ExperimentRow> run_scaling_n(std::span<const Eigen::Index> n_values,
                                         const GenSpec& spec_template, const SolverConfig& cfg,
                                         const ScalingOptions& options);

/// Sweep over d+1 with N taken from the template.
std::vector<ExperimentRow> run_scaling_d(std::span<const Eigen::Index> d_plus_1_values,
                                         const GenSpec& spec_template, const SolverConfig& cfg,
                                         const ScalingOptions& options);

/// Column order of the report CSV.
const std::vector<std::string>& report_columns();

void emit_report_csv(std::ostream& out, std::span<const ExperimentRow> rows,
                     bool include_timing = true);
std::vector<ExperimentRow> parse_report_csv(std::istream& in);

nlohmann::json rows_to_json(std::span<const ExperimentRow> rows, bool include_timing = true);
nlohmann::json recovery_to_json(const RecoveryReport& report);

/// Least-squares slope of log(time) against log(scale) over the largest
/// ceil(size/4) points (at least 3 when available).
double top_quartile_loglog_slope(std::span<const ExperimentRow> rows);

}  // namespace qregress::bench

#endif  // QREGRESS_BENCH_HPP
