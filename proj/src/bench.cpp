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

#include "qregress/bench.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "qregress/io.hpp"
#include "qregress/timer.hpp"

namespace qregress::bench {

namespace {

struct RunSample {
  double classical_ms;
  double formulate_ms;
  double solve_ms;
  double classical_error;
  double qubo_error;
  Eigen::Index qubo_size;
};

RunSample time_one_run(const Dataset& ds, const PrecisionVector& p, const SolverConfig& cfg) {
  RunSample s{};
  Stopwatch clock;
  const Weights w_classical = solve_analytical(ds);
  s.classical_ms = clock.elapsed_ms();

  clock.reset();
  const Qubo q = build_qubo(ds, p);
  s.formulate_ms = clock.elapsed_ms();

  clock.reset();
  const SolveOutcome outcome = solve(q, cfg);
  s.solve_ms = clock.elapsed_ms();

  s.classical_error = regression_error(ds, w_classical);
  s.qubo_error = regression_error(ds, decode(p, outcome.best.bits));
  s.qubo_size = q.m();
  return s;
}

struct PointSamples {
  std::vector<double> classical, formulate, solve, combined, cls_err, qubo_err;
  Eigen::Index size = 0;

  void add(const RunSample& s) {
    classical.push_back(s.classical_ms);
    formulate.push_back(s.formulate_ms);
    solve.push_back(s.solve_ms);
    combined.push_back(s.formulate_ms + s.solve_ms);
    cls_err.push_back(s.classical_error);
    qubo_err.push_back(s.qubo_error);
    size = s.qubo_size;
  }

  ExperimentRow row(std::uint64_t scale) const {
    ExperimentRow r;
    r.scale_param = scale;
    r.runs = formulate.size();
    r.classical_ms = summarize(classical);
    r.formulate_ms = summarize(formulate);
    r.solve_ms = summarize(solve);
    r.combined_ms = summarize(combined);
    r.classical_error = summarize(cls_err).mean;
    r.qubo_error = summarize(qubo_err).mean;
    r.qubo_size = static_cast<std::uint64_t>(size);
    return r;
  }
};

void guard_point(const GenSpec& spec, const SolverConfig& cfg) {
  const Eigen::Index m = spec.d_plus_1 * spec.precision.size();
  if (cfg.backend == Backend::kExhaustive && m > kMaxExhaustiveSize)
    throw SizeGuardError("exhaustive backend cannot solve M=" + std::to_string(m) +
                         " (cap " + std::to_string(kMaxExhaustiveSize) + ")");
}

template <typename Setter>
std::vector<ExperimentRow> sweep(std::span<const Eigen::Index> values, const GenSpec& spec_template,
                                 const SolverConfig& cfg, const ScalingOptions& options,
                                 Setter set_scale) {
  require(!values.empty(), "sweep needs at least one point");
  require(std::is_sorted(values.begin(), values.end()), "sweep values must be ascending");
  cfg.validate();
  require(options.runs_per_point >= 1, "runs_per_point must be at least 1");
  std::vector<GenSpec> specs;
  std::uint64_t cells = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    GenSpec spec = spec_template;
    set_scale(spec, values[i]);
    spec.seed = spec_template.seed ^ i;
    spec.validate();
    guard_point(spec, cfg);
    cells += static_cast<std::uint64_t>(spec.n) * static_cast<std::uint64_t>(spec.d_plus_1);
    specs.push_back(std::move(spec));
  }
  if (cells > options.max_cells)
    throw SizeGuardError("sweep holds " + std::to_string(cells) + " matrix cells, cap is " +
                         std::to_string(options.max_cells));

  std::vector<Dataset> data;
  for (const auto& spec : specs) data.push_back(generate(spec).dataset);
  for (std::uint64_t w = 0; w < options.warmup_runs; ++w)
    for (std::size_t i = 0; i < data.size(); ++i) time_one_run(data[i], specs[i].precision, cfg);

  // round-robin over points so drift in machine speed is shared evenly
  std::vector<PointSamples> samples(data.size());
  for (std::uint64_t r = 0; r < options.runs_per_point; ++r)
    for (std::size_t i = 0; i < data.size(); ++i)
      samples[i].add(time_one_run(data[i], specs[i].precision, cfg));

  std::vector<ExperimentRow> rows;
  for (std::size_t i = 0; i < data.size(); ++i)
    rows.push_back(samples[i].row(static_cast<std::uint64_t>(values[i])));
  return rows;
}

const std::vector<std::string> kColumns = {
    "scale_param",      "runs",          "classical_ms_mean", "classical_ms_std",
    "formulate_ms_mean", "formulate_ms_std", "solve_ms_mean",  "solve_ms_std",
    "combined_ms_mean", "combined_ms_std", "classical_error_mean", "qubo_error_mean"};

bool is_timing_column(const std::string& name) { return name.find("_ms_") != std::string::npos; }

std::string cell(const ExperimentRow& row, const std::string& column) {
  if (column == "scale_param") return std::to_string(row.scale_param);
  if (column == "runs") return std::to_string(row.runs);
  if (column == "classical_ms_mean") return io::format_double(row.classical_ms.mean);
  if (column == "classical_ms_std") return io::format_double(row.classical_ms.stddev);
  if (column == "formulate_ms_mean") return io::format_double(row.formulate_ms.mean);
  if (column == "formulate_ms_std") return io::format_double(row.formulate_ms.stddev);
  if (column == "solve_ms_mean") return io::format_double(row.solve_ms.mean);
  if (column == "solve_ms_std") return io::format_double(row.solve_ms.stddev);
  if (column == "combined_ms_mean") return io::format_double(row.combined_ms.mean);
  if (column == "combined_ms_std") return io::format_double(row.combined_ms.stddev);
  if (column == "classical_error_mean") return io::format_double(row.classical_error);
  return io::format_double(row.qubo_error);
}

double mean_or_zero(double sum, std::uint64_t count) {
  return count ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace

Measurement summarize(std::span<const double> samples) {
  require(!samples.empty(), "cannot summarize an empty sample");
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / static_cast<double>(samples.size());
  if (samples.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  return {mean, std::sqrt(ss / static_cast<double>(samples.size() - 1))};
}

bool run_fits(double qubo_error, double classical_error, double label_energy,
              double fit_threshold) {
  return qubo_error <= fit_threshold * classical_error + 1e-12 * (1.0 + label_energy);
}

RecoveryReport run_recovery_experiment(std::uint64_t runs, const GenSpec& spec,
                                       const SolverConfig& cfg, double fit_threshold) {
  require(runs >= 1, "recovery experiment needs at least one run");
  require(std::isfinite(fit_threshold) && fit_threshold > 0.0, "fit threshold must be positive");
  spec.validate();
  cfg.validate();

  RecoveryReport report;
  report.runs = runs;
  report.fit_threshold = fit_threshold;
  report.noise_sigma = spec.noise_sigma;

  double cls_fit = 0, cls_nofit = 0, q_fit = 0, q_nofit = 0, ham_fit = 0, ham_nofit = 0;
  for (std::uint64_t r = 0; r < runs; ++r) {
    GenSpec run_spec = spec;
    run_spec.seed = spec.seed ^ r;
    const GeneratedData data = generate(run_spec);
    const Dataset& ds = data.dataset;

    const double classical = regression_error(ds, solve_analytical(ds));
    SolverConfig run_cfg = cfg;
    run_cfg.seed = cfg.seed ^ r;
    const SolveReport solved = solve_regression_via_qubo(ds, spec.precision, run_cfg, data.bits);
    const auto hamming = static_cast<double>(*solved.hamming_distance);
    if (*solved.hamming_distance == 0) ++report.exact_recoveries;

    if (run_fits(solved.error, classical, ds.y().squaredNorm(), fit_threshold)) {
      ++report.fit_runs;
      cls_fit += classical;
      q_fit += solved.error;
      ham_fit += hamming;
    } else {
      cls_nofit += classical;
      q_nofit += solved.error;
      ham_nofit += hamming;
    }
  }
  const std::uint64_t nofit_runs = runs - report.fit_runs;
  report.fit_fraction = static_cast<double>(report.fit_runs) / static_cast<double>(runs);
  report.classical_error = {mean_or_zero(cls_fit, report.fit_runs),
                            mean_or_zero(cls_nofit, nofit_runs),
                            mean_or_zero(cls_fit + cls_nofit, runs)};
  report.qubo_error = {mean_or_zero(q_fit, report.fit_runs), mean_or_zero(q_nofit, nofit_runs),
                       mean_or_zero(q_fit + q_nofit, runs)};
  report.mean_hamming_fit = mean_or_zero(ham_fit, report.fit_runs);
  report.mean_hamming_nofit = mean_or_zero(ham_nofit, nofit_runs);
  report.mean_hamming_overall = mean_or_zero(ham_fit + ham_nofit, runs);
  return report;
}

std::vector<ExperimentRow> run_scaling_n(std::span<const Eigen::Index> n_values,
                                         const GenSpec& spec_template, const SolverConfig& cfg,
                                         const ScalingOptions& options) {
  return sweep(n_values, spec_template, cfg, options,
               [](GenSpec& s, Eigen::Index n) { s.n = n; });
}

std::vector<ExperimentRow> run_scaling_d(std::span<const Eigen::Index> d_plus_1_values,
                                         const GenSpec& spec_template, const SolverConfig& cfg,
                                         const ScalingOptions& options) {
  // A fixed ground truth cannot follow a changing d+1.
  GenSpec base = spec_template;
  base.ground_truth.reset();
  return sweep(d_plus_1_values, base, cfg, options,
               [](GenSpec& s, Eigen::Index d_plus_1) { s.d_plus_1 = d_plus_1; });
}

const std::vector<std::string>& report_columns() { return kColumns; }

void emit_report_csv(std::ostream& out, std::span<const ExperimentRow> rows, bool include_timing) {
  require(!rows.empty(), "report needs at least one row");
  std::vector<std::string> columns;
  for (const auto& c : kColumns)
    if (include_timing || !is_timing_column(c)) columns.push_back(c);
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << cell(row, columns[i]);
    out << '\n';
  }
  require(out.good(), "failed writing report");
}

std::vector<ExperimentRow> parse_report_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "report CSV is empty");
  std::vector<std::string> header;
  {
    std::istringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) header.push_back(f);
  }
  for (const auto& h : header)
    require(std::find(kColumns.begin(), kColumns.end(), h) != kColumns.end(),
            "unknown report column '" + h + "'");

  std::vector<ExperimentRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    require(fields.size() == header.size(), "report row has wrong column count");
    ExperimentRow row;
    for (std::size_t i = 0; i < header.size(); ++i) {
      const std::string& h = header[i];
      const std::string& v = fields[i];
      std::size_t used = 0;
      const double value = std::stod(v, &used);
      require(used == v.size(), "cannot parse report value '" + v + "'");
      if (h == "scale_param") row.scale_param = std::stoull(v);
      else if (h == "runs") row.runs = std::stoull(v);
      else if (h == "classical_ms_mean") row.classical_ms.mean = value;
      else if (h == "classical_ms_std") row.classical_ms.stddev = value;
      else if (h == "formulate_ms_mean") row.formulate_ms.mean = value;
      else if (h == "formulate_ms_std") row.formulate_ms.stddev = value;
      else if (h == "solve_ms_mean") row.solve_ms.mean = value;
      else if (h == "solve_ms_std") row.solve_ms.stddev = value;
      else if (h == "combined_ms_mean") row.combined_ms.mean = value;
      else if (h == "combined_ms_std") row.combined_ms.stddev = value;
      else if (h == "classical_error_mean") row.classical_error = value;
      else row.qubo_error = value;
    }
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json rows_to_json(std::span<const ExperimentRow> rows, bool include_timing) {
  nlohmann::json out = nlohmann::json::array();
  auto measurement = [](const Measurement& m) {
    return nlohmann::json{{"mean", m.mean}, {"std", m.stddev}};
  };
  for (const auto& row : rows) {
    nlohmann::json j{{"scale_param", row.scale_param},
                     {"runs", row.runs},
                     {"qubo_size", row.qubo_size},
                     {"classical_error_mean", row.classical_error},
                     {"qubo_error_mean", row.qubo_error}};
    if (include_timing) {
      j["classical_ms"] = measurement(row.classical_ms);
      j["formulate_ms"] = measurement(row.formulate_ms);
      j["solve_ms"] = measurement(row.solve_ms);
      j["combined_ms"] = measurement(row.combined_ms);
    }
    out.push_back(std::move(j));
  }
  return out;
}

nlohmann::json recovery_to_json(const RecoveryReport& r) {
  auto strata = [](const StratifiedError& e) {
    return nlohmann::json{{"fit", e.fit}, {"nofit", e.nofit}, {"overall", e.overall}};
  };
  return nlohmann::json{{"runs", r.runs},
                        {"fit_runs", r.fit_runs},
                        {"fit_fraction", r.fit_fraction},
                        {"fit_threshold", r.fit_threshold},
                        {"noise_sigma", r.noise_sigma},
                        {"exact_recoveries", r.exact_recoveries},
                        {"classical_error", strata(r.classical_error)},
                        {"qubo_error", strata(r.qubo_error)},
                        {"mean_hamming_fit", r.mean_hamming_fit},
                        {"mean_hamming_nofit", r.mean_hamming_nofit},
                        {"mean_hamming_overall", r.mean_hamming_overall}};
}

double top_quartile_loglog_slope(std::span<const ExperimentRow> rows) {
  require(rows.size() >= 2, "slope needs at least two rows");
  std::size_t k = (rows.size() + 3) / 4;
  k = std::min(rows.size(), std::max<std::size_t>(k, 3));
  const auto top = rows.last(k);
  double sx = 0, sy = 0;
  for (const auto& r : top) {
    require(r.scale_param > 0 && r.formulate_ms.mean > 0.0, "slope needs positive values");
    sx += std::log(static_cast<double>(r.scale_param));
    sy += std::log(r.formulate_ms.mean);
  }
  const double mx = sx / static_cast<double>(k);
  const double my = sy / static_cast<double>(k);
  double sxy = 0, sxx = 0;
  for (const auto& r : top) {
    const double dx = std::log(static_cast<double>(r.scale_param)) - mx;
    sxy += dx * (std::log(r.formulate_ms.mean) - my);
    sxx += dx * dx;
  }
  require(sxx > 0.0, "slope needs distinct scale values");
  return sxy / sxx;
}

}  // namespace qregress::bench
