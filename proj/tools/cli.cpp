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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "qregress/bench.hpp"
#include "qregress/datagen.hpp"
#include "qregress/io.hpp"
#include "qregress/solvers.hpp"
#include "qregress/timer.hpp"

namespace qregress::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

constexpr const char* kSeedEnv = "QREGRESS_SEED";

// Flags shared by every randomized subcommand.
struct SeedFlags {
  std::optional<std::uint64_t> seed;

  void add(CLI::App& app) {
    app.add_option("--seed", seed,
                   std::string("RNG seed; falls back to $") + kSeedEnv + ", then 0");
  }

  std::uint64_t resolve() const {
    if (seed) return *seed;
    if (const char* env = std::getenv(kSeedEnv)) {
      const std::string text = env;
      require(!text.empty() && text.find_first_not_of("0123456789") == std::string::npos,
              std::string(kSeedEnv) + " must be an unsigned integer");
      return std::stoull(text);
    }
    return 0;
  }
};

struct PrecisionFlags {
  std::string precision = "0.25,0.5";
  bool allow_any = false;

  void add(CLI::App& app, bool required) {
    auto* opt = app.add_option("--precision", precision,
                               "comma-separated precision vector, sorted ascending");
    if (required) opt->required();
    app.add_flag("--allow-any-precision", allow_any,
                 "accept precision entries that are not powers of two");
  }

  PrecisionVector resolve() const { return io::parse_precision(precision, allow_any); }
};

struct SolverFlags {
  std::string backend = "simulated_annealing";
  std::optional<std::uint64_t> num_reads;
  std::optional<std::uint64_t> sweeps;
  std::optional<double> beta_initial;
  std::optional<double> beta_final;
  std::optional<double> fault_probability;
  std::optional<std::string> config_file;
  unsigned threads = 0;

  void add(CLI::App& app) {
    app.add_option("--backend", backend, "exhaustive | simulated_annealing")
        ->capture_default_str();
    app.add_option("--num-reads", num_reads, "annealing reads (default 1000)");
    app.add_option("--sweeps", sweeps, "sweeps per read (default 1000)");
    app.add_option("--beta-initial", beta_initial, "initial inverse temperature (default 0.1)");
    app.add_option("--beta-final", beta_final, "final inverse temperature (default 10)");
    app.add_option("--fault-probability", fault_probability,
                   "per-bit flip probability applied to returned solutions (default 0)");
    app.add_option("--config", config_file, "key=value solver config file; flags override it");
    app.add_option("--threads", threads, "worker thread cap, 0 = hardware count")
        ->capture_default_str();
  }

  SolverConfig resolve(std::uint64_t seed, const CLI::App& app) const {
    SolverConfig cfg;
    if (config_file) io::apply_solver_config(cfg, io::read_key_value_file(*config_file));
    if (app.count("--backend") || !config_file) cfg.backend = backend_from_string(backend);
    if (num_reads) cfg.num_reads = *num_reads;
    if (sweeps) cfg.sweeps_per_read = *sweeps;
    if (beta_initial) cfg.beta_initial = *beta_initial;
    if (beta_final) cfg.beta_final = *beta_final;
    if (fault_probability) cfg.fault_probability = *fault_probability;
    cfg.threads = threads;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

fs::path truth_path_for(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".truth.json");
  return p;
}

// --truth accepts a bit string ("0111") or a path to a .truth.json sidecar.
BitVector resolve_truth(const std::string& text) {
  if (fs::exists(text)) {
    std::ifstream in(text);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw ContractViolation("cannot parse truth file '" + text + "': " + e.what());
    }
    require(j.contains("bits"), "truth file '" + text + "' has no bits field");
    return io::bits_from_json(j["bits"]);
  }
  return io::parse_bits(text);
}

std::vector<Eigen::Index> parse_counts(const std::string& text) {
  std::vector<Eigen::Index> out;
  std::istringstream ss(text);
  for (std::string f; std::getline(ss, f, ',');) {
    require(!f.empty() && f.find_first_not_of("0123456789") == std::string::npos,
            "cannot parse count '" + f + "'");
    out.push_back(static_cast<Eigen::Index>(std::stoull(f)));
  }
  require(!out.empty(), "count list is empty");
  return out;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear regression as a QUBO problem: formulate, solve, benchmark.", "qregress"};
  app.require_subcommand(1, 1);

  bool no_timing = false;
  std::optional<std::string> out_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--no-timing", no_timing, "omit wall-clock fields from the output");
    sub->add_option("--out", out_path, "output file");
  };

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "generate a synthetic regression dataset");
  Eigen::Index gen_n = 0, gen_d = 0;
  double gen_sigma = 0.0, gen_low = -1.0, gen_high = 1.0;
  std::optional<std::string> gen_truth;
  SeedFlags gen_seed;
  PrecisionFlags gen_precision;
  gen->add_option("--n", gen_n, "number of datapoints")->required();
  gen->add_option("--d", gen_d, "number of features (d); the unit column is added")->required();
  gen->add_option("--sigma", gen_sigma, "label noise standard deviation")->capture_default_str();
  gen->add_option("--low", gen_low, "lower feature bound")->capture_default_str();
  gen->add_option("--high", gen_high, "upper feature bound")->capture_default_str();
  gen->add_option("--truth", gen_truth, "explicit ground-truth weights, comma-separated");
  gen_seed.add(*gen);
  gen_precision.add(*gen, true);
  add_common(gen);
  gen->get_option("--out")->required();

  // formulate
  auto* formulate = app.add_subcommand("formulate", "build the QUBO for a dataset");
  std::string data_path;
  PrecisionFlags form_precision;
  formulate->add_option("--data", data_path, "dataset CSV")->required();
  form_precision.add(*formulate, true);
  add_common(formulate);

  // export-qubo
  auto* exporter = app.add_subcommand("export-qubo", "write the QUBO as coordinate text or JSON");
  std::string export_format = "coo";
  PrecisionFlags export_precision;
  exporter->add_option("--data", data_path, "dataset CSV")->required();
  exporter->add_option("--format", export_format, "coo | json")
      ->check(CLI::IsMember({"coo", "json"}))
      ->capture_default_str();
  export_precision.add(*exporter, true);
  add_common(exporter);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve a dataset or an exported QUBO");
  std::optional<std::string> qubo_path;
  std::optional<std::string> solve_truth;
  PrecisionFlags solve_precision;
  SolverFlags solve_flags;
  SeedFlags solve_seed;
  auto* data_opt = solve_cmd->add_option("--data", data_path, "dataset CSV");
  auto* qubo_opt = solve_cmd->add_option("--qubo", qubo_path, "exported QUBO (coo or JSON)");
  data_opt->excludes(qubo_opt);
  solve_cmd->add_option("--truth", solve_truth,
                        "ground-truth bits or .truth.json path, for the Hamming distance");
  solve_precision.add(*solve_cmd, false);
  solve_flags.add(*solve_cmd);
  solve_seed.add(*solve_cmd);
  add_common(solve_cmd);

  // baseline
  auto* baseline = app.add_subcommand("baseline", "classical least-squares solve");
  baseline->add_option("--data", data_path, "dataset CSV")->required();
  add_common(baseline);

  // recover
  auto* recover = app.add_subcommand("recover", "repeated generate-and-solve recovery study");
  std::uint64_t rec_runs = 100;
  Eigen::Index rec_n = 100, rec_d = 1;
  double rec_sigma = 0.0, rec_threshold = bench::kDefaultFitThreshold;
  std::optional<std::string> rec_truth;
  PrecisionFlags rec_precision;
  SolverFlags rec_flags;
  SeedFlags rec_seed;
  recover->add_option("--runs", rec_runs, "experimental runs")->capture_default_str();
  recover->add_option("--n", rec_n, "datapoints per run")->capture_default_str();
  recover->add_option("--d", rec_d, "features per run")->capture_default_str();
  recover->add_option("--sigma", rec_sigma, "label noise standard deviation")
      ->capture_default_str();
  recover->add_option("--truth", rec_truth, "fixed ground-truth weights, comma-separated");
  recover->add_option("--fit-threshold", rec_threshold,
                      "a run fits when qubo_error <= threshold * classical_error")
      ->capture_default_str();
  rec_precision.add(*recover, false);
  rec_flags.add(*recover);
  rec_seed.add(*recover);
  add_common(recover);

  // bench-n / bench-d
  struct BenchFlags {
    std::optional<std::string> values;
    std::uint64_t runs = 10;
    Eigen::Index fixed = 0;
    double sigma = 0.1;
    bool full_scale = false;
    std::optional<std::string> json_path;
    PrecisionFlags precision;
    SolverFlags solver;
    SeedFlags seed;
  };
  BenchFlags bn, bd;
  bn.fixed = 2;
  bd.fixed = 524288;
  auto* bench_n = app.add_subcommand("bench-n", "timing sweep over the number of datapoints");
  bench_n->add_option("--n-values", bn.values,
                      "comma-separated N values (default 2^9..2^21, 2^24 with --full-scale)");
  bench_n->add_option("--d-plus-1", bn.fixed, "fixed number of columns d+1")
      ->capture_default_str();
  auto* bench_d = app.add_subcommand("bench-d", "timing sweep over the number of columns d+1");
  bench_d->add_option("--d-values", bd.values, "comma-separated d+1 values (default 2,4,...,32)");
  bench_d->add_option("--n", bd.fixed, "fixed number of datapoints")->capture_default_str();
  for (auto [sub, flags] : {std::pair{bench_n, &bn}, std::pair{bench_d, &bd}}) {
    sub->add_option("--runs", flags->runs, "timed runs per point")->capture_default_str();
    sub->add_option("--sigma", flags->sigma, "label noise standard deviation")
        ->capture_default_str();
    sub->add_flag("--full-scale", flags->full_scale, "60 runs per point and the full sweep");
    sub->add_option("--json", flags->json_path, "also write the rows as JSON");
    flags->precision.add(*sub, false);
    flags->solver.add(*sub);
    flags->seed.add(*sub);
    add_common(sub);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "qregress: " << e.what() << '\n';
    return kUsage;
  }

  try {
    std::string report;
    // Files are written only after every computation has succeeded.
    std::vector<std::pair<fs::path, std::string>> files;

    if (gen->parsed()) {
      GenSpec spec;
      spec.n = gen_n;
      spec.d_plus_1 = gen_d + 1;
      spec.precision = gen_precision.resolve();
      spec.noise_sigma = gen_sigma;
      spec.feature_low = gen_low;
      spec.feature_high = gen_high;
      spec.seed = gen_seed.resolve();
      if (gen_truth) spec.ground_truth = io::parse_weights(*gen_truth);
      const GeneratedData data = generate(spec);
      std::ostringstream csv;
      io::write_dataset_csv(csv, data.dataset);
      const json truth = io::truth_to_json(spec, data);
      const fs::path csv_path = *out_path;
      files.emplace_back(csv_path, csv.str());
      files.emplace_back(truth_path_for(csv_path), dump(truth));
      json summary = truth;
      summary["data"] = csv_path.string();
      summary["truth_file"] = truth_path_for(csv_path).string();
      summary["seed"] = spec.seed;
      report = dump(summary);
    } else if (formulate->parsed()) {
      const Dataset ds = io::read_dataset_csv(data_path);
      const PrecisionVector p = form_precision.resolve();
      Stopwatch clock;
      const Qubo q = build_qubo(ds, p);
      const double ms = clock.elapsed_ms();
      json summary{{"n", ds.n()}, {"d_plus_1", ds.d_plus_1()}, {"k", p.size()},
                   {"m", q.m()},  {"offset", q.offset()}};
      if (!no_timing) summary["formulate_time_ms"] = ms;
      summary["qubo"] = io::qubo_to_json(q);
      if (out_path) files.emplace_back(*out_path, dump(io::qubo_to_json(q)));
      report = dump(summary);
    } else if (exporter->parsed()) {
      const Dataset ds = io::read_dataset_csv(data_path);
      const Qubo q = build_qubo(ds, export_precision.resolve());
      std::ostringstream text;
      if (export_format == "coo") {
        io::write_qubo_coo(text, q);
      } else {
        text << dump(io::qubo_to_json(q));
      }
      if (out_path) {
        files.emplace_back(*out_path, text.str());
        report = dump(json{{"m", q.m()}, {"format", export_format}, {"out", *out_path}});
      } else {
        report = text.str();
      }
    } else if (solve_cmd->parsed()) {
      const std::uint64_t seed = solve_seed.resolve();
      const SolverConfig cfg = solve_flags.resolve(seed, *solve_cmd);
      std::optional<BitVector> truth;
      if (solve_truth) truth = resolve_truth(*solve_truth);
      json j;
      if (qubo_path) {
        const Qubo q = io::read_qubo(*qubo_path);
        const SolveOutcome outcome = solve(q, cfg);
        j["bits"] = io::bits_to_json(outcome.best.bits);
        j["energy"] = outcome.best.energy;
        j["offset"] = q.offset();
        j["ground_state_hits"] = outcome.ground_state_hits;
        j["num_reads"] = outcome.read_energies.size();
        if (!no_timing) j["solve_time_ms"] = outcome.solve_time_ms;
        j["hamming_distance"] =
            truth ? json(hamming_distance(outcome.best.bits, *truth)) : json(nullptr);
      } else {
        require(!data_path.empty(), "solve needs --data or --qubo");
        const Dataset ds = io::read_dataset_csv(data_path);
        j = io::report_to_json(
            solve_regression_via_qubo(ds, solve_precision.resolve(), cfg, truth), !no_timing);
      }
      j["backend"] = to_string(cfg.backend);
      j["seed"] = seed;
      report = dump(j);
      if (out_path) files.emplace_back(*out_path, report);
    } else if (baseline->parsed()) {
      const Dataset ds = io::read_dataset_csv(data_path);
      Stopwatch clock;
      const Weights w = solve_analytical(ds);
      const double ms = clock.elapsed_ms();
      json j{{"weights", io::weights_to_json(w)}, {"error", regression_error(ds, w)}};
      if (!no_timing) j["solve_time_ms"] = ms;
      report = dump(j);
      if (out_path) files.emplace_back(*out_path, report);
    } else if (recover->parsed()) {
      const std::uint64_t seed = rec_seed.resolve();
      GenSpec spec;
      spec.n = rec_n;
      spec.d_plus_1 = rec_d + 1;
      spec.precision = rec_precision.resolve();
      spec.noise_sigma = rec_sigma;
      spec.seed = seed;
      if (rec_truth) spec.ground_truth = io::parse_weights(*rec_truth);
      const SolverConfig cfg = rec_flags.resolve(seed, *recover);
      json j = bench::recovery_to_json(
          bench::run_recovery_experiment(rec_runs, spec, cfg, rec_threshold));
      j["backend"] = to_string(cfg.backend);
      j["fault_probability"] = cfg.fault_probability;
      j["seed"] = seed;
      report = dump(j);
      if (out_path) files.emplace_back(*out_path, report);
    } else {
      const bool is_n = bench_n->parsed();
      BenchFlags& f = is_n ? bn : bd;
      CLI::App& sub = is_n ? *bench_n : *bench_d;
      const std::uint64_t seed = f.seed.resolve();
      std::vector<Eigen::Index> values;
      if (f.values) {
        values = parse_counts(*f.values);
      } else if (is_n) {
        const int top = f.full_scale ? 24 : 21;
        for (int e = 9; e <= top; ++e) values.push_back(Eigen::Index{1} << e);
      } else {
        for (Eigen::Index v = 2; v <= 32; v += 2) values.push_back(v);
      }
      GenSpec spec;
      spec.precision = f.precision.resolve();
      spec.noise_sigma = f.sigma;
      spec.seed = seed;
      if (is_n) spec.d_plus_1 = f.fixed;
      else spec.n = f.fixed;
      bench::ScalingOptions options;
      options.runs_per_point = f.full_scale && !sub.count("--runs") ? 60 : f.runs;
      if (f.full_scale) options.max_cells = std::uint64_t{1} << 30;
      const SolverConfig cfg = f.solver.resolve(seed, sub);
      const auto rows = is_n ? bench::run_scaling_n(values, spec, cfg, options)
                             : bench::run_scaling_d(values, spec, cfg, options);
      json j{{"experiment", is_n ? "bench-n" : "bench-d"},
             {"backend", to_string(cfg.backend)},
             {"precision", io::weights_to_json(spec.precision.values())},
             {"noise_sigma", spec.noise_sigma},
             {"seed", seed},
             {"rows", bench::rows_to_json(rows, !no_timing)}};
      report = dump(j);
      if (out_path) {
        std::ostringstream csv;
        bench::emit_report_csv(csv, rows, !no_timing);
        files.emplace_back(*out_path, csv.str());
      }
      if (f.json_path) files.emplace_back(*f.json_path, report);
    }

    for (const auto& [path, contents] : files) io::write_file_atomic(path, contents);
    out << report;
    return kOk;
  } catch (const std::exception& e) {
    err << "qregress: " << e.what() << '\n';
    return kContractViolation;
  }
}

}  // namespace qregress::cli
