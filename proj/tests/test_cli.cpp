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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = qregress::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qregress_cli_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("gen-data then solve recovers the reference weights") {
  TempDir dir;
  const std::string csv = dir / "ds.csv";
  auto r = run({"gen-data", "--n", "100", "--d", "1", "--precision", "0.25,0.5", "--sigma", "0",
                "--seed", "7", "--truth", "0.5,0.75", "--out", csv});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(csv));
  CHECK(fs::exists(dir / "ds.truth.json"));
  CHECK(json::parse(r.out).at("seed") == 7);

  r = run({"solve", "--data", csv, "--precision", "0.25,0.5", "--backend", "exhaustive",
           "--truth", dir / "ds.truth.json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("weights") == json::array({0.5, 0.75}));
  CHECK(j.at("hamming_distance") == 0);
  for (const char* key : {"error", "formulate_time_ms", "solve_time_ms", "ground_state_hits",
                          "num_reads"})
    CHECK(j.contains(key));

  r = run({"baseline", "--data", csv});
  REQUIRE(r.code == 0);
  const json b = json::parse(r.out);
  CHECK(b.at("weights")[0].get<double>() == doctest::Approx(0.5));
  CHECK(b.at("weights")[1].get<double>() == doctest::Approx(0.75));
}

TEST_CASE("gen-data without explicit truth draws representable weights") {
  TempDir dir;
  auto r = run({"gen-data", "--n", "20", "--d", "2", "--precision", "-1,0.5", "--seed", "3",
                "--out", dir / "g.csv"});
  REQUIRE(r.code == 0);
  const json truth = json::parse(slurp(dir / "g.truth.json"));
  CHECK(truth.at("bits").size() == 6);
  CHECK(truth.at("generator").at("seed") == 3);
}

TEST_CASE("error paths and exit codes") {
  TempDir dir;
  auto r = run({"solve", "--data", dir / "missing.csv", "--precision", "0.25,0.5"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(!r.err.empty());

  r = run({"solve", "--data", dir / "missing.csv", "--out", dir / "report.json"});
  CHECK(r.code == 1);
  CHECK_FALSE(fs::exists(dir / "report.json"));

  r = run({"solve", "--bogus-flag"});
  CHECK(r.code == 2);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"gen-data", "--n", "10", "--d", "1", "--precision", "0.3,0.5", "--out",
             dir / "x.csv"}).code == 1);
  CHECK(run({"gen-data", "--n", "10", "--d", "1", "--precision", "0.3,0.5",
             "--allow-any-precision", "--out", dir / "x.csv"}).code == 0);
}

TEST_CASE("every subcommand documents its flags") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> expected = {
      {"gen-data", {"--n", "--d", "--precision", "--sigma", "--seed", "--out", "--truth"}},
      {"formulate", {"--data", "--precision", "--out"}},
      {"solve", {"--data", "--qubo", "--backend", "--num-reads", "--seed", "--config", "--truth"}},
      {"baseline", {"--data", "--out"}},
      {"recover", {"--runs", "--fit-threshold", "--fault-probability", "--seed"}},
      {"bench-n", {"--n-values", "--runs", "--full-scale", "--seed"}},
      {"bench-d", {"--d-values", "--n", "--runs", "--seed"}},
      {"export-qubo", {"--data", "--format", "--out"}},
  };
  for (const auto& [cmd, flags] : expected) {
    const auto r = run({cmd, "--help"});
    CHECK(r.code == 0);
    for (const auto& flag : flags) CHECK_MESSAGE(r.out.find(flag) != std::string::npos, cmd << " " << flag);
    CHECK(r.out.find("--no-timing") != std::string::npos);
  }
}

TEST_CASE("export-qubo round trip through solve --qubo") {
  TempDir dir;
  const std::string csv = dir / "ds.csv";
  REQUIRE(run({"gen-data", "--n", "30", "--d", "2", "--precision", "-0.5,0.25,1", "--sigma", "0.2",
               "--seed", "11", "--out", csv}).code == 0);
  for (const std::string format : {"coo", "json"}) {
    const std::string path = dir / ("q." + format);
    REQUIRE(run({"export-qubo", "--data", csv, "--precision", "-0.5,0.25,1", "--format", format,
                 "--out", path}).code == 0);
    const auto from_file = run({"solve", "--qubo", path, "--backend", "exhaustive", "--no-timing"});
    const auto in_process = run({"solve", "--data", csv, "--precision", "-0.5,0.25,1",
                                 "--backend", "exhaustive", "--no-timing"});
    REQUIRE(from_file.code == 0);
    REQUIRE(in_process.code == 0);
    const json a = json::parse(from_file.out);
    const json b = json::parse(in_process.out);
    CHECK(a.at("bits") == b.at("bits"));
    CHECK(a.at("energy").get<double>() == b.at("energy").get<double>());
  }
}

TEST_CASE("formulate prints the QUBO record") {
  TempDir dir;
  const std::string csv = dir / "ds.csv";
  std::ofstream(csv) << "1,3\n2,5\n";
  const auto r = run({"formulate", "--data", csv, "--precision", "1,2", "--no-timing"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("m") == 4);
  CHECK(j.at("offset") == 34.0);
  CHECK(j.at("qubo").at("b") == json::array({-26.0, -52.0, -16.0, -32.0}));
  CHECK_FALSE(j.contains("formulate_time_ms"));
}

TEST_CASE("seed falls back to the environment") {
  TempDir dir;
  ::setenv("QREGRESS_SEED", "5", 1);
  auto a = run({"gen-data", "--n", "5", "--d", "1", "--precision", "0.25,0.5", "--out", dir / "a.csv"});
  ::unsetenv("QREGRESS_SEED");
  auto b = run({"gen-data", "--n", "5", "--d", "1", "--precision", "0.25,0.5", "--seed", "5",
                "--out", dir / "b.csv"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(json::parse(a.out).at("seed") == 5);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
}

TEST_CASE("config file feeds the solver") {
  TempDir dir;
  const std::string csv = dir / "ds.csv";
  std::ofstream(csv) << "1,3\n2,5\n";
  std::ofstream(dir / "solver.cfg") << "backend = simulated_annealing\nnum_reads = 7\n";
  auto r = run({"solve", "--data", csv, "--precision", "1,2", "--config", dir / "solver.cfg"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("num_reads") == 7);
  std::ofstream(dir / "bad.cfg") << "temperature = 3\n";
  CHECK(run({"solve", "--data", csv, "--precision", "1,2", "--config", dir / "bad.cfg"}).code == 1);
}

TEST_CASE("recover and bench subcommands emit reports") {
  TempDir dir;
  auto r = run({"recover", "--runs", "5", "--truth", "0.5,0.75", "--backend", "exhaustive",
                "--seed", "1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("fit_fraction") == 1.0);

  r = run({"bench-n", "--n-values", "512,1024", "--runs", "2", "--num-reads", "3", "--sweeps",
           "10", "--out", dir / "n.csv"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("rows").size() == 2);
  CHECK(slurp(dir / "n.csv").rfind("scale_param,runs,", 0) == 0);

  r = run({"bench-d", "--d-values", "2,4", "--n", "256", "--runs", "2", "--num-reads", "3",
           "--sweeps", "10"});
  REQUIRE(r.code == 0);
  const json rows = json::parse(r.out).at("rows");
  CHECK(rows[0].at("qubo_size") == 4);
  CHECK(rows[1].at("qubo_size") == 8);
}
