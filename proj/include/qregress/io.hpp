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

#ifndef QREGRESS_IO_HPP
#define QREGRESS_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include <json.hpp>

#include "qregress/datagen.hpp"
#include "qregress/precision.hpp"
#include "qregress/qubo.hpp"
#include "qregress/solvers.hpp"

namespace qregress::io {

using nlohmann::json;

// Dataset CSV: one row per point, d feature columns then the label. The
// unit column is appended on load and never written. A header row is
// optional and recognised by a non-numeric first line.
Dataset parse_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);
void write_dataset_csv(std::ostream& out, const Dataset& ds);

/// "0.25,0.5" -> [0.25, 0.5], validated.
PrecisionVector parse_precision(const std::string& text, bool allow_any = false);
Weights parse_weights(const std::string& text);
BitVector parse_bits(const std::string& text);

// Coordinate-list QUBO text:
//   p <M> <nonzeros>
//   i j value        (0-indexed, i <= j; diagonal a_ii + b_i, off-diagonal 2 a_ij)
//   # offset <value>
void write_qubo_coo(std::ostream& out, const Qubo& q);
Qubo parse_qubo_coo(std::istream& in);

json qubo_to_json(const Qubo& q);
Qubo qubo_from_json(const json& j);

/// Reads either export format, chosen by content.
Qubo read_qubo(const std::filesystem::path& path);

json weights_to_json(const Weights& w);
json bits_to_json(const BitVector& bits);
BitVector bits_from_json(const json& j);

json report_to_json(const SolveReport& report, bool include_timing = true);

/// Sidecar for generated data: ground truth weights, bits and the generator settings.
json truth_to_json(const GenSpec& spec, const GeneratedData& data);

/// `key = value` lines; blank lines and lines starting with '#' are ignored.
std::map<std::string, std::string> parse_key_value(std::istream& in);
std::map<std::string, std::string> read_key_value_file(const std::filesystem::path& path);

/// Applies recognised keys (backend, num_reads, sweeps_per_read,
/// beta_initial, beta_final, seed, threads, fault_probability) and rejects
/// anything else.
void apply_solver_config(SolverConfig& cfg, const std::map<std::string, std::string>& values);

/// %.17g: the shortest fixed format that round-trips a double.
std::string format_double(double value);

/// Writes to `path` via a temporary sibling and rename, so a failure never
/// leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace qregress::io

#endif  // QREGRESS_IO_HPP
