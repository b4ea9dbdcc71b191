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

#include "qregress/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>
#include <vector>

namespace qregress::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

bool try_parse_double(const std::string& text, double& value) {
  if (text.empty()) return false;
  errno = 0;
  char* end = nullptr;
  value = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size() && errno != ERANGE;
}

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  require(try_parse_double(text, value), "cannot parse " + what + " '" + text + "'");
  return value;
}

std::uint64_t parse_unsigned(const std::string& text, const std::string& what) {
  require(!text.empty() && text.find_first_not_of("0123456789") == std::string::npos,
          "cannot parse " + what + " '" + text + "'");
  errno = 0;
  const auto value = std::strtoull(text.c_str(), nullptr, 10);
  require(errno != ERANGE, what + " out of range: " + text);
  return value;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  for (const auto& field : split(text, ',')) values.push_back(parse_double(field, what));
  require(!values.empty(), what + " list is empty");
  return values;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open '" + path.string() + "' for reading");
  return in;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Dataset parse_dataset_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t i = 0; i < fields.size() && numeric; ++i)
      numeric = try_parse_double(fields[i], row[i]);
    if (!numeric) {
      require(rows.empty() && width == 0,
              "non-numeric value on line " + std::to_string(line_no));
      width = fields.size();  // header
      continue;
    }
    if (width == 0) width = row.size();
    require(row.size() == width, "line " + std::to_string(line_no) + " has " +
                                     std::to_string(row.size()) + " columns, expected " +
                                     std::to_string(width));
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), "dataset CSV contains no data rows");
  require(width >= 1, "dataset CSV needs at least a label column");

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(width - 1);
  Eigen::MatrixXd features(n, d);
  Eigen::VectorXd labels(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < d; ++c) features(r, c) = row[static_cast<std::size_t>(c)];
    labels(r) = row.back();
  }
  return Dataset::from_features(features, labels);
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_dataset_csv(in);
}

void write_dataset_csv(std::ostream& out, const Dataset& ds) {
  const Eigen::Index d = ds.d_plus_1() - 1;
  for (Eigen::Index c = 0; c < d; ++c) out << 'x' << c << ',';
  out << "y\n";
  for (Eigen::Index r = 0; r < ds.n(); ++r) {
    for (Eigen::Index c = 0; c < d; ++c) out << format_double(ds.x()(r, c)) << ',';
    out << format_double(ds.y()(r)) << '\n';
  }
}

PrecisionVector parse_precision(const std::string& text, bool allow_any) {
  const auto values = parse_list(text, "precision entry");
  return PrecisionVector(
      Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())),
      allow_any);
}

Weights parse_weights(const std::string& text) {
  const auto values = parse_list(text, "weight");
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

BitVector parse_bits(const std::string& text) {
  std::string digits;
  for (char ch : text) {
    if (ch == ',' || ch == ' ') continue;
    require(ch == '0' || ch == '1', std::string("invalid bit character '") + ch + "'");
    digits.push_back(ch);
  }
  require(!digits.empty(), "bit string is empty");
  BitVector bits(static_cast<Eigen::Index>(digits.size()));
  for (std::size_t i = 0; i < digits.size(); ++i)
    bits(static_cast<Eigen::Index>(i)) = static_cast<std::uint8_t>(digits[i] - '0');
  return bits;
}

void write_qubo_coo(std::ostream& out, const Qubo& q) {
  const Eigen::VectorXd diag = q.diagonal_terms();
  std::vector<std::tuple<Eigen::Index, Eigen::Index, double>> entries;
  for (Eigen::Index i = 0; i < q.m(); ++i) {
    if (diag(i) != 0.0) entries.emplace_back(i, i, diag(i));
    for (Eigen::Index j = i + 1; j < q.m(); ++j)
      if (q.a()(i, j) != 0.0) entries.emplace_back(i, j, 2.0 * q.a()(i, j));
  }
  out << "p " << q.m() << ' ' << entries.size() << '\n';
  for (const auto& [i, j, v] : entries) out << i << ' ' << j << ' ' << format_double(v) << '\n';
  out << "# offset " << format_double(q.offset()) << '\n';
}

Qubo parse_qubo_coo(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  Eigen::Index m = -1;
  std::uint64_t declared = 0;
  std::uint64_t seen = 0;
  double offset = 0.0;
  Eigen::MatrixXd a;
  std::set<std::pair<Eigen::Index, Eigen::Index>> filled;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::istringstream ss(t);
    std::vector<std::string> tok;
    for (std::string s; ss >> s;) tok.push_back(s);
    const std::string where = " on line " + std::to_string(line_no);
    if (t[0] == '#') {
      if (tok.size() == 3 && tok[1] == "offset") offset = parse_double(tok[2], "offset");
      continue;
    }
    if (tok[0] == "p") {
      require(m < 0, "duplicate problem line" + where);
      require(tok.size() == 3, "malformed problem line" + where);
      m = static_cast<Eigen::Index>(parse_unsigned(tok[1], "problem size"));
      declared = parse_unsigned(tok[2], "nonzero count");
      a = Eigen::MatrixXd::Zero(m, m);
      continue;
    }
    require(m >= 0, "entry before problem line" + where);
    require(tok.size() == 3, "malformed entry" + where);
    const auto i = static_cast<Eigen::Index>(parse_unsigned(tok[0], "row index"));
    const auto j = static_cast<Eigen::Index>(parse_unsigned(tok[1], "column index"));
    const double v = parse_double(tok[2], "coefficient");
    require(i <= j && j < m, "entry index out of range or below diagonal" + where);
    require(filled.emplace(i, j).second, "duplicate entry" + where);
    if (i == j) {
      a(i, i) = v;
    } else {
      a(i, j) = a(j, i) = v / 2.0;
    }
    ++seen;
  }
  require(m >= 0, "missing problem line");
  require(seen == declared, "problem line declares " + std::to_string(declared) +
                                " nonzeros but " + std::to_string(seen) + " were read");
  return Qubo(std::move(a), Eigen::VectorXd::Zero(m), offset);
}

json qubo_to_json(const Qubo& q) {
  json a = json::array();
  for (Eigen::Index i = 0; i < q.m(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < q.m(); ++j) row.push_back(q.a()(i, j));
    a.push_back(std::move(row));
  }
  json b = json::array();
  for (Eigen::Index i = 0; i < q.m(); ++i) b.push_back(q.b()(i));
  return json{{"m", q.m()}, {"a", std::move(a)}, {"b", std::move(b)}, {"offset", q.offset()}};
}

Qubo qubo_from_json(const json& j) {
  try {
    const auto m = j.at("m").get<Eigen::Index>();
    require(m >= 0, "negative QUBO size");
    const auto& a = j.at("a");
    const auto& b = j.at("b");
    require(a.is_array() && b.is_array() && static_cast<Eigen::Index>(a.size()) == m &&
                static_cast<Eigen::Index>(b.size()) == m,
            "QUBO JSON arrays do not match m");
    Eigen::MatrixXd am(m, m);
    Eigen::VectorXd bv(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      const auto& row = a.at(static_cast<std::size_t>(r));
      require(static_cast<Eigen::Index>(row.size()) == m, "QUBO JSON row has wrong length");
      for (Eigen::Index c = 0; c < m; ++c) am(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
      bv(r) = b.at(static_cast<std::size_t>(r)).get<double>();
    }
    return Qubo(std::move(am), std::move(bv), j.at("offset").get<double>());
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("malformed QUBO JSON: ") + e.what());
  }
}

Qubo read_qubo(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ContractViolation("cannot parse '" + path.string() + "': " + e.what());
    }
    return qubo_from_json(j);
  }
  buffer.seekg(0);
  return parse_qubo_coo(buffer);
}

json weights_to_json(const Weights& w) {
  json out = json::array();
  for (Eigen::Index i = 0; i < w.size(); ++i) out.push_back(w(i));
  return out;
}

json bits_to_json(const BitVector& bits) {
  json out = json::array();
  for (Eigen::Index i = 0; i < bits.size(); ++i) out.push_back(static_cast<int>(bits(i)));
  return out;
}

BitVector bits_from_json(const json& j) {
  require(j.is_array() && !j.empty(), "bit vector JSON must be a nonempty array");
  BitVector bits(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_number_integer(), "bit vector entries must be integers");
    const int v = j[i].get<int>();
    require(v == 0 || v == 1, "bit vector entries must be 0 or 1");
    bits(static_cast<Eigen::Index>(i)) = static_cast<std::uint8_t>(v);
  }
  return bits;
}

json report_to_json(const SolveReport& report, bool include_timing) {
  json out;
  out["weights"] = weights_to_json(report.weights);
  out["error"] = report.error;
  if (include_timing) {
    out["formulate_time_ms"] = report.formulate_time_ms;
    out["solve_time_ms"] = report.solve_time_ms;
  }
  out["ground_state_hits"] = report.ground_state_hits;
  out["num_reads"] = report.num_reads;
  out["hamming_distance"] =
      report.hamming_distance ? json(*report.hamming_distance) : json(nullptr);
  out["bits"] = bits_to_json(report.bits);
  out["energy"] = report.energy;
  return out;
}

json truth_to_json(const GenSpec& spec, const GeneratedData& data) {
  json echo;
  echo["n"] = spec.n;
  echo["d_plus_1"] = spec.d_plus_1;
  echo["precision"] = weights_to_json(spec.precision.values());
  echo["noise_sigma"] = spec.noise_sigma;
  echo["feature_low"] = spec.feature_low;
  echo["feature_high"] = spec.feature_high;
  echo["seed"] = spec.seed;
  return json{{"weights", weights_to_json(data.weights)},
              {"bits", bits_to_json(data.bits)},
              {"generator", std::move(echo)}};
}

std::map<std::string, std::string> parse_key_value(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    require(eq != std::string::npos, "expected key=value on line " + std::to_string(line_no));
    const std::string key = trim(t.substr(0, eq));
    require(!key.empty(), "empty key on line " + std::to_string(line_no));
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_key_value_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_key_value(in);
}

void apply_solver_config(SolverConfig& cfg, const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) {
    if (key == "backend") {
      cfg.backend = backend_from_string(value);
    } else if (key == "num_reads") {
      cfg.num_reads = parse_unsigned(value, key);
    } else if (key == "sweeps_per_read") {
      cfg.sweeps_per_read = parse_unsigned(value, key);
    } else if (key == "beta_initial") {
      cfg.beta_initial = parse_double(value, key);
    } else if (key == "beta_final") {
      cfg.beta_final = parse_double(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_unsigned(value, key);
    } else if (key == "threads") {
      cfg.threads = static_cast<unsigned>(parse_unsigned(value, key));
    } else if (key == "fault_probability") {
      cfg.fault_probability = parse_double(value, key);
    } else {
      throw ContractViolation("unknown solver config key '" + key + "'");
    }
  }
  cfg.validate();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), "cannot open '" + path.string() + "' for writing");
    out << contents;
    out.flush();
    require(out.good(), "failed writing '" + path.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ContractViolation("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace qregress::io
