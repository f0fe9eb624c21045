// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dataval/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "dataval/errors.hpp"

namespace dataval {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << text;
  if (!out) throw InvalidInput("write failed: " + path);
}

json parse_json(const std::string& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::exception& e) {
    throw InvalidInput("invalid JSON in " + path + ": " + e.what());
  }
}

double parse_double(std::string_view text, const std::string& path) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InvalidInput("invalid number '" + std::string(text) + "' in " + path);
  }
  return v;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) throw NumericalFailure("refusing to serialize non-finite value");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Dataset read_dataset_csv(const std::string& path) {
  const std::string text = slurp(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty dataset CSV: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header.back() != "label") {
    throw InvalidInput("dataset CSV needs columns f0..f{d-1},label: " + path);
  }
  const std::size_t d = header.size() - 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (header[j] != "f" + std::to_string(j)) {
      throw InvalidInput("dataset CSV: unexpected column '" + std::string(header[j]) +
                         "' in " + path);
    }
  }
  std::vector<double> features;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != d + 1) throw InvalidInput("dataset CSV: ragged row in " + path);
    for (std::size_t j = 0; j < d; ++j) features.push_back(parse_double(cells[j], path));
    const double y = parse_double(cells[d], path);
    if (y != std::floor(y)) throw InvalidInput("dataset CSV: non-integer label in " + path);
    labels.push_back(static_cast<int>(y));
  }
  return Dataset(d, std::move(features), std::move(labels));
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
  std::string text;
  for (std::size_t j = 0; j < data.dims(); ++j) {
    text += "f" + std::to_string(j) + ",";
  }
  text += "label\n";
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto row = data.row(i);
    for (double v : row) {
      text += format_double(v);
      text += ',';
    }
    text += std::to_string(data.label(i));
    text += '\n';
  }
  spill(path, text);
}

ValueAssignment read_values_json(const std::string& path) {
  const json j = parse_json(path);
  if (!j.is_object() || !j.contains("method") || !j.contains("values")) {
    throw InvalidInput("values JSON needs {\"method\", \"values\"}: " + path);
  }
  ValueAssignment out;
  out.method_id = j.at("method").get<std::string>();
  out.values = j.at("values").get<std::vector<double>>();
  for (double v : out.values) {
    if (!std::isfinite(v)) throw InvalidInput("values JSON: non-finite value in " + path);
  }
  return out;
}

void write_values_json(const ValueAssignment& values, const std::string& path) {
  json j;
  j["method"] = values.method_id;
  j["values"] = values.values;
  spill(path, j.dump(2) + "\n");
}

SelectionCurve read_curve_csv(const std::string& path) {
  const std::string text = slurp(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty curve CSV: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "k,utility") throw InvalidInput("curve CSV needs header k,utility: " + path);
  SelectionCurve curve;
  double sum = 0.0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 2) throw InvalidInput("curve CSV: ragged row in " + path);
    const double k = parse_double(cells[0], path);
    const double u = parse_double(cells[1], path);
    curve.points.emplace_back(static_cast<std::size_t>(k), u);
    sum += u;
  }
  if (!curve.points.empty()) sum /= static_cast<double>(curve.points.size());
  curve.objective = sum;
  return curve;
}

void write_curve_csv(const SelectionCurve& curve, const std::string& path) {
  std::string text = "k,utility\n";
  for (const auto& [k, u] : curve.points) {
    text += std::to_string(k);
    text += ',';
    text += format_double(u);
    text += '\n';
  }
  spill(path, text);
}

BipartiteGraph read_graph_json(const std::string& path) {
  const json j = parse_json(path);
  BipartiteGraph g;
  try {
    g.n_train = j.at("n_train").get<std::size_t>();
    g.n_valid = j.at("n_valid").get<std::size_t>();
    g.threshold = j.at("threshold").get<double>();
    g.capacities = j.at("capacities").get<std::vector<double>>();
    for (const json& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) {
        throw InvalidInput("graph JSON: edges must be [i, j, w] triples");
      }
      g.edges.push_back(
          {e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<double>()});
    }
  } catch (const json::exception& e) {
    throw InvalidInput("invalid graph JSON in " + path + ": " + e.what());
  }
  g.validate();
  return g;
}

void write_graph_json(const BipartiteGraph& graph, const std::string& path) {
  json j;
  j["n_train"] = graph.n_train;
  j["n_valid"] = graph.n_valid;
  j["threshold"] = graph.threshold;
  json edges = json::array();
  for (const BipartiteEdge& e : graph.edges) {
    edges.push_back(json::array({e.train, e.valid, e.weight}));
  }
  j["edges"] = std::move(edges);
  j["capacities"] = graph.capacities;
  spill(path, j.dump(2) + "\n");
}

void write_dp_json(const DpSolution& solution, const std::string& path) {
  json j;
  j["perm"] = solution.optimal_perm;
  j["optimal_values"] = solution.optimal_values.values;
  j["objective"] = solution.objective;
  spill(path, j.dump(2) + "\n");
}

void write_surrogate_json(const LinearSurrogate& surrogate, const std::string& path) {
  json j;
  j["theta"] = surrogate.theta;
  j["kernel"] = surrogate.kernel_id;
  j["residual"] = surrogate.residual;
  spill(path, j.dump(2) + "\n");
}

void write_threshold_sweep_csv(const ThresholdSweepReport& report, const std::string& path) {
  std::string text = "tau,error\n";
  for (std::size_t t = 0; t < report.thresholds.size(); ++t) {
    text += format_double(report.thresholds[t]);
    text += ',';
    text += format_double(report.errors[t]);
    text += '\n';
  }
  spill(path, text);
}

}  // namespace dataval
