// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#include "metriplectic/trajectory_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace metriplectic {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  if (traj.records.empty()) {
    throw ConfigError("write_trajectory_csv: empty trajectory");
  }
  const Index n = traj.records.front().state.size();
  out << "step,t";
  for (Index i = 0; i < n; ++i) {
    out << ",x_" << (i + 1);
  }
  out << ",H,S,dS,solver_iters,residual\n";
  for (std::size_t k = 0; k < traj.records.size(); ++k) {
    const StepRecord& r = traj.records[k];
    out << k << ',' << format_full(r.t);
    for (Index i = 0; i < n; ++i) {
      out << ',' << format_full(r.state[i]);
    }
    out << ',' << format_full(r.energy) << ',' << format_full(r.entropy)
        << ',' << format_full(r.delta_entropy) << ',' << r.solver_iters
        << ',' << format_full(r.residual) << '\n';
  }
  if (traj.truncated) {
    out << "# truncated: " << traj.failure << '\n';
  }
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("write_trajectory_csv: cannot open " + path);
  }
  write_trajectory_csv(traj, out);
  out.flush();
  if (!out) {
    throw ConfigError("write_trajectory_csv: write failed for " + path);
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

double parse_double(const std::string& field, const std::string& origin,
                    std::size_t line_no) {
  std::size_t consumed = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &consumed);
  } catch (const std::exception&) {
    throw ConfigError(origin + ":" + std::to_string(line_no) +
                      ": not a number: '" + field + "'");
  }
  if (consumed != field.size()) {
    throw ConfigError(origin + ":" + std::to_string(line_no) +
                      ": trailing characters in number: '" + field + "'");
  }
  return v;
}

long parse_long(const std::string& field, const std::string& origin,
                std::size_t line_no) {
  std::size_t consumed = 0;
  long v = 0;
  try {
    v = std::stol(field, &consumed);
  } catch (const std::exception&) {
    throw ConfigError(origin + ":" + std::to_string(line_no) +
                      ": not an integer: '" + field + "'");
  }
  if (consumed != field.size()) {
    throw ConfigError(origin + ":" + std::to_string(line_no) +
                      ": trailing characters in integer: '" + field + "'");
  }
  return v;
}

}  // namespace

Trajectory read_trajectory_csv(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ConfigError(origin + ": empty trajectory file");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 8 || header[0] != "step" || header[1] != "t") {
    throw ConfigError(origin + ":1: malformed header");
  }
  const Index n = static_cast<Index>(header.size()) - 7;
  for (Index i = 0; i < n; ++i) {
    const std::string expected = "x_" + std::to_string(i + 1);
    if (header[static_cast<std::size_t>(2 + i)] != expected) {
      throw ConfigError(origin + ":1: expected column '" + expected +
                        "', found '" +
                        header[static_cast<std::size_t>(2 + i)] + "'");
    }
  }
  const std::size_t hcol = static_cast<std::size_t>(2 + n);
  if (header[hcol] != "H" || header[hcol + 1] != "S" ||
      header[hcol + 2] != "dS" || header[hcol + 3] != "solver_iters" ||
      header[hcol + 4] != "residual") {
    throw ConfigError(origin + ":1: malformed header tail");
  }

  Trajectory traj;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (line.rfind("# truncated: ", 0) == 0) {
      traj.truncated = true;
      traj.failure = line.substr(13);
      continue;
    }
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": expected " + std::to_string(header.size()) +
                        " fields, found " + std::to_string(fields.size()));
    }
    const long step = parse_long(fields[0], origin, line_no);
    if (step != static_cast<long>(traj.records.size())) {
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": step index " + std::to_string(step) +
                        " out of order");
    }
    StepRecord r;
    r.t = parse_double(fields[1], origin, line_no);
    r.state = Vec(n);
    for (Index i = 0; i < n; ++i) {
      r.state[i] =
          parse_double(fields[static_cast<std::size_t>(2 + i)], origin,
                       line_no);
    }
    r.energy = parse_double(fields[hcol], origin, line_no);
    r.entropy = parse_double(fields[hcol + 1], origin, line_no);
    r.delta_entropy = parse_double(fields[hcol + 2], origin, line_no);
    r.solver_iters =
        static_cast<int>(parse_long(fields[hcol + 3], origin, line_no));
    r.residual = parse_double(fields[hcol + 4], origin, line_no);
    traj.records.push_back(std::move(r));
  }
  if (traj.records.empty()) {
    throw ConfigError(origin + ": no data rows");
  }
  if (traj.records.size() > 1) {
    traj.config.step_h = traj.records[1].t - traj.records[0].t;
  }
  return traj;
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("read_trajectory_csv: cannot open " + path);
  }
  return read_trajectory_csv(in, path);
}

}  // namespace metriplectic
