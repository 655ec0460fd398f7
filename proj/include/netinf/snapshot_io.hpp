#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "netinf/dynamics.hpp"
#include "netinf/io_util.hpp"

namespace netinf {

/// JSON envelope around a snapshot matrix, carrying the generating config.
struct SnapshotEnvelope {
  SnapshotSet snapshots;
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

/// Headerless CSV, n rows by M columns; column k is observation y_k.
inline void write_snapshots_csv(const SnapshotSet& s, std::ostream& out) {
  for (Index i = 0; i < s.dimension(); ++i) {
    for (Index k = 0; k < s.count(); ++k) {
      if (k) out << ',';
      out << format_double(s.observations(i, k));
    }
    out << '\n';
  }
}

inline SnapshotSet read_snapshots_csv(std::istream& in, const std::string& ctx = "<stream>") {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        double v = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
        if (!std::isfinite(v)) throw std::invalid_argument(cell);
        row.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(ctx + ":" + std::to_string(lineno) + ": invalid value '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(ctx + ":" + std::to_string(lineno) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty())
    throw ParseError(ctx + ":1: no data");
  SnapshotSet s;
  s.observations.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows[i].size(); ++k)
      s.observations(static_cast<Index>(i), static_cast<Index>(k)) = rows[i][k];
  return s;
}

inline void write_snapshots_json(const SnapshotEnvelope& env, std::ostream& out) {
  nlohmann::json data = nlohmann::json::array();
  for (Index i = 0; i < env.snapshots.dimension(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index k = 0; k < env.snapshots.count(); ++k) row.push_back(env.snapshots.observations(i, k));
    data.push_back(std::move(row));
  }
  nlohmann::json j{{"n", env.snapshots.dimension()},
                   {"M", env.snapshots.count()},
                   {"sigma", env.sigma},
                   {"seed", env.seed},
                   {"data", std::move(data)}};
  out << j.dump(2) << '\n';
}

inline SnapshotEnvelope read_snapshots_json(std::istream& in, const std::string& ctx = "<stream>") {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(ctx + ": " + e.what());
  }
  try {
    SnapshotEnvelope env;
    const Index n = j.at("n").get<Index>();
    const Index m = j.at("M").get<Index>();
    env.sigma = j.value("sigma", 1.0);
    env.seed = j.value("seed", std::uint64_t{0});
    const auto& data = j.at("data");
    if (static_cast<Index>(data.size()) != n)
      throw ParseError(ctx + ": data has wrong row count");
    env.snapshots.observations.resize(n, m);
    for (Index i = 0; i < n; ++i) {
      if (static_cast<Index>(data[i].size()) != m)
        throw ParseError(ctx + ": data has ragged rows");
      for (Index k = 0; k < m; ++k) env.snapshots.observations(i, k) = data[i][k].get<double>();
    }
    return env;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(ctx + ": " + e.what());
  }
}

inline void write_provenance_json(const SnapshotProvenance& p, std::ostream& out) {
  nlohmann::json inputs = nlohmann::json::array();
  for (Index i = 0; i < p.inputs.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index k = 0; k < p.inputs.cols(); ++k) row.push_back(p.inputs(i, k));
    inputs.push_back(std::move(row));
  }
  nlohmann::json j{{"inputs", std::move(inputs)}, {"durations", p.durations}, {"rates", p.rates}};
  out << j.dump(2) << '\n';
}

inline SnapshotSet read_snapshots(const std::filesystem::path& path) {
  auto in = open_input(path);
  if (path.extension() == ".json") return read_snapshots_json(in, path.string()).snapshots;
  return read_snapshots_csv(in, path.string());
}

}  // namespace netinf
