// Copyright 2026 The qgame Authors
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

#pragma once

// JSON files read and written by the command-line tool.
//
// Complex numbers are [re, im] pairs and matrices are row-major nested
// arrays of them. Every document carries "format_version"; unknown keys are
// rejected so that typos surface as errors instead of silently ignored
// settings. Doubles are written in shortest round-trip form, which keeps
// output byte-for-byte reproducible.

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qgame/channels.hpp"
#include "qgame/constructors.hpp"
#include "qgame/game_core.hpp"

namespace qgame::cli {

using json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

[[noreturn]] inline void parse_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

inline void reject_unknown_keys(const json& obj, const std::string& where,
                                std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.contains(key)) parse_error(where, "unknown field '" + key + "'");
  }
}

inline const json& require_key(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) parse_error(where, std::string("missing field '") + key + "'");
  return obj.at(key);
}

inline int to_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) parse_error(where, "expected an integer");
  return v.get<int>();
}

inline double to_double(const json& v, const std::string& where) {
  if (!v.is_number()) parse_error(where, "expected a number");
  return v.get<double>();
}

inline Complex to_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2) parse_error(where, "expected a [re, im] pair");
  return {to_double(v[0], where + "[0]"), to_double(v[1], where + "[1]")};
}

inline ComplexMatrix to_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) parse_error(where, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  if (!v[0].is_array() || v[0].empty()) parse_error(where + "[0]", "expected a non-empty row");
  const auto cols = static_cast<Eigen::Index>(v[0].size());
  check_dimension(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), where.c_str());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::string row_at = where + "[" + std::to_string(i) + "]";
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      parse_error(row_at, "expected a row of " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = to_complex(row[static_cast<std::size_t>(j)], row_at + "[" + std::to_string(j) + "]");
  }
  return m;
}

inline std::vector<ComplexMatrix> to_matrix_list(const json& v, const std::string& where) {
  if (!v.is_array()) parse_error(where, "expected an array of matrices");
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(to_matrix(v[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

inline json from_matrix(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json from_vector(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

inline void check_version(const json& doc, const std::string& where) {
  const int version = to_int(require_key(doc, where, "format_version"), where + ".format_version");
  if (version != kFormatVersion) {
    parse_error(where + ".format_version",
                "unsupported version " + std::to_string(version) + " (expected " +
                    std::to_string(kFormatVersion) + ")");
  }
}

/// Writes `text` to `path` through a temporary file in the same directory
/// followed by a rename, so readers never observe a partial file.
inline void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error(ErrorKind::InvalidArgument, "failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::InvalidArgument, "cannot rename onto " + path);
  }
}

inline std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Game files
// ---------------------------------------------------------------------------

inline StaticQuantumGame game_from_json(const json& doc, const std::string& where = "$") {
  if (!doc.is_object()) parse_error(where, "a game file must be a JSON object");
  reject_unknown_keys(doc, where,
                      {"format_version", "name", "description", "players", "qubits_per_player",
                       "rho", "payoff_ops", "povm", "zero_sum", "classical_moves"});
  check_version(doc, where);
  const int players = to_int(require_key(doc, where, "players"), where + ".players");
  const int q = to_int(require_key(doc, where, "qubits_per_player"), where + ".qubits_per_player");
  if (players < 2) parse_error(where + ".players", "at least two players are required");
  if (q < 1 || q > 8) parse_error(where + ".qubits_per_player", "must be between 1 and 8");
  const int n = 1 << q;

  GameInfo info;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) parse_error(where + ".name", "expected a string");
    info.name = doc["name"].get<std::string>();
  }
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) parse_error(where + ".description", "expected a string");
    info.description = doc["description"].get<std::string>();
  }
  if (doc.contains("classical_moves")) {
    const json& mv = doc["classical_moves"];
    if (!mv.is_array()) parse_error(where + ".classical_moves", "expected an array");
    for (std::size_t k = 0; k < mv.size(); ++k)
      info.classical_moves.push_back(
          to_int(mv[k], where + ".classical_moves[" + std::to_string(k) + "]"));
  }
  bool zero_sum = false;
  if (doc.contains("zero_sum")) {
    if (!doc["zero_sum"].is_boolean()) parse_error(where + ".zero_sum", "expected true or false");
    zero_sum = doc["zero_sum"].get<bool>();
  }

  ComplexMatrix rho = to_matrix(require_key(doc, where, "rho"), where + ".rho");
  const bool has_ops = doc.contains("payoff_ops");
  const bool has_povm = doc.contains("povm");
  if (has_ops == has_povm) {
    parse_error(where, "exactly one of 'payoff_ops' and 'povm' must be given");
  }
  if (has_ops) {
    auto ops = to_matrix_list(doc["payoff_ops"], where + ".payoff_ops");
    return StaticQuantumGame(players, n, std::move(rho), std::move(ops), zero_sum, std::move(info));
  }
  const json& povm = doc["povm"];
  const std::string at = where + ".povm";
  if (!povm.is_object()) parse_error(at, "expected an object");
  reject_unknown_keys(povm, at, {"operators", "payoffs"});
  POVMPayoffScheme scheme;
  scheme.measurement_ops = to_matrix_list(require_key(povm, at, "operators"), at + ".operators");
  const json& table = require_key(povm, at, "payoffs");
  if (!table.is_array()) parse_error(at + ".payoffs", "expected one array per player");
  for (std::size_t k = 0; k < table.size(); ++k) {
    const std::string row_at = at + ".payoffs[" + std::to_string(k) + "]";
    if (!table[k].is_array()) parse_error(row_at, "expected an array of payoffs");
    std::vector<double> row;
    for (std::size_t m = 0; m < table[k].size(); ++m)
      row.push_back(to_double(table[k][m], row_at + "[" + std::to_string(m) + "]"));
    scheme.payoffs.push_back(std::move(row));
  }
  if (static_cast<int>(scheme.payoffs.size()) != players) {
    parse_error(at + ".payoffs", "expected one payoff row per player");
  }
  return StaticQuantumGame::from_povm(players, n, std::move(rho), scheme, zero_sum,
                                      std::move(info));
}

inline StaticQuantumGame load_game(const std::string& path) {
  return game_from_json(read_json_file(path), path);
}

inline json game_to_json(const StaticQuantumGame& game) {
  const auto q = game.qubits_per_player();
  if (!q) throw Error(ErrorKind::InvalidArgument, "game files need a power-of-two dimension");
  json doc;
  doc["format_version"] = kFormatVersion;
  if (!game.info().name.empty()) doc["name"] = game.info().name;
  if (!game.info().description.empty()) doc["description"] = game.info().description;
  doc["players"] = game.players();
  doc["qubits_per_player"] = *q;
  doc["zero_sum"] = game.zero_sum();
  if (!game.info().classical_moves.empty()) doc["classical_moves"] = game.info().classical_moves;
  doc["rho"] = from_matrix(game.rho());
  json ops = json::array();
  for (const auto& r : game.payoff_ops()) ops.push_back(from_matrix(r));
  doc["payoff_ops"] = std::move(ops);
  return doc;
}

// ---------------------------------------------------------------------------
// Strategy and result files
// ---------------------------------------------------------------------------

/// One strategy entry: {"chi": M}, {"kraus": [M, ...]} or, for embedded
/// classical games, {"mixed": [p_0, p_1, ...]} (a mixture of cyclic shifts).
inline ChiMatrix strategy_from_json(const json& entry, const BasisPtr& basis,
                                    const std::string& where);

inline StrategyProfile strategies_from_json(const json& doc, const BasisPtr& basis,
                                            const std::string& where = "$") {
  if (!doc.is_object()) parse_error(where, "a strategy file must be a JSON object");
  check_version(doc, where);
  if (doc.contains("kind")) {
    // A result file written by `solve`; only its strategies are read back.
    reject_unknown_keys(doc, where,
                        {"format_version", "kind", "game", "tol", "max_iter", "seed", "v_lower",
                         "v_upper", "gap", "residual", "payoffs", "iterations", "converged",
                         "strategies"});
  } else {
    reject_unknown_keys(doc, where, {"format_version", "basis", "strategies"});
  }
  if (doc.contains("basis")) {
    if (!doc["basis"].is_string() || doc["basis"].get<std::string>() != "matrix_units") {
      throw Error(ErrorKind::BasisMismatch,
                  where + ".basis: only the matrix-unit basis ('matrix_units') is supported");
    }
  }
  const json& list = require_key(doc, where, "strategies");
  if (!list.is_array()) parse_error(where + ".strategies", "expected an array");
  StrategyProfile out;
  for (std::size_t k = 0; k < list.size(); ++k)
    out.push_back(strategy_from_json(list[k], basis, where + ".strategies[" + std::to_string(k) + "]"));
  return out;
}

inline ChiMatrix strategy_from_json(const json& entry, const BasisPtr& basis,
                                    const std::string& where) {
  if (!entry.is_object() || entry.size() != 1) {
    parse_error(where, "expected an object with exactly one of 'chi', 'kraus', 'mixed'");
  }
  if (entry.contains("chi")) {
    const ComplexMatrix chi = to_matrix(entry["chi"], where + ".chi");
    if (chi.rows() != basis->size() || chi.cols() != basis->size()) {
      throw Error(ErrorKind::DimensionMismatch,
                  where + ".chi: expected " + std::to_string(basis->size()) + "x" +
                      std::to_string(basis->size()));
    }
    return ChiMatrix(basis, chi);
  }
  if (entry.contains("kraus")) {
    auto ops = to_matrix_list(entry["kraus"], where + ".kraus");
    return kraus_to_chi(KrausChannel(basis->dim(), std::move(ops)), basis);
  }
  if (entry.contains("mixed")) {
    const json& p = entry["mixed"];
    if (!p.is_array()) parse_error(where + ".mixed", "expected an array of probabilities");
    std::vector<double> probs;
    for (std::size_t k = 0; k < p.size(); ++k)
      probs.push_back(to_double(p[k], where + ".mixed[" + std::to_string(k) + "]"));
    return mixed_to_chi(std::span<const double>(probs), basis);
  }
  parse_error(where, "expected one of 'chi', 'kraus', 'mixed'");
}

inline StrategyProfile load_strategies(const std::string& path, const BasisPtr& basis) {
  return strategies_from_json(read_json_file(path), basis, path);
}

inline json strategies_to_json(const StrategyProfile& profile) {
  json list = json::array();
  for (const auto& chi : profile) list.push_back(json{{"chi", from_matrix(chi.matrix())}});
  return list;
}

}  // namespace qgame::cli
