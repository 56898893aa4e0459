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

// The subcommands of the qgame tool. Each returns a Report holding a JSON
// document (also written by --out), a human-readable rendering and the
// process exit status; argument parsing lives in tools/qgame.cpp.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qgame/cli/game_file.hpp"
#include "qgame/constructors.hpp"
#include "qgame/game_core.hpp"
#include "qgame/solvers.hpp"

namespace qgame::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNonConvergence = 3,
  kExitVerification = 4,
};

inline int exit_code_for(ErrorKind kind) {
  return kind == ErrorKind::VerificationFailure ? kExitVerification : kExitValidation;
}

struct Report {
  json data;
  std::string text;
  int exit_code = kExitOk;
};

namespace detail {

inline std::string num(double v, int precision = 10) {
  if (v == 0.0) v = 0.0;  // print -0 as 0
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

inline std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

inline json with_version(json body) {
  json doc;
  doc["format_version"] = kFormatVersion;
  for (auto& [k, v] : body.items()) doc[k] = v;
  return doc;
}

inline std::uint64_t draw_seed(std::mt19937_64& rng) { return rng(); }

/// Random channel with a random number of Kraus operators.
inline KrausChannel random_channel(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, n * n);
  const int k = count(rng);
  return random_cptp(n, k, draw_seed(rng));
}

inline std::vector<double> random_simplex_point(int size, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(size);
  double total = 0.0;
  for (double& v : p) total += (v = expo(rng));
  for (double& v : p) v /= total;
  return p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// describe
// ---------------------------------------------------------------------------

inline Report cmd_describe(const std::string& path) {
  const StaticQuantumGame game = load_game(path);
  const GameValidation v = game.validation();
  const BasisPtr basis = matrix_unit_basis(game.local_dim());
  const int dimension = basis->strategy_set_dimension();
  const int s = basis->size();
  const double tensor_side = std::pow(static_cast<double>(s), game.players());

  Report r;
  json payoff_herm = json::array();
  for (double h : v.payoff_hermiticity) payoff_herm.push_back(h);
  r.data = detail::with_version({
      {"command", "describe"},
      {"name", game.info().name},
      {"players", game.players()},
      {"n", game.local_dim()},
      {"qubits_per_player", game.qubits_per_player().value_or(0)},
      {"state_dimension", game.rho().rows()},
      {"zero_sum", game.zero_sum()},
      {"strategy_set_dimension", dimension},
      {"payoff_tensor_side", static_cast<std::uint64_t>(tensor_side)},
      {"max_dimension", max_dimension()},
      {"classical_moves", game.info().classical_moves},
      {"padded", std::any_of(game.info().classical_moves.begin(), game.info().classical_moves.end(),
                             [&](int m) { return m < game.local_dim(); })},
      {"validation",
       {{"trace_residual", v.trace_residual},
        {"rho_min_eigenvalue", v.rho_min_eigenvalue},
        {"rho_hermiticity", v.rho_hermiticity},
        {"payoff_hermiticity", payoff_herm},
        {"zero_sum_residual", v.zero_sum_residual}}},
  });

  std::ostringstream os;
  os << "game: " << (game.info().name.empty() ? path : game.info().name) << "\n";
  if (!game.info().description.empty()) os << "  " << game.info().description << "\n";
  os << "players=" << game.players() << ", n=" << game.local_dim();
  if (auto q = game.qubits_per_player()) os << " (q=" << *q << ")";
  os << ", strategy-set dimension " << dimension << "\n";
  os << "state dimension " << game.rho().rows() << ", payoff tensor " << tensor_side << " x "
     << tensor_side << " per player\n";
  const auto& moves = game.info().classical_moves;
  if (!moves.empty()) {
    os << "classical moves per player:";
    bool padded = false;
    for (int m : moves) {
      os << " " << m;
      padded = padded || m < game.local_dim();
    }
    if (padded) {
      os << " (padded to " << game.local_dim()
         << " levels with dominated dummy moves paying " << detail::num(kPaddingPenalty, 6)
         << " below the lowest payoff)";
    }
    os << "\n";
  }
  os << "zero-sum: " << (game.zero_sum() ? "yes" : "no");
  if (game.players() == 2) os << " (||R^I + R^II||_F = " << detail::sci(v.zero_sum_residual) << ")";
  os << "\n";
  os << "validation: |tr(rho) - 1| = " << detail::sci(v.trace_residual)
     << ", min eig(rho) = " << detail::num(v.rho_min_eigenvalue, 6)
     << ", ||rho - rho^dagger||_F = " << detail::sci(v.rho_hermiticity) << "\n";
  r.text = os.str();
  return r;
}

// ---------------------------------------------------------------------------
// payoff
// ---------------------------------------------------------------------------

/// Tolerance on the disagreement between the two evaluation routes.
inline constexpr double kDualPathTolerance = 1e-8;

inline Report cmd_payoff(const std::string& game_path,
                         const std::vector<std::string>& strategy_paths) {
  const StaticQuantumGame game = load_game(game_path);
  const BasisPtr basis = matrix_unit_basis(game.local_dim());
  StrategyProfile profile;
  for (const auto& p : strategy_paths) {
    StrategyProfile part = load_strategies(p, basis);
    profile.insert(profile.end(), part.begin(), part.end());
  }
  if (static_cast<int>(profile.size()) != game.players()) {
    throw Error(ErrorKind::DimensionMismatch,
                "the game has " + std::to_string(game.players()) + " players but " +
                    std::to_string(profile.size()) + " strategies were given");
  }
  const PayoffTensor tensor = build_payoff_tensor(game, basis);
  const std::vector<Complex> raw = contract_payoff(tensor, profile);
  const std::vector<double> via_chi = evaluate_payoff_chi(tensor, profile);
  std::vector<KrausChannel> channels;
  for (const auto& chi : profile) channels.push_back(chi_to_kraus(chi));
  const std::vector<double> direct = evaluate_payoff_direct(game, channels);

  Report r;
  json players = json::array();
  double worst = 0.0;
  std::ostringstream os;
  os << "player   chi-contraction      direct (Kraus)       |difference|\n";
  for (int k = 0; k < game.players(); ++k) {
    const double diff = std::abs(via_chi[k] - direct[k]);
    worst = std::max(worst, diff);
    players.push_back({{"chi", via_chi[k]},
                       {"direct", direct[k]},
                       {"difference", diff},
                       {"imaginary_residue", std::abs(raw[k].imag())}});
    os << std::left << std::setw(9) << k << std::setw(21) << detail::num(via_chi[k], 15)
       << std::setw(21) << detail::num(direct[k], 15) << detail::sci(diff) << "\n";
  }
  const bool agree = worst <= kDualPathTolerance;
  os << (agree ? "evaluation paths agree" : "evaluation paths DISAGREE") << " (max difference "
     << detail::sci(worst) << ")\n";
  r.data = detail::with_version({{"command", "payoff"},
                                 {"game", game.info().name},
                                 {"payoffs", players},
                                 {"max_difference", worst},
                                 {"agree", agree}});
  r.text = os.str();
  r.exit_code = agree ? kExitOk : kExitVerification;
  return r;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveOptions {
  std::string mode = "zero-sum";  // or "nash"
  std::optional<double> tol;      // default 1e-3 (zero-sum) / 1e-4 (nash)
  int max_iter = 100000;
  std::uint64_t seed = 0;
};

inline Report cmd_solve(const std::string& path, const SolveOptions& opts) {
  const StaticQuantumGame game = load_game(path);
  const BasisPtr basis = matrix_unit_basis(game.local_dim());
  const PayoffTensor tensor = build_payoff_tensor(game, basis);
  Report r;
  std::ostringstream os;
  if (opts.mode == "zero-sum") {
    if (!game.zero_sum()) {
      throw Error(ErrorKind::ValidationError,
                  "zero-sum solving needs a game with \"zero_sum\": true");
    }
    SaddleOptions so;
    so.tol = opts.tol.value_or(1e-3);
    so.max_iter = opts.max_iter;
    const SaddleResult res = solve_zero_sum(tensor, so);
    r.data = detail::with_version({{"kind", "saddle"},
                                   {"game", game.info().name},
                                   {"tol", so.tol},
                                   {"max_iter", so.max_iter},
                                   {"seed", opts.seed},
                                   {"v_lower", res.v_lower},
                                   {"v_upper", res.v_upper},
                                   {"gap", res.gap()},
                                   {"iterations", res.iterations},
                                   {"converged", res.converged},
                                   {"strategies", strategies_to_json(res.strategies)}});
    os << "zero-sum saddle point\n"
       << "  v_lower    = " << detail::num(res.v_lower, 12) << "\n"
       << "  v_upper    = " << detail::num(res.v_upper, 12) << "\n"
       << "  gap        = " << detail::sci(res.gap()) << " (tol " << detail::sci(so.tol) << ")\n"
       << "  iterations = " << res.iterations << "\n"
       << "  " << (res.converged ? "converged" : "NOT converged") << "\n";
    r.exit_code = res.converged ? kExitOk : kExitNonConvergence;
  } else if (opts.mode == "nash") {
    NashOptions no;
    no.tol = opts.tol.value_or(1e-4);
    no.max_iter = opts.max_iter;
    if (opts.seed != 0) {
      // A non-zero seed starts every player halfway between the
      // depolarizing channel and a random channel.
      std::mt19937_64 rng(opts.seed);
      const ChiMatrix dep = depolarizing_chi(basis);
      StrategyProfile init;
      for (int k = 0; k < game.players(); ++k)
        init.push_back(mix(0.5, dep, kraus_to_chi(detail::random_channel(basis->dim(), rng), basis)));
      no.init = std::move(init);
    }
    const NashResult res = nash_iterate(tensor, no);
    json payoffs = json::array();
    for (double p : res.payoffs) payoffs.push_back(p);
    r.data = detail::with_version({{"kind", "nash"},
                                   {"game", game.info().name},
                                   {"tol", no.tol},
                                   {"max_iter", no.max_iter},
                                   {"seed", opts.seed},
                                   {"residual", res.residual},
                                   {"payoffs", payoffs},
                                   {"iterations", res.iterations},
                                   {"converged", res.converged},
                                   {"strategies", strategies_to_json(res.profile)}});
    os << "Nash search\n  payoffs    =";
    for (double p : res.payoffs) os << " " << detail::num(p, 12);
    os << "\n  residual   = " << detail::sci(res.residual) << " (tol " << detail::sci(no.tol)
       << ")\n  iterations = " << res.iterations << "\n  "
       << (res.converged ? "converged" : "NOT converged") << "\n";
    r.exit_code = res.converged ? kExitOk : kExitNonConvergence;
  } else {
    throw Error(ErrorKind::InvalidArgument, "mode must be 'zero-sum' or 'nash'");
  }
  r.text = os.str();
  return r;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::optional<int> n;
  std::optional<std::string> path;
  std::uint64_t seed = 1;
  std::optional<int> samples;
};

namespace detail {

struct PropertyCheck {
  std::string name;
  double worst = 0.0;
  double threshold = 0.0;
  bool passed = true;
  std::string note;
};

inline Report finish_verify(const std::string& what, const std::vector<PropertyCheck>& checks,
                            json extra, std::optional<json> counterexample) {
  Report r;
  json list = json::array();
  bool all = true;
  std::ostringstream os;
  os << "verify " << what << "\n";
  for (const auto& c : checks) {
    all = all && c.passed;
    list.push_back({{"property", c.name},
                    {"passed", c.passed},
                    {"worst", c.worst},
                    {"threshold", c.threshold},
                    {"note", c.note}});
    os << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name << ": worst " << sci(c.worst)
       << " (threshold " << sci(c.threshold) << ")";
    if (!c.note.empty()) os << "; " << c.note;
    os << "\n";
  }
  json body = {{"command", "verify"}, {"what", what}, {"passed", all}, {"properties", list}};
  for (auto& [k, v] : extra.items()) body[k] = v;
  if (!all && counterexample) {
    body["counterexample"] = *counterexample;
    os << "  counterexample:\n" << counterexample->dump(2) << "\n";
  }
  r.data = with_version(body);
  r.text = os.str();
  r.exit_code = all ? kExitOk : kExitVerification;
  return r;
}

/// Exhaustive check of the diagonal payoff-tensor structure.
inline Report verify_theorem3(const VerifyOptions& opts) {
  const StaticQuantumGame game = opts.path ? load_game(*opts.path) : diagonal_game(opts.n.value_or(2));
  if (game.players() != 2) {
    throw Error(ErrorKind::InvalidArgument, "theorem3 verification needs a two-player game");
  }
  const int n = game.local_dim();
  const int s = n * n;
  const double expected = 1.0 / (static_cast<double>(n) * n);
  const BasisPtr basis = matrix_unit_basis(n);
  const PayoffTensor tensor = build_payoff_tensor(game, basis);

  std::vector<PropertyCheck> checks;
  std::optional<json> counterexample;
  for (int k = 0; k < 2; ++k) {
    const ComplexMatrix& a = tensor.matrix(k);
    const ComplexMatrix closed = matrix_unit_payoff_coefficients(game, k);
    double worst = 0.0;
    std::size_t entries = 0, on_diagonal = 0;
    double diag_min = std::numeric_limits<double>::infinity();
    double diag_max = -std::numeric_limits<double>::infinity();
    // a((alpha, gamma), (beta, delta)) pairs chi_{alpha beta} with xi_{gamma delta}.
    for (int alpha = 0; alpha < s; ++alpha)
      for (int gamma = 0; gamma < s; ++gamma)
        for (int beta = 0; beta < s; ++beta)
          for (int delta = 0; delta < s; ++delta) {
            ++entries;
            const Complex value = a(alpha * s + gamma, beta * s + delta);
            const bool diag = alpha == gamma && beta == delta;
            const double want = diag ? expected : 0.0;
            const double err = std::abs(value - want);
            if (diag) {
              ++on_diagonal;
              diag_min = std::min(diag_min, value.real());
              diag_max = std::max(diag_max, value.real());
            }
            if (err > worst) {
              worst = err;
              if (err > 1e-12 && !counterexample) {
                counterexample = json{{"player", k},
                                      {"alpha", alpha},
                                      {"beta", beta},
                                      {"gamma", gamma},
                                      {"delta", delta},
                                      {"value", {value.real(), value.imag()}},
                                      {"expected", want}};
              }
            }
          }
    checks.push_back({"player " + std::to_string(k) + " tensor equals delta structure / n^2", worst,
                      1e-12, worst <= 1e-12,
                      std::to_string(entries) + " entries checked, " + std::to_string(on_diagonal) +
                          " diagonal in [" + num(diag_min) + ", " + num(diag_max) + "]"});
    const double route = (closed - a).cwiseAbs().maxCoeff();
    checks.push_back({"player " + std::to_string(k) + " closed form matches generic contraction",
                      route, 1e-12, route <= 1e-12, ""});
  }
  return finish_verify("theorem3", checks, {{"n", n}, {"expected_diagonal", expected}},
                       counterexample);
}

inline Report verify_reality(const VerifyOptions& opts) {
  const int samples = opts.samples.value_or(200);
  std::mt19937_64 rng(opts.seed);
  std::optional<StaticQuantumGame> fixed;
  if (opts.path) fixed = load_game(*opts.path);
  const int n = fixed ? fixed->local_dim() : opts.n.value_or(2);

  double worst_diff = 0.0, worst_imag = 0.0;
  std::optional<json> counterexample;
  for (int t = 0; t < samples; ++t) {
    const StaticQuantumGame game = fixed ? *fixed : random_game(2, n, draw_seed(rng));
    const BasisPtr basis = matrix_unit_basis(game.local_dim());
    const PayoffTensor tensor = build_payoff_tensor(game, basis);
    std::vector<KrausChannel> channels;
    StrategyProfile profile;
    for (int k = 0; k < game.players(); ++k) {
      channels.push_back(random_channel(game.local_dim(), rng));
      profile.push_back(kraus_to_chi(channels.back(), basis));
    }
    const std::vector<Complex> raw = contract_payoff(tensor, profile);
    const std::vector<double> direct = evaluate_payoff_direct(game, channels);
    for (int k = 0; k < game.players(); ++k) {
      const double diff = std::abs(raw[k].real() - direct[k]);
      const double imag = std::abs(raw[k].imag());
      if ((diff > kDualPathTolerance || imag > kRealityTolerance) && !counterexample) {
        counterexample = json{{"sample", t}, {"player", k}, {"chi_payoff", {raw[k].real(), raw[k].imag()}},
                              {"direct_payoff", direct[k]}, {"strategies", strategies_to_json(profile)}};
      }
      worst_diff = std::max(worst_diff, diff);
      worst_imag = std::max(worst_imag, imag);
    }
  }
  std::vector<PropertyCheck> checks{
      {"chi contraction equals direct evaluation", worst_diff, kDualPathTolerance,
       worst_diff <= kDualPathTolerance, std::to_string(samples) + " samples at n=" + std::to_string(n)},
      {"payoff contraction is real", worst_imag, kRealityTolerance, worst_imag <= kRealityTolerance, ""}};
  return finish_verify("reality", checks, {{"n", n}, {"samples", samples}, {"seed", opts.seed}},
                       counterexample);
}

inline Report verify_embedding(const VerifyOptions& opts) {
  const int samples = opts.samples.value_or(100);
  std::mt19937_64 rng(opts.seed);
  std::optional<ClassicalGame> fixed;
  std::optional<StaticQuantumGame> fixed_game;
  if (opts.path) {
    fixed_game = load_game(*opts.path);
    fixed = extract_classical_game(*fixed_game);
  }
  std::uniform_real_distribution<double> payoff(-10.0, 10.0);

  double worst = 0.0;
  bool roundtrip = true;
  std::optional<json> counterexample;
  for (int t = 0; t < samples; ++t) {
    ClassicalGame classical;
    if (fixed) {
      classical = *fixed;
    } else {
      RealMatrix r1(2, 2), r2(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          r1(i, j) = payoff(rng);
          r2(i, j) = payoff(rng);
        }
      classical = bimatrix_game(r1, r2);
    }
    const StaticQuantumGame game = fixed_game ? *fixed_game : classical_embedding(classical);
    if (!fixed_game) {
      const ClassicalGame back = extract_classical_game(game);
      if (back.moves != classical.moves || back.payoffs != classical.payoffs) roundtrip = false;
    }
    const BasisPtr basis = matrix_unit_basis(game.local_dim());
    const PayoffTensor tensor = build_payoff_tensor(game, basis);
    std::vector<std::vector<double>> mixed;
    StrategyProfile profile;
    for (int k = 0; k < classical.players(); ++k) {
      mixed.push_back(random_simplex_point(classical.moves[k], rng));
      profile.push_back(mixed_to_chi(std::span<const double>(mixed.back()), basis));
    }
    const std::vector<double> quantum = evaluate_payoff_chi(tensor, profile);
    const std::vector<double> expected = classical.expected_payoffs(mixed);
    for (int k = 0; k < classical.players(); ++k) {
      const double dev = std::abs(quantum[k] - expected[k]);
      if (dev > 1e-10 && !counterexample) {
        counterexample = json{{"sample", t}, {"player", k}, {"quantum", quantum[k]},
                              {"classical", expected[k]}, {"mixed", mixed}};
      }
      worst = std::max(worst, dev);
    }
  }
  std::vector<PropertyCheck> checks{
      {"quantum payoff equals classical expected payoff", worst, 1e-10, worst <= 1e-10,
       std::to_string(samples) + " mixed-strategy samples"}};
  if (!fixed_game) {
    checks.push_back({"extract_classical_game round-trips exactly", roundtrip ? 0.0 : 1.0, 0.0,
                      roundtrip, ""});
  }
  return finish_verify("embedding", checks, {{"samples", samples}, {"seed", opts.seed}},
                       counterexample);
}

inline Report verify_nonredundancy(const VerifyOptions& opts) {
  const int samples = opts.samples.value_or(50);
  const StaticQuantumGame game = opts.path ? load_game(*opts.path) : diagonal_game(opts.n.value_or(2));
  const int n = game.local_dim();
  const BasisPtr basis = matrix_unit_basis(n);
  const PayoffTensor tensor = build_payoff_tensor(game, basis);
  std::mt19937_64 rng(opts.seed);

  double smallest = std::numeric_limits<double>::infinity();
  int found = 0;
  std::optional<json> counterexample;
  for (int t = 0; t < samples; ++t) {
    const ChiMatrix a = kraus_to_chi(random_channel(n, rng), basis);
    const ChiMatrix b = kraus_to_chi(random_channel(n, rng), basis);
    const RedundancyWitness w = redundancy_witness(tensor, 0, a, b, draw_seed(rng));
    if (!w.redundant) {
      ++found;
      smallest = std::min(smallest, std::abs(w.difference()));
    } else if (!counterexample) {
      counterexample = json{{"sample", t}, {"chi_a", from_matrix(a.matrix())}, {"chi_b", from_matrix(b.matrix())}};
    }
  }
  const int dimension = basis->strategy_set_dimension();
  const int expected_dim = n * n * n * n - n * n;
  std::vector<PropertyCheck> checks{
      {"distinct strategy pairs have a witness opponent", found == samples ? 0.0 : samples - found,
       0.0, found == samples,
       std::to_string(found) + "/" + std::to_string(samples) + " witnesses, smallest |difference| " +
           sci(found ? smallest : 0.0)},
      {"strategy-set dimension equals n^4 - n^2 by constraint rank",
       std::abs(static_cast<double>(dimension - expected_dim)), 0.0, dimension == expected_dim,
       "dimension " + std::to_string(dimension)}};
  if (found > 0 && !(smallest > kWitnessThreshold)) checks.front().passed = false;
  return finish_verify("nonredundancy", checks,
                       {{"n", n}, {"samples", samples}, {"seed", opts.seed},
                        {"strategy_set_dimension", dimension}},
                       counterexample);
}

}  // namespace detail

inline Report cmd_verify(const std::string& what, const VerifyOptions& opts) {
  if (what == "theorem3") return detail::verify_theorem3(opts);
  if (what == "reality") return detail::verify_reality(opts);
  if (what == "embedding") return detail::verify_embedding(opts);
  if (what == "nonredundancy") return detail::verify_nonredundancy(opts);
  throw Error(ErrorKind::InvalidArgument,
              "unknown verification '" + what +
                  "' (expected theorem3, reality, embedding or nonredundancy)");
}

// ---------------------------------------------------------------------------
// efficiency
// ---------------------------------------------------------------------------

/// Rows q' = 1 .. q of the efficiency table.
inline Report cmd_efficiency(int q) {
  if (q < 1) throw Error(ErrorKind::InvalidArgument, "q must be at least 1");
  Report r;
  json rows = json::array();
  std::ostringstream os;
  os << std::left << std::setw(4) << "q" << std::setw(16) << "quantum_dim" << std::setw(16)
     << "classical_dim" << std::setw(8) << "qubits" << std::setw(8) << "bits" << std::setw(14)
     << "dim_ratio" << "transfer_ratio\n";
  for (int k = 1; k <= q; ++k) {
    const EfficiencyReport e = efficiency_report(k);
    rows.push_back({{"q", e.q},
                    {"quantum_dim", e.quantum_dim},
                    {"classical_dim", e.classical_dim},
                    {"qubits_exchanged", e.qubits_exchanged},
                    {"classical_bits_required", e.classical_bits_required},
                    {"dimension_ratio", e.dimension_ratio()},
                    {"transfer_ratio", e.transfer_ratio()}});
    os << std::setw(4) << e.q << std::setw(16) << e.quantum_dim << std::setw(16) << e.classical_dim
       << std::setw(8) << e.qubits_exchanged << std::setw(8) << e.classical_bits_required
       << std::setw(14) << detail::num(e.dimension_ratio(), 8) << detail::num(e.transfer_ratio(), 8)
       << "\n";
  }
  const EfficiencyReport one = efficiency_report(1);
  os << "\nq=1: strategy-set dimension " << one.quantum_dim << " needs " << one.quantum_dim + 1
     << " classical pure strategies, so " << one.classical_bits_required << " bits versus "
     << one.qubits_exchanged << " qubits exchanged\n";
  r.data = detail::with_version({{"command", "efficiency"}, {"q", q}, {"rows", rows}});
  r.text = os.str();
  return r;
}

}  // namespace qgame::cli
