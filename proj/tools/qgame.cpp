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

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qgame/cli/commands.hpp"

namespace {

using qgame::cli::Report;

struct Common {
  std::string format = "human";
  std::string out;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"human", "json"}));
  cmd->add_option("--out", common.out, "Also write the JSON report to this file");
}

int emit(const Report& report, const Common& common) {
  if (!common.out.empty()) {
    qgame::cli::write_atomically(common.out, qgame::cli::dump(report.data));
  }
  if (common.format == "json") {
    std::cout << qgame::cli::dump(report.data);
  } else {
    std::cout << report.text;
  }
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qgame: static quantum games with chi-matrix strategies"};
  app.require_subcommand(1);

  Common common;
  double tol = 0.0;
  int max_iter = 100000;
  std::uint64_t seed = 0;

  auto* describe = app.add_subcommand("describe", "Dimensions and validation residuals of a game");
  std::string describe_path;
  describe->add_option("game", describe_path, "Game file")->required();
  add_common(describe, common);

  auto* payoff = app.add_subcommand("payoff", "Payoffs of a strategy profile, by both evaluation paths");
  std::string payoff_game;
  std::vector<std::string> strategy_files;
  payoff->add_option("game", payoff_game, "Game file")->required();
  payoff->add_option("strategies", strategy_files, "Strategy files, concatenated in player order")
      ->required();
  add_common(payoff, common);

  auto* solve = app.add_subcommand("solve", "Zero-sum saddle point or Nash equilibrium search");
  std::string solve_path;
  std::string mode = "zero-sum";
  solve->add_option("game", solve_path, "Game file")->required();
  solve->add_option("--mode", mode, "Solver")->check(CLI::IsMember({"zero-sum", "nash"}));
  auto* solve_tol = solve->add_option("--tol", tol, "Gap (zero-sum) or residual (nash) tolerance")
                        ->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", max_iter, "Iteration cap")->check(CLI::NonNegativeNumber);
  solve->add_option("--seed", seed, "Seed; non-zero randomizes the Nash starting profile");
  add_common(solve, common);

  auto* verify = app.add_subcommand("verify", "Property checks with worst-case residuals");
  std::string what;
  std::optional<int> verify_n;
  std::optional<int> samples;
  std::string verify_path;
  std::uint64_t verify_seed = 1;
  verify->add_option("what", what, "theorem3 | reality | embedding | nonredundancy")
      ->required()
      ->check(CLI::IsMember({"theorem3", "reality", "embedding", "nonredundancy"}));
  verify->add_option("--n", verify_n, "Per-player dimension for generated games")
      ->check(CLI::Range(2, 16));
  verify->add_option("--game", verify_path, "Check this game file instead of a generated one");
  verify->add_option("--samples", samples, "Number of random samples")->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_seed, "Seed for random samples");
  add_common(verify, common);

  auto* efficiency = app.add_subcommand("efficiency", "Quantum versus classical strategy-set dimensions");
  int q = 1;
  efficiency->add_option("q", q, "Qubits per player (table covers 1..q)")
      ->check(CLI::Range(1, 15));
  add_common(efficiency, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : qgame::cli::kExitValidation;
  }

  try {
    if (*describe) return emit(qgame::cli::cmd_describe(describe_path), common);
    if (*payoff) return emit(qgame::cli::cmd_payoff(payoff_game, strategy_files), common);
    if (*solve) {
      qgame::cli::SolveOptions opts;
      opts.mode = mode;
      if (*solve_tol) opts.tol = tol;
      opts.max_iter = max_iter;
      opts.seed = seed;
      return emit(qgame::cli::cmd_solve(solve_path, opts), common);
    }
    if (*verify) {
      qgame::cli::VerifyOptions opts;
      opts.n = verify_n;
      if (!verify_path.empty()) opts.path = verify_path;
      opts.seed = verify_seed;
      opts.samples = samples;
      return emit(qgame::cli::cmd_verify(what, opts), common);
    }
    if (*efficiency) return emit(qgame::cli::cmd_efficiency(q), common);
  } catch (const qgame::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qgame::cli::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qgame::cli::kExitValidation;
  }
  return qgame::cli::kExitValidation;
}
