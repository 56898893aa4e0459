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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.
//
// usage: acceptance <path to qgame binary> <cache directory>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qgame/cli/commands.hpp"
#include "qgame/constructors.hpp"
#include "qgame/solvers.hpp"

using namespace qgame;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  std::uint64_t seed() { return engine_(); }
  KrausChannel channel(int n) { return random_cptp(n, integer(1, n * n), seed()); }
  std::vector<double> simplex(int size) {
    std::vector<double> p(size);
    double total = 0.0;
    for (double& v : p) total += (v = -std::log(uniform(1e-300, 1.0)));
    for (double& v : p) v /= total;
    return p;
  }

 private:
  std::mt19937_64 engine_;
};

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

bool feasible(const ChiMatrix& chi) {
  const ChiCheck c = chi.check();
  return c.tp_residual <= 1e-9 && c.min_eigenvalue >= -1e-9 && c.hermiticity <= 1e-9;
}

RealMatrix mat2(double a, double b, double c, double d) {
  RealMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

PayoffTensor tensor_of(const StaticQuantumGame& g) {
  return build_payoff_tensor(g, matrix_unit_basis(g.local_dim()));
}

// ---------------------------------------------------------------------------

Outcome diagonal_tensor() {
  Outcome out;
  std::ostringstream os;
  for (int n : {2, 3, 4}) {
    const PayoffTensor t = tensor_of(diagonal_game(n));
    const int s = n * n;
    double worst = 0.0;
    for (int k = 0; k < 2; ++k)
      for (int a = 0; a < s; ++a)
        for (int c = 0; c < s; ++c)
          for (int b = 0; b < s; ++b)
            for (int d = 0; d < s; ++d) {
              const double want = (a == c && b == d) ? 1.0 / (n * n) : 0.0;
              worst = std::max(worst, std::abs(t.matrix(k)(a * s + c, b * s + d) - want));
            }
    out.passed = out.passed && worst <= 1e-12;
    os << "n=" << n << " (" << s * s * s * s << " entries) worst " << sci(worst) << "; ";
  }
  out.detail = os.str();
  return out;
}

Outcome bell_example(const std::string& binary) {
  Outcome out;
  const PayoffTensor t = tensor_of(bell_example_game());
  const StrategyProfile idle{kraus_to_chi(identity_channel(2), t.basis()),
                             kraus_to_chi(identity_channel(2), t.basis())};
  const auto pay = evaluate_payoff_chi(t, idle);
  const bool payoff_ok = std::abs(pay[0] - 1.0) <= 1e-9 && std::abs(pay[1] - 1.0) <= 1e-9;

  std::string text;
  if (FILE* pipe = popen((binary + " efficiency 1").c_str(), "r")) {
    std::array<char, 256> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) text += buf.data();
    pclose(pipe);
  }
  const EfficiencyReport e = efficiency_report(1);
  const bool report_ok = e.quantum_dim == 12 && e.qubits_exchanged == 4 &&
                         e.classical_bits_required == 8 &&
                         text.find("strategy-set dimension 12") != std::string::npos &&
                         text.find("8 bits versus 4 qubits") != std::string::npos;
  out.passed = payoff_ok && report_ok;
  out.detail = "payoff (" + std::to_string(pay[0]) + ", " + std::to_string(pay[1]) +
               "); efficiency output " + (report_ok ? "12 / 4 qubits / 8 bits" : "mismatch");
  return out;
}

Outcome dual_path() {
  Outcome out;
  Rng rng(3);
  double worst = 0.0, imag = 0.0;
  for (auto [n, draws] : {std::pair{2, 200}, std::pair{4, 50}}) {
    for (int d = 0; d < draws; ++d) {
      const StaticQuantumGame g = random_game(2, n, rng.seed());
      const PayoffTensor t = tensor_of(g);
      const std::vector<KrausChannel> chs{rng.channel(n), rng.channel(n)};
      const StrategyProfile p{kraus_to_chi(chs[0], t.basis()), kraus_to_chi(chs[1], t.basis())};
      const auto raw = contract_payoff(t, p);
      const auto direct = evaluate_payoff_direct(g, chs);
      for (int k = 0; k < 2; ++k) {
        worst = std::max(worst, std::abs(raw[k].real() - direct[k]));
        imag = std::max(imag, std::abs(raw[k].imag()));
      }
    }
  }
  out.passed = worst <= 1e-8 && imag <= 1e-9;
  out.detail = "max |direct - chi| " + sci(worst) + ", max imaginary residue " + sci(imag);
  return out;
}

Outcome chi_machinery() {
  Rng rng(4);
  double constraint = 0.0, roundtrip = 0.0, sums = 0.0;
  for (int d = 0; d < 100; ++d) {
    const int n = d % 2 == 0 ? 2 : 3;
    const BasisPtr b = matrix_unit_basis(n);
    const ChiMatrix chi = kraus_to_chi(rng.channel(n), b);
    constraint = std::max(constraint, chi.check().tp_residual);
    roundtrip = std::max(roundtrip, (kraus_to_chi(chi_to_kraus(chi), b).matrix() - chi.matrix()).norm());
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        Complex s = 0.0;
        for (int i = 0; i < n; ++i) s += chi(i * n + j, i * n + l);
        sums = std::max(sums, std::abs(s - Complex(j == l ? 1.0 : 0.0, 0.0)));
      }
  }
  Outcome out;
  out.passed = constraint <= 1e-9 && roundtrip <= 1e-8 && sums <= 1e-9;
  out.detail = "constraint " + sci(constraint) + ", roundtrip " + sci(roundtrip) +
               ", matrix-unit sums " + sci(sums);
  return out;
}

Outcome embedding() {
  Rng rng(5);
  double worst = 0.0;
  bool exact = true;
  for (int d = 0; d < 100; ++d) {
    RealMatrix r1(2, 2), r2(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        r1(i, j) = rng.uniform(-10, 10);
        r2(i, j) = rng.uniform(-10, 10);
      }
    const ClassicalGame cg = bimatrix_game(r1, r2);
    const StaticQuantumGame g = classical_embedding(cg);
    const PayoffTensor t = tensor_of(g);
    const std::vector<double> x = rng.simplex(2), y = rng.simplex(2);
    const StrategyProfile p{mixed_to_chi(std::span<const double>(x), t.basis()),
                            mixed_to_chi(std::span<const double>(y), t.basis())};
    const auto quantum = evaluate_payoff_chi(t, p);
    const auto classical = cg.expected_payoffs({x, y});
    for (int k = 0; k < 2; ++k) worst = std::max(worst, std::abs(quantum[k] - classical[k]));
    const ClassicalGame back = extract_classical_game(g);
    exact = exact && back.moves == cg.moves && back.payoffs == cg.payoffs;
  }
  Outcome out;
  out.passed = worst <= 1e-10 && exact;
  out.detail = "max payoff difference " + sci(worst) + ", extraction " + (exact ? "exact" : "inexact");
  return out;
}

// Certified bracket on the Bell zero-sum value from a grid of strategies
// for each player: unitaries U(theta, phi, lambda) mixed with the
// depolarizing channel at weight w.
struct GridBracket {
  double lower = -1e300;
  double upper = 1e300;
  int points = 0;
};

ComplexMatrix u3(double theta, double phi, double lambda) {
  ComplexMatrix u(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  u(0, 0) = c;
  u(0, 1) = -std::polar(s, lambda);
  u(1, 0) = std::polar(s, phi);
  u(1, 1) = std::polar(c, phi + lambda);
  return u;
}

GridBracket bell_grid(const fs::path& cache) {
  const fs::path file = cache / "bell_zero_sum_grid.json";
  if (fs::exists(file)) {
    try {
      const auto doc = cli::read_json_file(file.string());
      if (doc.at("points").get<int>() == 10000) {
        return {doc.at("lower").get<double>(), doc.at("upper").get<double>(), 10000};
      }
    } catch (const std::exception&) {
      // Recompute below.
    }
  }
  const PayoffTensor t = tensor_of(bell_zero_sum_game());
  const BasisPtr b = t.basis();
  const ChiMatrix dep = depolarizing_chi(b);
  const double pi = std::acos(-1.0);
  GridBracket g;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int k = 0; k < 10; ++k) {
        const ChiMatrix u =
            kraus_to_chi(unitary_channel(u3(pi * i / 9.0, 2 * pi * j / 10.0, 2 * pi * k / 10.0)), b);
        for (int w = 0; w < 10; ++w) {
          const ChiMatrix chi = mix(w / 9.0, dep, u);
          const StrategyProfile one{chi};
          // Player I commits to chi: II's best reply bounds the value below.
          const BestResponse reply_ii = best_response(t, 1, one, 1e-10);
          g.lower = std::max(g.lower, -reply_ii.upper_bound);
          // Player II commits to chi: I's best reply bounds it above.
          const BestResponse reply_i = best_response(t, 0, one, 1e-10);
          g.upper = std::min(g.upper, reply_i.upper_bound);
          ++g.points;
        }
      }
  fs::create_directories(cache);
  cli::json doc{{"points", g.points}, {"lower", g.lower}, {"upper", g.upper}};
  cli::write_atomically(file.string(), cli::dump(doc));
  return g;
}

Outcome minimax(const fs::path& cache) {
  Outcome out;
  std::ostringstream os;
  struct Case {
    RealMatrix a;
    double value;
  };
  const std::vector<Case> cases{{mat2(1, -1, -1, 1), 0.0},
                                {mat2(3, 1, 1, 2), 5.0 / 3.0},
                                {mat2(2, -1, -3, 4), 0.5},
                                {mat2(0, 2, 3, 1), 1.5},
                                {mat2(4, 1, 2, 3), 2.5}};
  for (const auto& c : cases) {
    const SaddleResult r =
        solve_zero_sum(classical_embedding(bimatrix_game(c.a, -c.a), std::nullopt, true));
    const bool ok = r.converged && r.gap() <= 1e-3 && r.v_lower <= c.value + 1e-9 &&
                    r.v_upper >= c.value - 1e-9 && feasible(r.strategies[0]) &&
                    feasible(r.strategies[1]);
    out.passed = out.passed && ok;
    os << "v=" << c.value << " gap " << sci(r.gap()) << "; ";
  }
  const SaddleResult bell = solve_zero_sum(bell_zero_sum_game());
  const GridBracket grid = bell_grid(cache);
  const bool bell_ok = bell.converged && bell.gap() <= 1e-3 &&
                       bell.v_lower <= grid.upper + 1e-9 && grid.lower <= bell.v_upper + 1e-9;
  out.passed = out.passed && bell_ok;
  os << "Bell [" << bell.v_lower << ", " << bell.v_upper << "] vs grid (" << grid.points
     << " points) [" << grid.lower << ", " << grid.upper << "]";
  out.detail = os.str();
  return out;
}

Outcome nash() {
  Outcome out;
  std::ostringstream os;
  const std::vector<std::pair<RealMatrix, RealMatrix>> dominant{
      {mat2(3, 0, 5, 1), mat2(3, 5, 0, 1)},   // prisoner's dilemma
      {mat2(4, 3, 2, 1), mat2(4, 2, 3, 1)},   // both prefer move 0
      {mat2(0, 2, 1, 3), mat2(1, 0, 3, 2)}};  // row prefers 1, column prefers 0
  for (const auto& [r1, r2] : dominant) {
    const NashResult r = nash_iterate(classical_embedding(bimatrix_game(r1, r2)));
    bool ok = r.converged && r.residual <= 1e-4;
    for (const auto& chi : r.profile) ok = ok && feasible(chi);
    out.passed = out.passed && ok;
    os << "dominant residual " << sci(r.residual) << "; ";
  }
  const NashResult mp =
      nash_iterate(classical_embedding(bimatrix_game(mat2(1, -1, -1, 1), mat2(-1, 1, 1, -1))));
  bool ok = mp.residual <= 1e-3;
  for (const auto& chi : mp.profile) ok = ok && feasible(chi);
  out.passed = out.passed && ok;
  os << "matching pennies residual " << sci(mp.residual);
  out.detail = os.str();
  return out;
}

Outcome nonredundancy() {
  Rng rng(8);
  const PayoffTensor t = tensor_of(diagonal_game(2));
  int witnesses = 0;
  double smallest = 1e300;
  for (int d = 0; d < 50; ++d) {
    const ChiMatrix a = kraus_to_chi(rng.channel(2), t.basis());
    const ChiMatrix b = kraus_to_chi(rng.channel(2), t.basis());
    const RedundancyWitness w = redundancy_witness(t, 0, a, b);
    if (!w.redundant && std::abs(w.difference()) > 1e-8) {
      ++witnesses;
      smallest = std::min(smallest, std::abs(w.difference()));
    }
  }
  const int d1 = matrix_unit_basis(2)->strategy_set_dimension();
  const int d2 = matrix_unit_basis(4)->strategy_set_dimension();
  Outcome out;
  out.passed = witnesses == 50 && d1 == 16 - 4 && d2 == 256 - 16;
  out.detail = std::to_string(witnesses) + "/50 witnesses (smallest |difference| " + sci(smallest) +
               "), rank dimensions q=1: " + std::to_string(d1) + ", q=2: " + std::to_string(d2);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism(const std::string& binary, const fs::path& cache) {
  const std::string games = QGAME_GAMES_DIR;
  const std::vector<std::string> commands{
      "solve " + games + "/pd.game --mode nash --seed 11",
      "solve " + games + "/matching-pennies.game --seed 5",
      "verify reality --n 2 --samples 30 --seed 9",
      "verify embedding --samples 20 --seed 9",
      "verify nonredundancy --samples 10 --seed 9",
      "payoff " + games + "/bell.game " + games + "/identity-replace0.strategies",
  };
  fs::create_directories(cache);
  Outcome out;
  int identical = 0;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string runs[2];
    for (int r = 0; r < 2; ++r) {
      const fs::path file = cache / ("determinism_" + std::to_string(c) + "_" + std::to_string(r) + ".json");
      fs::remove(file);
      const std::string cmd = binary + " " + commands[c] + " --out " + file.string() + " > /dev/null";
      const int status = std::system(cmd.c_str());
      runs[r] = status == 0 ? slurp(file) : std::string();
    }
    if (!runs[0].empty() && runs[0] == runs[1]) ++identical;
  }
  out.passed = identical == static_cast<int>(commands.size());
  out.detail = std::to_string(identical) + "/" + std::to_string(commands.size()) +
               " commands byte-identical across two runs";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <qgame binary> <cache dir>\n";
    return 2;
  }
  const std::string binary = argv[1];
  const fs::path cache = argv[2];

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"diagonal payoff tensor", diagonal_tensor},
      {"Bell example", [&] { return bell_example(binary); }},
      {"dual-path payoff equivalence", dual_path},
      {"chi-matrix machinery", chi_machinery},
      {"classical embedding", embedding},
      {"minimax certificate", [&] { return minimax(cache); }},
      {"Nash certificate", nash},
      {"non-redundancy", nonredundancy},
      {"determinism", [&] { return determinism(binary, cache); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.passed ? 0 : 1;
    std::cout << (o.passed ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first
              << ": " << o.detail << " (" << std::fixed << std::setprecision(1) << secs << " s)\n"
              << std::defaultfloat << std::flush;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
