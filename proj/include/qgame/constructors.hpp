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

// Game factories: the diagonal-tensor game, the Bell-state game, classical
// embeddings and the efficiency accounting.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qgame/game_core.hpp"

namespace qgame {

/// A finite classical game. payoffs[k] is player k's payoff table, flattened
/// row-major over joint moves (first player most significant).
struct ClassicalGame {
  std::vector<int> moves;
  std::vector<std::vector<double>> payoffs;

  int players() const { return static_cast<int>(moves.size()); }

  std::size_t joint_moves() const {
    std::size_t total = 1;
    for (int m : moves) total *= static_cast<std::size_t>(m);
    return total;
  }

  std::size_t joint_index(std::span<const int> profile) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < moves.size(); ++k) idx = idx * moves[k] + profile[k];
    return idx;
  }

  void validate() const {
    if (moves.size() < 2) throw Error(ErrorKind::InvalidArgument, "classical game needs two players");
    for (int m : moves)
      if (m < 1) throw Error(ErrorKind::InvalidArgument, "every player needs at least one move");
    if (payoffs.size() != moves.size()) {
      throw Error(ErrorKind::InvalidArgument, "one payoff table per player is required");
    }
    for (const auto& table : payoffs) {
      if (table.size() != joint_moves()) {
        throw Error(ErrorKind::InvalidArgument, "payoff table has the wrong shape");
      }
      for (double v : table)
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "payoff is not finite");
    }
  }

  /// Expected payoffs under independent mixed strategies.
  std::vector<double> expected_payoffs(const std::vector<std::vector<double>>& mixed) const {
    std::vector<double> out(moves.size(), 0.0);
    std::vector<int> profile(moves.size(), 0);
    for (std::size_t idx = 0; idx < joint_moves(); ++idx) {
      double weight = 1.0;
      for (std::size_t k = 0; k < moves.size(); ++k) weight *= mixed[k][profile[k]];
      for (std::size_t k = 0; k < moves.size(); ++k) out[k] += weight * payoffs[k][idx];
      for (int k = static_cast<int>(moves.size()) - 1; k >= 0; --k) {
        if (++profile[k] < moves[k]) break;
        profile[k] = 0;
      }
    }
    return out;
  }
};

/// Two-player matrix game helper: row player's payoff r1, column player's r2.
inline ClassicalGame bimatrix_game(const RealMatrix& r1, const RealMatrix& r2) {
  ClassicalGame g;
  g.moves = {static_cast<int>(r1.rows()), static_cast<int>(r1.cols())};
  g.payoffs.assign(2, {});
  for (Eigen::Index i = 0; i < r1.rows(); ++i)
    for (Eigen::Index j = 0; j < r1.cols(); ++j) {
      g.payoffs[0].push_back(r1(i, j));
      g.payoffs[1].push_back(r2(i, j));
    }
  return g;
}

// ---------------------------------------------------------------------------

/// rho and R with 1/n at every (row, col) whose row and col are both
/// "diagonal pairs" |xx> (0-based composite index x*(n+1)), zero elsewhere.
/// Both are the projector onto (1/sqrt n) sum_x |xx>; the payoff tensor in
/// matrix units is (1/n^2) delta_{alpha gamma} delta_{beta delta}.
inline StaticQuantumGame diagonal_game(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "diagonal_game needs n >= 2");
  const int d = n * n;
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) m(x * (n + 1), y * (n + 1)) = 1.0 / n;
  GameInfo info{"diagonal-n" + std::to_string(n),
                "two-player game whose matrix-unit payoff tensor is diagonal",
                {}};
  return StaticQuantumGame(2, n, m, {m, m}, false, std::move(info));
}

/// |psi> = (|00> + |11>)/sqrt 2 with R = |psi><psi| for both players.
inline StaticQuantumGame bell_example_game() {
  StaticQuantumGame base = diagonal_game(2);
  GameInfo info{"bell", "Bell state shared by two players; both are paid on the |psi> outcome", {}};
  return StaticQuantumGame(2, 2, base.rho(), base.payoff_ops(), false, std::move(info));
}

/// The referee's von Neumann measurement for the Bell game:
/// {|psi>, |01>, |10>, |phi->} paying 1 to both players on |psi>.
inline POVMPayoffScheme bell_measurement_scheme() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector psi = ComplexVector::Zero(4), s01 = ComplexVector::Zero(4),
                s10 = ComplexVector::Zero(4), phi = ComplexVector::Zero(4);
  psi(0) = r;
  psi(3) = r;
  s01(1) = 1.0;
  s10(2) = 1.0;
  phi(0) = r;
  phi(3) = -r;
  POVMPayoffScheme scheme;
  for (const auto& v : {psi, s01, s10, phi}) scheme.measurement_ops.push_back(v * v.adjoint());
  scheme.payoffs = {{1, 0, 0, 0}, {1, 0, 0, 0}};
  return scheme;
}

/// Zero-sum variant: R^I = |psi><psi|, R^II = -R^I.
inline StaticQuantumGame bell_zero_sum_game() {
  StaticQuantumGame base = diagonal_game(2);
  GameInfo info{"bell-zero-sum", "Bell state; player I gains what player II loses on |psi>", {}};
  return StaticQuantumGame(2, 2, base.rho(), {base.payoff_op(0), -base.payoff_op(0)}, true,
                           std::move(info));
}

/// Random game for property checks: rho = G G^dagger / tr(G G^dagger) for a
/// complex Gaussian G, and independent Gaussian hermitian payoff operators.
inline StaticQuantumGame random_game(int players, int local_dim, std::uint64_t seed) {
  if (players < 2 || local_dim < 2) {
    throw Error(ErrorKind::InvalidArgument, "random_game needs players >= 2 and local_dim >= 2");
  }
  check_tensor_size(players, local_dim);
  const int d = int_pow(local_dim, players);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto gaussian = [&] {
    ComplexMatrix g(d, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        g(i, j) = Complex(re, im);
      }
    return g;
  };
  const ComplexMatrix g = gaussian();
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  std::vector<ComplexMatrix> ops;
  for (int k = 0; k < players; ++k) ops.push_back(hermitian_part(gaussian()));
  GameInfo info{"random", "random state and payoff operators", {}};
  return StaticQuantumGame(players, local_dim, rho, std::move(ops), false, std::move(info));
}

/// Penalty below the smallest real payoff given to padding moves.
inline constexpr double kPaddingPenalty = 1e6;

/// Embeds a classical game: rho = |0..0><0..0| and diagonal R^k listing
/// r^k in computational-basis order. Every player gets n = 2^q levels, with
/// q the smallest count that fits the largest move set unless `qubits` is
/// given. Missing moves are padded with strictly dominated dummies.
inline StaticQuantumGame classical_embedding(const ClassicalGame& classical,
                                             std::optional<int> qubits = std::nullopt,
                                             bool zero_sum = false) {
  classical.validate();
  const int players = classical.players();
  const int largest = *std::max_element(classical.moves.begin(), classical.moves.end());
  int q = 1;
  while ((1 << q) < largest) ++q;
  if (qubits) {
    if (*qubits < 1) throw Error(ErrorKind::InvalidArgument, "qubits per player must be >= 1");
    if ((1 << *qubits) < largest) {
      throw Error(ErrorKind::TooManyMoves,
                  std::to_string(largest) + " moves do not fit in " + std::to_string(*qubits) +
                      " qubits per player");
    }
    q = *qubits;
  }
  const int n = 1 << q;
  const int d = int_pow(n, players);
  check_dimension(static_cast<std::size_t>(d), static_cast<std::size_t>(d), "classical embedding");

  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& table : classical.payoffs)
    for (double v : table) lowest = std::min(lowest, v);
  const double penalty = lowest - kPaddingPenalty;

  std::vector<ComplexMatrix> ops(players, ComplexMatrix::Zero(d, d));
  std::vector<int> profile(players, 0);
  for (int idx = 0; idx < d; ++idx) {
    int rest = idx;
    for (int k = players - 1; k >= 0; --k) {
      profile[k] = rest % n;
      rest /= n;
    }
    bool padded = false;
    for (int k = 0; k < players; ++k) padded = padded || profile[k] >= classical.moves[k];
    if (!padded) {
      const std::size_t j = classical.joint_index(profile);
      for (int k = 0; k < players; ++k) ops[k](idx, idx) = classical.payoffs[k][j];
      continue;
    }
    for (int k = 0; k < players; ++k) {
      if (profile[k] >= classical.moves[k]) ops[k](idx, idx) = penalty;
    }
    if (zero_sum && players == 2) {
      const bool first = profile[0] >= classical.moves[0];
      const bool second = profile[1] >= classical.moves[1];
      if (first && !second) ops[1](idx, idx) = -penalty;
      if (second && !first) ops[0](idx, idx) = -penalty;
      if (first && second) ops[0](idx, idx) = ops[1](idx, idx) = 0.0;
    }
  }
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  rho(0, 0) = 1.0;
  GameInfo info{"classical-embedding", "classical game played with unentangled qubits",
                classical.moves};
  return StaticQuantumGame(players, n, rho, std::move(ops), zero_sum, std::move(info));
}

/// Chi of the channel mixing the cyclic shifts X^s with probabilities p_s.
/// Playing it on |0> yields move s with probability p_s.
inline ChiMatrix mixed_to_chi(std::span<const double> probabilities, const BasisPtr& basis) {
  const int n = basis->dim();
  if (probabilities.empty() || static_cast<int>(probabilities.size()) > n) {
    throw Error(ErrorKind::InvalidDistribution,
                "need between 1 and " + std::to_string(n) + " probabilities");
  }
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorKind::InvalidDistribution, "probabilities must be nonnegative", p);
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidDistribution,
                "probabilities sum to " + std::to_string(total), total - 1.0);
  }
  ComplexMatrix chi = ComplexMatrix::Zero(basis->size(), basis->size());
  for (std::size_t s = 0; s < probabilities.size(); ++s) {
    if (probabilities[s] == 0.0) continue;
    const ComplexVector e = basis->expand(cyclic_shift(n, static_cast<int>(s)));
    chi += probabilities[s] * (e * e.adjoint());
  }
  return ChiMatrix(basis, chi);
}

inline ChiMatrix mixed_to_chi(std::initializer_list<double> probabilities, const BasisPtr& basis) {
  const std::vector<double> p(probabilities);
  return mixed_to_chi(std::span<const double>(p), basis);
}

/// Same, in the matrix-unit basis of dimension n.
inline ChiMatrix mixed_to_chi(std::span<const double> probabilities, int n) {
  return mixed_to_chi(probabilities, matrix_unit_basis(n));
}

/// Recovers the classical game from an embedded-form quantum game.
inline ClassicalGame extract_classical_game(const StaticQuantumGame& game) {
  const auto d = game.rho().rows();
  constexpr double tol = 1e-12;
  ComplexMatrix expected_rho = ComplexMatrix::Zero(d, d);
  expected_rho(0, 0) = 1.0;
  const double rho_defect = (game.rho() - expected_rho).cwiseAbs().maxCoeff();
  if (rho_defect > tol) {
    throw Error(ErrorKind::NotEmbeddedForm,
                "initial state is not |0...0><0...0| (max deviation " +
                    std::to_string(rho_defect) + ")",
                rho_defect);
  }
  for (int k = 0; k < game.players(); ++k) {
    ComplexMatrix off = game.payoff_op(k);
    off.diagonal().setZero();
    const double defect = off.cwiseAbs().maxCoeff();
    const double imag = game.payoff_op(k).diagonal().imag().cwiseAbs().maxCoeff();
    if (defect > tol || imag > tol) {
      throw Error(ErrorKind::NotEmbeddedForm,
                  "payoff operator " + std::to_string(k) + " is not real diagonal",
                  std::max(defect, imag));
    }
  }
  const int n = game.local_dim();
  const int players = game.players();
  ClassicalGame out;
  out.moves = game.info().classical_moves.empty() ? std::vector<int>(players, n)
                                                  : game.info().classical_moves;
  if (static_cast<int>(out.moves.size()) != players) {
    throw Error(ErrorKind::NotEmbeddedForm, "recorded move counts do not match the player count");
  }
  out.payoffs.assign(players, std::vector<double>(out.joint_moves()));
  std::vector<int> profile(players, 0);
  for (std::size_t idx = 0; idx < out.joint_moves(); ++idx) {
    int quantum = 0;
    for (int k = 0; k < players; ++k) quantum = quantum * n + profile[k];
    for (int k = 0; k < players; ++k) out.payoffs[k][idx] = game.payoff_op(k)(quantum, quantum).real();
    for (int k = players - 1; k >= 0; --k) {
      if (++profile[k] < out.moves[k]) break;
      profile[k] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct EfficiencyReport {
  int q = 0;
  std::uint64_t quantum_dim = 0;      // 16^q - 4^q
  std::uint64_t classical_dim = 0;    // 4^q - 1
  std::uint64_t qubits_exchanged = 0; // 4q, two players
  /// Bits to address quantum_dim + 1 strategies, both directions.
  std::uint64_t classical_bits_required = 0;

  /// quantum_dim / classical_dim, which equals 4^q.
  double dimension_ratio() const {
    return static_cast<double>(quantum_dim) / static_cast<double>(classical_dim);
  }
  /// classical_bits_required / qubits_exchanged (the factor-of-2 advantage).
  double transfer_ratio() const {
    return static_cast<double>(classical_bits_required) / static_cast<double>(qubits_exchanged);
  }
};

inline int ceil_log2(std::uint64_t v) {
  int bits = 0;
  std::uint64_t reach = 1;
  while (reach < v) {
    reach <<= 1;
    ++bits;
  }
  return bits;
}

inline EfficiencyReport efficiency_report(int q) {
  if (q < 1 || q > 15) {
    throw Error(ErrorKind::InvalidArgument, "efficiency_report supports 1 <= q <= 15");
  }
  EfficiencyReport r;
  r.q = q;
  const std::uint64_t four_q = std::uint64_t{1} << (2 * q);
  const std::uint64_t sixteen_q = std::uint64_t{1} << (4 * q);
  r.quantum_dim = sixteen_q - four_q;
  r.classical_dim = four_q - 1;
  r.qubits_exchanged = 4 * static_cast<std::uint64_t>(q);
  r.classical_bits_required = 2 * static_cast<std::uint64_t>(ceil_log2(r.quantum_dim + 1));
  return r;
}

}  // namespace qgame
