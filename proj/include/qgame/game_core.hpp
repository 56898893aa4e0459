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

/**
 * @file
 * Static quantum games: the initial state, the referee's payoff operators,
 * the payoff tensor A^k and payoff evaluation, both directly from Kraus
 * channels and as a multilinear form in the players' chi matrices.
 *
 * Payoff tensor layout. For N players and a basis of size s = n^2, player
 * k's coefficients form an s^N x s^N matrix indexed by the tuples
 * (alpha_1..alpha_N) and (beta_1..beta_N), first player most significant:
 *
 *   A^k[(alpha), (beta)] = tr[R^k (E_a1 (x) .. (x) E_aN) rho
 *                                 (E_b1 (x) .. (x) E_bN)^dagger]
 *
 * and P_k = sum chi^1_{a1 b1} .. chi^N_{aN bN} A^k[(alpha), (beta)].
 */

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgame/channels.hpp"

namespace qgame {

inline int int_pow(int base, int exp) {
  int out = 1;
  for (int k = 0; k < exp; ++k) out *= base;
  return out;
}

/// Referee measurement {M_m} with per-player payoffs a^k_m
/// (payoffs[k][m]).
struct POVMPayoffScheme {
  std::vector<ComplexMatrix> measurement_ops;
  std::vector<std::vector<double>> payoffs;

  double completeness_residual() const {
    if (measurement_ops.empty()) return std::numeric_limits<double>::infinity();
    const auto d = measurement_ops.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& m : measurement_ops) {
      if (m.cols() != d) return std::numeric_limits<double>::infinity();
      sum += m.adjoint() * m;
    }
    return (sum - ComplexMatrix::Identity(d, d)).norm();
  }
};

/// R^k = sum_m a^k_m M_m^dagger M_m.
inline ComplexMatrix povm_to_payoff_operator(const POVMPayoffScheme& scheme, int player) {
  const double residual = scheme.completeness_residual();
  if (!(residual <= kFeasibilityTolerance)) {
    throw Error(ErrorKind::IncompletePOVM,
                "||sum M^dagger M - I||_F = " + std::to_string(residual), residual);
  }
  if (player < 0 || player >= static_cast<int>(scheme.payoffs.size())) {
    throw Error(ErrorKind::InvalidArgument, "no payoff table for player " + std::to_string(player));
  }
  const auto& table = scheme.payoffs[player];
  if (table.size() != scheme.measurement_ops.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "player " + std::to_string(player) + " has " + std::to_string(table.size()) +
                    " payoffs for " + std::to_string(scheme.measurement_ops.size()) + " outcomes");
  }
  const auto d = scheme.measurement_ops.front().rows();
  ComplexMatrix r = ComplexMatrix::Zero(d, d);
  for (std::size_t m = 0; m < table.size(); ++m) {
    const auto& op = scheme.measurement_ops[m];
    r += table[m] * (op.adjoint() * op);
  }
  return hermitian_part(r);
}

struct GameInfo {
  std::string name;
  std::string description;
  /// Moves per player of the classical game this one embeds (empty if none);
  /// lets extraction drop padding moves.
  std::vector<int> classical_moves;
};

struct GameValidation {
  double trace_residual = 0.0;        // |tr rho - 1|
  double rho_min_eigenvalue = 0.0;
  double rho_hermiticity = 0.0;
  std::vector<double> payoff_hermiticity;
  double zero_sum_residual = 0.0;     // ||R^I + R^II||_F (two players)
};

/// <N, Omega, P> made concrete: N players each holding one n-dimensional
/// share of rho, and hermitian payoff operators R^k.
class StaticQuantumGame {
 public:
  StaticQuantumGame(int players, int local_dim, ComplexMatrix rho,
                    std::vector<ComplexMatrix> payoff_ops, bool zero_sum,
                    GameInfo info = {})
      : players_(players),
        local_dim_(local_dim),
        rho_(std::move(rho)),
        payoff_ops_(std::move(payoff_ops)),
        zero_sum_(zero_sum),
        info_(std::move(info)) {
    if (players_ < 2) {
      throw Error(ErrorKind::ValidationError, "a game needs at least two players");
    }
    if (local_dim_ < 2) {
      throw Error(ErrorKind::ValidationError, "per-player dimension must be at least 2");
    }
    const double total = std::pow(local_dim_, players_);
    check_dimension(static_cast<std::size_t>(total), static_cast<std::size_t>(total),
                    "game state");
    const auto d = static_cast<Eigen::Index>(total);
    if (rho_.rows() != d || rho_.cols() != d) {
      throw Error(ErrorKind::DimensionMismatch,
                  "rho is " + std::to_string(rho_.rows()) + "x" + std::to_string(rho_.cols()) +
                      "; an equal split among " + std::to_string(players_) +
                      " players of dimension " + std::to_string(local_dim_) + " needs " +
                      std::to_string(d) + "x" + std::to_string(d));
    }
    if (static_cast<int>(payoff_ops_.size()) != players_) {
      throw Error(ErrorKind::ValidationError,
                  "expected " + std::to_string(players_) + " payoff operators, got " +
                      std::to_string(payoff_ops_.size()));
    }
    for (const auto& r : payoff_ops_) {
      if (r.rows() != d || r.cols() != d) {
        throw Error(ErrorKind::DimensionMismatch, "payoff operator has the wrong size");
      }
    }
    if (!all_finite(rho_)) throw Error(ErrorKind::ValidationError, "rho has non-finite entries");
    for (const auto& r : payoff_ops_)
      if (!all_finite(r)) throw Error(ErrorKind::ValidationError, "payoff operator has non-finite entries");

    const GameValidation v = validation();
    if (v.rho_hermiticity > kFeasibilityTolerance) {
      throw Error(ErrorKind::ValidationError,
                  "rho is not hermitian (residual " + std::to_string(v.rho_hermiticity) + ")",
                  v.rho_hermiticity);
    }
    if (v.trace_residual > kFeasibilityTolerance) {
      throw Error(ErrorKind::ValidationError,
                  "trace residual |tr(rho) - 1| = " + std::to_string(v.trace_residual),
                  v.trace_residual);
    }
    if (v.rho_min_eigenvalue < -kFeasibilityTolerance) {
      throw Error(ErrorKind::ValidationError,
                  "rho is not positive (smallest eigenvalue " +
                      std::to_string(v.rho_min_eigenvalue) + ")",
                  v.rho_min_eigenvalue);
    }
    for (int k = 0; k < players_; ++k) {
      if (v.payoff_hermiticity[k] > kFeasibilityTolerance) {
        throw Error(ErrorKind::ValidationError,
                    "payoff operator " + std::to_string(k) + " is not hermitian (residual " +
                        std::to_string(v.payoff_hermiticity[k]) + ")",
                    v.payoff_hermiticity[k]);
      }
    }
    if (zero_sum_) {
      if (players_ != 2) {
        throw Error(ErrorKind::ValidationError, "zero-sum games must have two players");
      }
      if (v.zero_sum_residual > kFeasibilityTolerance) {
        throw Error(ErrorKind::ValidationError,
                    "zero-sum residual ||R^I + R^II||_F = " + std::to_string(v.zero_sum_residual),
                    v.zero_sum_residual);
      }
    }
    rho_ = hermitian_part(rho_);
    for (auto& r : payoff_ops_) r = hermitian_part(r);
  }

  /// Builds the payoff operators from a referee POVM.
  static StaticQuantumGame from_povm(int players, int local_dim, ComplexMatrix rho,
                                     const POVMPayoffScheme& scheme, bool zero_sum,
                                     GameInfo info = {}) {
    std::vector<ComplexMatrix> ops;
    for (int k = 0; k < players; ++k) ops.push_back(povm_to_payoff_operator(scheme, k));
    return StaticQuantumGame(players, local_dim, std::move(rho), std::move(ops), zero_sum,
                             std::move(info));
  }

  int players() const { return players_; }
  int local_dim() const { return local_dim_; }
  /// q with n = 2^q, if n is a power of two.
  std::optional<int> qubits_per_player() const {
    int q = 0;
    int v = 1;
    while (v < local_dim_) {
      v *= 2;
      ++q;
    }
    if (v != local_dim_) return std::nullopt;
    return q;
  }
  const ComplexMatrix& rho() const { return rho_; }
  const ComplexMatrix& payoff_op(int k) const { return payoff_ops_.at(k); }
  const std::vector<ComplexMatrix>& payoff_ops() const { return payoff_ops_; }
  bool zero_sum() const { return zero_sum_; }
  const GameInfo& info() const { return info_; }

  GameValidation validation() const {
    GameValidation v;
    v.rho_hermiticity = hermiticity_residual(rho_);
    v.trace_residual = std::abs(rho_.trace() - Complex(1.0, 0.0));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(rho_), Eigen::EigenvaluesOnly);
    v.rho_min_eigenvalue = eig.eigenvalues()(0);
    for (const auto& r : payoff_ops_) v.payoff_hermiticity.push_back(hermiticity_residual(r));
    if (players_ == 2) v.zero_sum_residual = (payoff_ops_[0] + payoff_ops_[1]).norm();
    return v;
  }

 private:
  int players_;
  int local_dim_;
  ComplexMatrix rho_;
  std::vector<ComplexMatrix> payoff_ops_;
  bool zero_sum_;
  GameInfo info_;
};

// ---------------------------------------------------------------------------
// Payoff tensor
// ---------------------------------------------------------------------------

class PayoffTensor {
 public:
  PayoffTensor(int players, BasisPtr basis, std::vector<ComplexMatrix> coefficients)
      : players_(players), basis_(std::move(basis)), coefficients_(std::move(coefficients)) {}

  int players() const { return players_; }
  int local_dim() const { return basis_->dim(); }
  /// s = n^2, the range of each alpha / beta index.
  int basis_size() const { return basis_->size(); }
  const BasisPtr& basis() const { return basis_; }

  /// Player k's s^N x s^N coefficient matrix.
  const ComplexMatrix& matrix(int player) const { return coefficients_.at(player); }

  /// Flattened tuple index, first player most significant.
  int tuple_index(std::span<const int> indices) const {
    int out = 0;
    for (int v : indices) out = out * basis_size() + v;
    return out;
  }

  Complex at(int player, std::span<const int> alphas, std::span<const int> betas) const {
    return coefficients_.at(player)(tuple_index(alphas), tuple_index(betas));
  }

  /// max over players of max |A[b,a] - conj(A[a,b])|: swapping every
  /// (alpha_j, beta_j) pair conjugates the entry.
  double conjugate_symmetry_residual() const {
    double worst = 0.0;
    for (const auto& a : coefficients_) worst = std::max(worst, (a - a.adjoint()).cwiseAbs().maxCoeff());
    return worst;
  }

 private:
  int players_;
  BasisPtr basis_;
  std::vector<ComplexMatrix> coefficients_;
};

/// Size guard: s^N must fit the configured maximum dimension, which keeps
/// N = 2 up to two qubits per player and N = 3 at one.
inline void check_tensor_size(int players, int local_dim) {
  const double side = std::pow(static_cast<double>(local_dim) * local_dim, players);
  check_dimension(static_cast<std::size_t>(side), static_cast<std::size_t>(side), "payoff tensor");
}

inline void require_same_basis(const OperatorBasis& a, const OperatorBasis& b) {
  if (!a.same_as(b)) {
    throw Error(ErrorKind::BasisMismatch,
                "strategy basis '" + b.name() + "' does not match tensor basis '" + a.name() + "'");
  }
}

/// A^k for every player in an arbitrary basis. With K_a = (x)_j E_{a_j},
/// A[a,b] = tr(R K_a rho K_b^dagger) = sum_ij (R K_a)_ij (rho K_b^dagger)_ji,
/// which is one dense product once R K_a and rho K_b^dagger are flattened.
inline PayoffTensor build_payoff_tensor(const StaticQuantumGame& game, const BasisPtr& basis) {
  if (basis->dim() != game.local_dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "basis dimension " + std::to_string(basis->dim()) +
                    " does not match the game's per-player dimension " +
                    std::to_string(game.local_dim()));
  }
  const int players = game.players();
  check_tensor_size(players, game.local_dim());
  const int s = basis->size();
  const int tuples = int_pow(s, players);
  const auto d = game.rho().rows();

  std::vector<ComplexMatrix> kron(tuples);
  std::vector<int> digits(players);
  for (int t = 0; t < tuples; ++t) {
    int rest = t;
    for (int j = players - 1; j >= 0; --j) {
      digits[j] = rest % s;
      rest /= s;
    }
    std::vector<ComplexMatrix> factors;
    for (int j = 0; j < players; ++j) factors.push_back(basis->element(digits[j]));
    kron[t] = tensor_product(factors);
  }

  // right[b] holds (rho K_b^dagger)^T flattened so that A = left * right^T.
  ComplexMatrix right(tuples, d * d);
  for (int b = 0; b < tuples; ++b) {
    const ComplexMatrix w = game.rho() * kron[b].adjoint();
    const ComplexMatrix wt = w.transpose();
    right.row(b) = Eigen::Map<const ComplexVector>(wt.data(), d * d).transpose();
  }

  std::vector<ComplexMatrix> coefficients;
  ComplexMatrix left(tuples, d * d);
  for (int k = 0; k < players; ++k) {
    for (int a = 0; a < tuples; ++a) {
      const ComplexMatrix u = game.payoff_op(k) * kron[a];
      left.row(a) = Eigen::Map<const ComplexVector>(u.data(), d * d).transpose();
    }
    coefficients.push_back(left * right.transpose());
  }
  return PayoffTensor(players, basis, std::move(coefficients));
}

/// Closed form in the matrix-unit basis: with alpha_j = (a_j, b_j) and
/// beta_j = (c_j, d_j),
///   A[(alpha),(beta)] = R_{(c_1..c_N),(a_1..a_N)} * rho_{(b_1..b_N),(d_1..d_N)}.
inline ComplexMatrix matrix_unit_payoff_coefficients(const StaticQuantumGame& game, int player) {
  const int players = game.players();
  const int n = game.local_dim();
  check_tensor_size(players, n);
  const int s = n * n;
  const int tuples = int_pow(s, players);
  const ComplexMatrix& r = game.payoff_op(player);
  const ComplexMatrix& rho = game.rho();

  // Split a tuple of flat indices (i_j * n + k_j) into the row-part and
  // column-part composite indices.
  std::vector<int> hi(tuples), lo(tuples);
  for (int t = 0; t < tuples; ++t) {
    int rest = t;
    int scale = 1;
    int h = 0, l = 0;
    for (int j = players - 1; j >= 0; --j) {
      const int digit = rest % s;
      rest /= s;
      h += (digit / n) * scale;
      l += (digit % n) * scale;
      scale *= n;
    }
    hi[t] = h;
    lo[t] = l;
  }
  ComplexMatrix out(tuples, tuples);
  for (int a = 0; a < tuples; ++a)
    for (int b = 0; b < tuples; ++b) out(a, b) = r(hi[b], hi[a]) * rho(lo[a], lo[b]);
  return out;
}

// ---------------------------------------------------------------------------
// Contraction
// ---------------------------------------------------------------------------

namespace detail {

/// Contracts the last remaining player of a (s^K x s^K) coefficient matrix
/// against chi, giving an (s^{K-1} x s^{K-1}) matrix.
inline ComplexMatrix contract_last(const ComplexMatrix& t, const ComplexMatrix& chi, int s) {
  const Eigen::Index outer = t.rows() / s;
  ComplexMatrix out = ComplexMatrix::Zero(outer, outer);
  for (Eigen::Index a = 0; a < outer; ++a)
    for (Eigen::Index b = 0; b < outer; ++b)
      out(a, b) = (t.block(a * s, b * s, s, s).cwiseProduct(chi)).sum();
  return out;
}

/// Contracts the first remaining player.
inline ComplexMatrix contract_first(const ComplexMatrix& t, const ComplexMatrix& chi, int s) {
  const Eigen::Index inner = t.rows() / s;
  ComplexMatrix out = ComplexMatrix::Zero(inner, inner);
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) {
      if (chi(a, b) == Complex(0.0, 0.0)) continue;
      out += chi(a, b) * t.block(a * inner, b * inner, inner, inner);
    }
  return out;
}

inline void check_profile(const PayoffTensor& tensor, std::span<const ChiMatrix> profile,
                          int skip) {
  if (static_cast<int>(profile.size()) != tensor.players()) {
    throw Error(ErrorKind::DimensionMismatch,
                "profile has " + std::to_string(profile.size()) + " strategies for " +
                    std::to_string(tensor.players()) + " players");
  }
  for (int j = 0; j < tensor.players(); ++j) {
    if (j == skip) continue;
    require_same_basis(*tensor.basis(), *profile[j].basis());
  }
}

/// contract_all_but over plain matrices (no feasibility requirement); used
/// for difference functionals such as chi_a - chi_b.
inline ComplexMatrix contract_all_but_raw(const PayoffTensor& tensor, int player,
                                          std::span<const ComplexMatrix* const> profile,
                                          int payoff_of) {
  const int s = tensor.basis_size();
  ComplexMatrix t = tensor.matrix(payoff_of);
  for (int j = tensor.players() - 1; j > player; --j) t = contract_last(t, *profile[j], s);
  for (int j = 0; j < player; ++j) t = contract_first(t, *profile[j], s);
  return t;
}

}  // namespace detail

/// Contracts every player except `player` (whose entry in `profile` is
/// ignored) against player `payoff_of`'s coefficients, leaving C with
/// P = sum_{ab} chi_ab C_ab.
inline ComplexMatrix contract_all_but(const PayoffTensor& tensor, int player,
                                      std::span<const ChiMatrix> profile, int payoff_of) {
  detail::check_profile(tensor, profile, player);
  std::vector<const ComplexMatrix*> mats;
  for (const auto& c : profile) mats.push_back(&c.matrix());
  return detail::contract_all_but_raw(tensor, player, mats, payoff_of);
}

/// The full complex contraction sum chi^1 .. chi^N A^k, one entry per player.
inline std::vector<Complex> contract_payoff(const PayoffTensor& tensor,
                                            std::span<const ChiMatrix> profile) {
  detail::check_profile(tensor, profile, -1);
  const int s = tensor.basis_size();
  std::vector<Complex> out;
  for (int k = 0; k < tensor.players(); ++k) {
    ComplexMatrix t = tensor.matrix(k);
    for (int j = tensor.players() - 1; j >= 1; --j) t = detail::contract_last(t, profile[j].matrix(), s);
    out.push_back((t.cwiseProduct(profile[0].matrix())).sum());
  }
  return out;
}

/// Largest |Im| of the raw contraction tolerated before the payoff is
/// declared non-real.
inline constexpr double kRealityTolerance = 1e-9;

/// Payoffs P_k as real numbers; throws NonRealPayoff if the contraction
/// leaves an imaginary residue above tolerance.
inline std::vector<double> evaluate_payoff_chi(const PayoffTensor& tensor,
                                               std::span<const ChiMatrix> profile) {
  std::vector<double> out;
  for (const Complex& z : contract_payoff(tensor, profile)) {
    if (std::abs(z.imag()) > kRealityTolerance * std::max(1.0, std::abs(z.real()))) {
      throw Error(ErrorKind::NonRealPayoff,
                  "payoff contraction has imaginary part " + std::to_string(z.imag()), z.imag());
    }
    out.push_back(z.real());
  }
  return out;
}

/// P_k = tr(R^k pi) with pi the state after every player's channel.
inline std::vector<double> evaluate_payoff_direct(const StaticQuantumGame& game,
                                                  std::span<const KrausChannel> channels) {
  if (static_cast<int>(channels.size()) != game.players()) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(game.players()) + " channels, got " +
                    std::to_string(channels.size()));
  }
  for (const auto& c : channels) {
    if (c.dim() != game.local_dim()) {
      throw Error(ErrorKind::DimensionMismatch, "channel dimension does not match the game");
    }
  }
  const ComplexMatrix pi = apply_channels(game.rho(), channels);
  std::vector<double> out;
  for (int k = 0; k < game.players(); ++k) out.push_back((game.payoff_op(k) * pi).trace().real());
  return out;
}

}  // namespace qgame
