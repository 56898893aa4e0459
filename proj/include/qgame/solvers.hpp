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
 * Equilibrium computations on payoff tensors.
 *
 * Every value reported here is certified. Best responses come with a dual
 * upper bound, saddle values with a pair of bounds v_lower <= v <= v_upper
 * obtained from best responses, and Nash profiles with the largest regret
 * any player could still gain (again bounded from above). Iterative solvers
 * never throw on hitting their iteration cap; they return converged = false
 * together with the best certificate found.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qgame/channels.hpp"
#include "qgame/detail/strategy_sdp.hpp"
#include "qgame/game_core.hpp"

namespace qgame {

namespace detail {

/// Pointer view of a profile with `skip` left empty. Accepts either a full
/// profile (entry `skip` ignored) or one that omits `skip`.
inline std::vector<const ComplexMatrix*> opponent_view(const PayoffTensor& tensor, int skip,
                                                       std::span<const ChiMatrix> profile) {
  const int n = tensor.players();
  if (skip < 0 || skip >= n) {
    throw Error(ErrorKind::InvalidArgument, "player index " + std::to_string(skip) +
                                                " out of range for " + std::to_string(n) +
                                                " players");
  }
  const auto size = static_cast<int>(profile.size());
  if (size != n && size != n - 1) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(n - 1) + " opponent strategies, got " +
                    std::to_string(size));
  }
  std::vector<const ComplexMatrix*> out(n, nullptr);
  int src = 0;
  for (int j = 0; j < n; ++j) {
    if (j == skip) {
      if (size == n) ++src;
      continue;
    }
    require_same_basis(*tensor.basis(), *profile[src].basis());
    out[j] = &profile[src].matrix();
    ++src;
  }
  return out;
}

inline ComplexMatrix hermitize_coefficients(const ComplexMatrix& c) {
  return (c.transpose() + c.conjugate()) / 2.0;
}

}  // namespace detail

/// H with P_{payoff_of}(chi, others) = tr(chi H) for every chi of `player`.
/// `profile` holds either all N strategies (entry `player` ignored) or the
/// N - 1 opponents in player order. payoff_of defaults to `player`.
inline ComplexMatrix effective_hermitian_payoff(const PayoffTensor& tensor, int player,
                                                std::span<const ChiMatrix> profile,
                                                int payoff_of = -1) {
  const auto view = detail::opponent_view(tensor, player, profile);
  const int k = payoff_of < 0 ? player : payoff_of;
  return detail::hermitize_coefficients(detail::contract_all_but_raw(tensor, player, view, k));
}

struct BestResponse {
  ChiMatrix chi;
  double value = 0.0;
  double upper_bound = 0.0;   // certified bound on the true maximum
  double stationarity = 0.0;  // ||P_Omega(chi + H/||H||) - chi||_F
  int iterations = 0;
  bool converged = false;

  double gap() const { return upper_bound - value; }
};

/// Maximizes tr(chi H) over the strategy set of `basis`.
inline BestResponse best_response_to_operator(const BasisPtr& basis, const ComplexMatrix& h,
                                              double tol = 1e-9) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "best_response needs tol > 0");
  if (h.rows() != basis->size() || h.cols() != basis->size()) {
    throw Error(ErrorKind::DimensionMismatch, "effective payoff has the wrong size");
  }
  const ComplexMatrix interior = depolarizing_chi(basis).matrix();
  const auto lm = detail::maximize_linear(*basis, h, interior, tol);
  double stationarity = 0.0;
  const double scale = h.norm();
  if (scale > 0.0) {
    const auto proj = detail::project_to_strategy_set(*basis, lm.chi + hermitian_part(h) / scale,
                                                      interior);
    stationarity = (proj.chi - lm.chi).norm();
  }
  return BestResponse{ChiMatrix(basis, lm.chi), lm.value, lm.upper_bound, stationarity,
                      lm.iterations, lm.converged};
}

inline BestResponse best_response(const PayoffTensor& tensor, int player,
                                  std::span<const ChiMatrix> profile, double tol = 1e-9) {
  return best_response_to_operator(tensor.basis(),
                                   effective_hermitian_payoff(tensor, player, profile), tol);
}

// ---------------------------------------------------------------------------
// Zero-sum saddle points
// ---------------------------------------------------------------------------

struct SaddleOptions {
  double tol = 1e-3;
  int max_iter = 100000;
  /// Extragradient step as a fraction of 1 / ||bilinear form||.
  double step_scale = 0.5;
  int checkpoint_every = 20;
};

struct SaddleResult {
  double v_lower = -std::numeric_limits<double>::infinity();
  double v_upper = std::numeric_limits<double>::infinity();
  StrategyProfile strategies;
  int iterations = 0;
  bool converged = false;

  double gap() const { return v_upper - v_lower; }
};

namespace detail {

/// Spectral norm of the bilinear form (chi, xi) -> P_I, with the tensor
/// reshaped to K[(alpha, beta), (gamma, delta)] = A[(alpha, gamma), (beta, delta)].
inline double bilinear_norm(const ComplexMatrix& a, int s) {
  ComplexMatrix k(s * s, s * s);
  for (int alpha = 0; alpha < s; ++alpha)
    for (int beta = 0; beta < s; ++beta)
      for (int gamma = 0; gamma < s; ++gamma)
        for (int delta = 0; delta < s; ++delta)
          k(alpha * s + beta, gamma * s + delta) = a(alpha * s + gamma, beta * s + delta);
  Eigen::JacobiSVD<ComplexMatrix> svd(k);
  return svd.singularValues()(0);
}

inline ComplexMatrix project(const OperatorBasis& basis, const ComplexMatrix& target,
                             const ComplexMatrix& interior) {
  return project_to_strategy_set(basis, target, interior, 1e-11, 2000).chi;
}

inline void require_zero_sum(const PayoffTensor& tensor) {
  if (tensor.players() != 2) {
    throw Error(ErrorKind::ValidationError, "saddle-point solving needs exactly two players");
  }
  const double residual = (tensor.matrix(0) + tensor.matrix(1)).norm();
  if (residual > kFeasibilityTolerance * std::max(1.0, tensor.matrix(0).norm())) {
    throw Error(ErrorKind::ValidationError,
                "game is not zero-sum (||A^I + A^II||_F = " + std::to_string(residual) + ")",
                residual);
  }
}

}  // namespace detail

/// Extragradient on the bilinear game max_chi min_xi P_I(chi, xi) with
/// uniformly averaged iterates. At every checkpoint both the running
/// average and the last iterate are scored by certified best responses:
///   v_lower = min_xi P_I(chi, xi) >= -(dual bound of player II's reply),
///   v_upper = max_chi P_I(chi, xi) <= dual bound of player I's reply.
/// The best bounds are kept, so they move monotonically, and the returned
/// strategies are the ones that attain them.
inline SaddleResult solve_zero_sum(const PayoffTensor& tensor, const SaddleOptions& opts = {}) {
  detail::require_zero_sum(tensor);
  if (!(opts.tol > 0.0) || opts.max_iter < 0 || !(opts.step_scale > 0.0) ||
      opts.checkpoint_every < 1) {
    throw Error(ErrorKind::InvalidArgument, "invalid saddle-point options");
  }
  const BasisPtr& basis = tensor.basis();
  const int s = basis->size();
  const ComplexMatrix dep = depolarizing_chi(basis).matrix();
  const double norm = detail::bilinear_norm(tensor.matrix(0), s);
  const double eta = norm > 0.0 ? opts.step_scale / norm : 1.0;

  // H_I(xi): player I's gradient; H_II(chi) = -(gradient of P_I in xi).
  auto grad_first = [&](const ComplexMatrix& xi) {
    const std::vector<const ComplexMatrix*> view{nullptr, &xi};
    return detail::hermitize_coefficients(detail::contract_all_but_raw(tensor, 0, view, 0));
  };
  auto grad_second = [&](const ComplexMatrix& chi) {
    const std::vector<const ComplexMatrix*> view{&chi, nullptr};
    return detail::hermitize_coefficients(detail::contract_all_but_raw(tensor, 1, view, 0));
  };

  SaddleResult out;
  ComplexMatrix best_x = dep, best_y = dep;
  auto score = [&](const ComplexMatrix& x, const ComplexMatrix& y) {
    const BestResponse reply_second =
        best_response_to_operator(basis, -grad_second(x), 1e-10);
    const double lower = 0.0 - reply_second.upper_bound;
    if (lower > out.v_lower) {
      out.v_lower = lower;
      best_x = x;
    }
    const BestResponse reply_first = best_response_to_operator(basis, grad_first(y), 1e-10);
    if (reply_first.upper_bound < out.v_upper) {
      out.v_upper = reply_first.upper_bound;
      best_y = y;
    }
  };

  ComplexMatrix x = dep, y = dep;
  ComplexMatrix sum_x = ComplexMatrix::Zero(s, s), sum_y = ComplexMatrix::Zero(s, s);
  score(x, y);
  int it = 0;
  while (out.gap() > opts.tol && it < opts.max_iter) {
    ++it;
    const ComplexMatrix xh = detail::project(*basis, x + eta * grad_first(y), dep);
    const ComplexMatrix yh = detail::project(*basis, y - eta * grad_second(x), dep);
    x = detail::project(*basis, x + eta * grad_first(yh), dep);
    y = detail::project(*basis, y - eta * grad_second(xh), dep);
    sum_x += xh;
    sum_y += yh;
    if (it % opts.checkpoint_every == 0 || it == opts.max_iter) {
      const double w = 1.0 / it;
      score(detail::make_feasible(*basis, sum_x * w, dep),
            detail::make_feasible(*basis, sum_y * w, dep));
      if (out.gap() > opts.tol) score(x, y);
    }
  }
  out.iterations = it;
  out.converged = out.gap() <= opts.tol;
  out.strategies = {ChiMatrix(basis, best_x), ChiMatrix(basis, best_y)};
  return out;
}

inline SaddleResult solve_zero_sum(const StaticQuantumGame& game, const SaddleOptions& opts = {}) {
  if (!game.zero_sum()) {
    throw Error(ErrorKind::ValidationError, "game is not marked zero-sum");
  }
  return solve_zero_sum(build_payoff_tensor(game, matrix_unit_basis(game.local_dim())), opts);
}

// ---------------------------------------------------------------------------
// Nash equilibria
// ---------------------------------------------------------------------------

struct NashOptions {
  double damping = 0.5;  // step as a fraction of 1 / (Lipschitz bound)
  double tol = 1e-4;
  int max_iter = 100000;
  int checkpoint_every = 20;
  std::optional<StrategyProfile> init;  // default: everyone depolarizing
};

struct NashResult {
  StrategyProfile profile;
  std::vector<double> payoffs;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

/// max_k [certified best-response bound for k - P_k(profile)]; an upper
/// bound on the largest gain any single player could make by deviating.
inline double nash_residual(const PayoffTensor& tensor, std::span<const ChiMatrix> profile) {
  const std::vector<double> payoffs = evaluate_payoff_chi(tensor, profile);
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < tensor.players(); ++k) {
    const BestResponse br = best_response(tensor, k, profile, 1e-10);
    worst = std::max(worst, br.upper_bound - payoffs[k]);
  }
  return worst;
}

namespace detail {

inline double nash_lipschitz(const PayoffTensor& tensor) {
  const int n = tensor.players();
  const int s = tensor.basis_size();
  double l = 0.0;
  for (int k = 0; k < n; ++k) {
    if (n == 2) {
      l = std::max(l, bilinear_norm(tensor.matrix(k), s));
    } else {
      l = std::max(l, tensor.matrix(k).norm() * std::pow(tensor.local_dim(), n - 2));
    }
  }
  return l;
}

}  // namespace detail

/// Simultaneous extragradient ascent of every player on their own payoff.
/// Checkpoints score both the last iterate and the running average by
/// nash_residual and keep whichever profile has the smaller residual.
inline NashResult nash_iterate(const PayoffTensor& tensor, const NashOptions& opts = {}) {
  if (!(opts.damping > 0.0) || !(opts.tol > 0.0) || opts.max_iter < 0 ||
      opts.checkpoint_every < 1) {
    throw Error(ErrorKind::InvalidArgument, "invalid Nash options");
  }
  const int n = tensor.players();
  const BasisPtr& basis = tensor.basis();
  const int s = basis->size();
  const ComplexMatrix dep = depolarizing_chi(basis).matrix();

  std::vector<ComplexMatrix> current(n, dep);
  if (opts.init) {
    if (static_cast<int>(opts.init->size()) != n) {
      throw Error(ErrorKind::DimensionMismatch, "initial profile has the wrong number of players");
    }
    for (int k = 0; k < n; ++k) {
      require_same_basis(*basis, *(*opts.init)[k].basis());
      current[k] = (*opts.init)[k].matrix();
    }
  }
  const double lipschitz = detail::nash_lipschitz(tensor);
  const double eta = lipschitz > 0.0 ? opts.damping / lipschitz : 1.0;

  auto gradients = [&](const std::vector<ComplexMatrix>& profile) {
    std::vector<const ComplexMatrix*> view;
    for (const auto& m : profile) view.push_back(&m);
    std::vector<ComplexMatrix> g(n);
    for (int k = 0; k < n; ++k)
      g[k] = detail::hermitize_coefficients(detail::contract_all_but_raw(tensor, k, view, k));
    return g;
  };
  auto to_profile = [&](const std::vector<ComplexMatrix>& mats) {
    StrategyProfile p;
    for (const auto& m : mats) p.emplace_back(basis, m);
    return p;
  };

  NashResult out;
  std::vector<ComplexMatrix> best = current;
  auto score = [&](const std::vector<ComplexMatrix>& mats) {
    const StrategyProfile p = to_profile(mats);
    const double r = nash_residual(tensor, p);
    if (r < out.residual) {
      out.residual = r;
      best = mats;
    }
  };

  std::vector<ComplexMatrix> sum(n, ComplexMatrix::Zero(s, s));
  score(current);
  int it = 0;
  while (out.residual > opts.tol && it < opts.max_iter) {
    ++it;
    const auto g = gradients(current);
    std::vector<ComplexMatrix> half(n);
    for (int k = 0; k < n; ++k) half[k] = detail::project(*basis, current[k] + eta * g[k], dep);
    const auto gh = gradients(half);
    for (int k = 0; k < n; ++k) {
      current[k] = detail::project(*basis, current[k] + eta * gh[k], dep);
      sum[k] += half[k];
    }
    if (it % opts.checkpoint_every == 0 || it == opts.max_iter) {
      score(current);
      if (out.residual > opts.tol) {
        std::vector<ComplexMatrix> avg(n);
        for (int k = 0; k < n; ++k) avg[k] = detail::make_feasible(*basis, sum[k] / it, dep);
        score(avg);
      }
    }
  }
  out.iterations = it;
  out.profile = to_profile(best);
  out.payoffs = evaluate_payoff_chi(tensor, out.profile);
  out.converged = out.residual <= opts.tol;
  return out;
}

inline NashResult nash_iterate(const StaticQuantumGame& game, const NashOptions& opts = {}) {
  return nash_iterate(build_payoff_tensor(game, matrix_unit_basis(game.local_dim())), opts);
}

// ---------------------------------------------------------------------------
// Redundancy of strategies
// ---------------------------------------------------------------------------

struct RedundancyWitness {
  bool redundant = true;
  /// Full profile with chi_a in the player's slot and the witnessing
  /// opponents elsewhere (empty when redundant).
  StrategyProfile profile;
  double payoff_a = 0.0;
  double payoff_b = 0.0;

  double difference() const { return payoff_a - payoff_b; }
};

/// Smallest |P(chi_a, xi) - P(chi_b, xi)| accepted as a witness.
inline constexpr double kWitnessThreshold = 1e-8;

/// Searches for opponents xi that tell chi_a and chi_b apart in `player`'s
/// payoff. The difference D(xi) is multilinear in the opponents, so each
/// opponent in turn is moved from the depolarizing point along the
/// trace-preserving part of the gradient of D, by half the distance to the
/// boundary of the PSD cone and in the direction that increases |D|. When
/// that gradient vanishes for every opponent at every trial point, D is
/// constant on the affine hull of the strategy sets and the pair is
/// redundant unless the constant is itself non-zero.
inline RedundancyWitness redundancy_witness(const PayoffTensor& tensor, int player,
                                            const ChiMatrix& chi_a, const ChiMatrix& chi_b,
                                            std::uint64_t seed = 0) {
  const int n = tensor.players();
  if (player < 0 || player >= n) {
    throw Error(ErrorKind::InvalidArgument, "player index out of range");
  }
  const BasisPtr& basis = tensor.basis();
  require_same_basis(*basis, *chi_a.basis());
  require_same_basis(*basis, *chi_b.basis());
  const int s = basis->size();
  const ComplexMatrix dep = depolarizing_chi(basis).matrix();
  const ComplexMatrix delta = chi_a.matrix() - chi_b.matrix();
  const ComplexMatrix zero_affine = basis->project_affine(ComplexMatrix::Zero(s, s));

  auto difference = [&](const std::vector<ComplexMatrix>& profile) {
    std::vector<const ComplexMatrix*> view;
    for (const auto& m : profile) view.push_back(&m);
    view[player] = &delta;
    const int last = player == 0 ? 1 : 0;
    const ComplexMatrix c = detail::contract_all_but_raw(tensor, last, view, player);
    return (c.cwiseProduct(profile[last])).sum().real();
  };

  auto greedy = [&](std::vector<ComplexMatrix> profile) {
    for (int j = 0; j < n; ++j) {
      if (j == player) continue;
      std::vector<const ComplexMatrix*> view;
      for (const auto& m : profile) view.push_back(&m);
      view[player] = &delta;
      const ComplexMatrix g = detail::hermitize_coefficients(
          detail::contract_all_but_raw(tensor, j, view, player));
      const ComplexMatrix tangent = hermitian_part(basis->project_affine(g) - zero_affine);
      const double op_norm = tangent.norm() > 0.0
                                 ? hermitian_eig(tangent).eigenvalues.cwiseAbs().maxCoeff()
                                 : 0.0;
      if (op_norm <= 1e-14) continue;
      const double base = difference(profile);
      const double room = min_eigenvalue(profile[j]);
      const double t = 0.5 * room / op_norm;
      profile[j] = hermitian_part(profile[j] + (base >= 0.0 ? t : -t) * tangent);
    }
    return profile;
  };

  std::vector<std::vector<ComplexMatrix>> starts;
  starts.emplace_back(n, dep);
  if (n > 2) {
    // Multilinear D can have a critical point at the all-depolarizing
    // profile; perturbed starting points (seeded) avoid it.
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<ComplexMatrix> p(n, dep);
      for (int j = 0; j < n; ++j) {
        if (j == player) continue;
        const ComplexMatrix g = kraus_to_chi(random_cptp(basis->dim(), 2, rng()), basis).matrix();
        p[j] = 0.5 * dep + 0.5 * g;
      }
      starts.push_back(std::move(p));
    }
  }

  RedundancyWitness out;
  for (auto& start : starts) {
    start[player] = chi_a.matrix();
    std::vector<ComplexMatrix> profile = greedy(start);
    profile[player] = chi_a.matrix();
    if (std::abs(difference(profile)) <= kWitnessThreshold) continue;
    StrategyProfile witness;
    for (int j = 0; j < n; ++j) witness.emplace_back(basis, profile[j]);
    StrategyProfile with_b = witness;
    with_b[player] = chi_b;
    out.payoff_a = evaluate_payoff_chi(tensor, witness)[player];
    out.payoff_b = evaluate_payoff_chi(tensor, with_b)[player];
    if (std::abs(out.payoff_a - out.payoff_b) <= kWitnessThreshold) continue;
    out.redundant = false;
    out.profile = std::move(witness);
    return out;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classical matrix games
// ---------------------------------------------------------------------------

struct MatrixGameSolution {
  double value = 0.0;
  RealVector row_strategy;  // maximizer
  RealVector col_strategy;  // minimizer
  double lower = 0.0;       // min_j (p^T A)_j
  double upper = 0.0;       // max_i (A q)_i
  bool converged = false;

  double gap() const { return upper - lower; }
};

/// Value and optimal mixed strategies of the zero-sum game in which the row
/// player receives A(i, j). Solved as the linear program
/// max 1^T y s.t. B y <= 1, y >= 0 with B = A + shift > 0, by a dense
/// tableau simplex with Bland's rule; the row strategy is read from the
/// final reduced costs of the slack variables.
inline MatrixGameSolution classical_minimax(const RealMatrix& a, double tol = 1e-9) {
  if (a.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty payoff matrix");
  if (!a.allFinite()) throw Error(ErrorKind::InvalidArgument, "payoff matrix has non-finite entries");
  const auto m = a.rows();
  const auto n = a.cols();
  const double shift = 1.0 - a.minCoeff();
  const RealMatrix b = a.array() + shift;

  // Rows 0..m-1 are constraints, row m the objective; columns are
  // y (n), slacks (m), rhs.
  RealMatrix t = RealMatrix::Zero(m + 1, n + m + 1);
  t.block(0, 0, m, n) = b;
  t.block(0, n, m, m).setIdentity();
  t.col(n + m).head(m).setOnes();
  t.row(m).head(n).setConstant(-1.0);
  std::vector<Eigen::Index> basic(m);
  for (Eigen::Index i = 0; i < m; ++i) basic[i] = n + i;

  const double eps = 1e-12;
  const int cap = 50 * static_cast<int>(m + n) + 1000;
  bool optimal = false;
  for (int iter = 0; iter < cap; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j)
      if (t(m, j) < -eps) {
        enter = j;
        break;
      }
    if (enter < 0) {
      optimal = true;
      break;
    }
    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) <= eps) continue;
      const double ratio = t(i, n + m) / t(i, enter);
      if (ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 && leave >= 0 && basic[i] < basic[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) break;  // unbounded; impossible for B > 0
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basic[leave] = enter;
  }

  RealVector y = RealVector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i)
    if (basic[i] < n) y(basic[i]) = t(i, n + m);
  RealVector x = t.row(m).segment(n, m).transpose();
  y = y.cwiseMax(0.0);
  x = x.cwiseMax(0.0);

  MatrixGameSolution out;
  out.col_strategy = y.sum() > 0.0 ? RealVector(y / y.sum()) : RealVector::Constant(n, 1.0 / n);
  out.row_strategy = x.sum() > 0.0 ? RealVector(x / x.sum()) : RealVector::Constant(m, 1.0 / m);
  out.lower = (out.row_strategy.transpose() * a).minCoeff();
  out.upper = (a * out.col_strategy).maxCoeff();
  out.value = 0.5 * (out.lower + out.upper);
  out.converged = optimal && out.gap() <= tol;
  return out;
}

}  // namespace qgame
