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
 * Optimization over a player's strategy set
 *
 *     Omega = { chi >= 0 : T(chi) = I },
 *
 * the intersection of the PSD cone with the trace-preservation affine set.
 *
 * - project_to_strategy_set: Euclidean projection by Dykstra's alternating
 *   projections, finished with an exact feasibility restoration.
 * - maximize_linear: max <H, chi> over Omega by a primal-dual interior
 *   point method (HKM direction, Mehrotra predictor-corrector). The dual
 *
 *       min <I, Lambda>  s.t.  G(Lambda) - H >= 0
 *
 *   supplies a certified upper bound on the optimum, so every returned
 *   value comes with a duality gap. The central path ends at the analytic
 *   centre of the optimal face, which makes ties resolve deterministically
 *   toward the interior (the depolarizing side) of the strategy set.
 */

#include <algorithm>
#include <cmath>
#include <limits>

#include "qgame/channels.hpp"

namespace qgame::detail {

struct ProjectionResult {
  ComplexMatrix chi;
  int iterations = 0;
  double last_change = 0.0;
  bool converged = false;
};

/// Maps a PSD matrix close to the strategy set onto it exactly. If T(chi) is
/// not positive definite, chi is first blended toward the depolarizing point.
inline ComplexMatrix make_feasible(const OperatorBasis& basis, const ComplexMatrix& chi,
                                   const ComplexMatrix& interior) {
  ComplexMatrix x = psd_project(hermitian_part(chi));
  for (double blend : {0.0, 1e-12, 1e-9, 1e-6, 1e-3, 1e-1, 1.0}) {
    const ComplexMatrix trial = (1.0 - blend) * x + blend * interior;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(basis.tp_operator(trial)),
                                                     Eigen::EigenvaluesOnly);
    if (eig.eigenvalues()(0) > 1e-12) return restore_trace_preservation(trial, basis);
  }
  return interior;
}

/// Dykstra's algorithm for the nearest point of Omega to `target`. The
/// affine set needs no correction term; the PSD step carries one.
inline ProjectionResult project_to_strategy_set(const OperatorBasis& basis,
                                                const ComplexMatrix& target,
                                                const ComplexMatrix& interior,
                                                double tol = 1e-12, int max_iter = 50000) {
  ProjectionResult out;
  ComplexMatrix x = hermitian_part(target);
  ComplexMatrix correction = ComplexMatrix::Zero(x.rows(), x.cols());
  const double scale = std::max(1.0, x.norm());
  for (int k = 1; k <= max_iter; ++k) {
    const ComplexMatrix y = basis.project_affine(x);
    const ComplexMatrix next = psd_project(y + correction);
    correction = y + correction - next;
    out.last_change = (next - x).norm();
    x = next;
    out.iterations = k;
    if (out.last_change <= tol * scale) {
      out.converged = true;
      break;
    }
  }
  out.chi = make_feasible(basis, x, interior);
  return out;
}

struct LinearMaximum {
  ComplexMatrix chi;
  double value = 0.0;        // <H, chi> at the returned feasible chi
  double upper_bound = 0.0;  // certified: max over Omega <= upper_bound
  int iterations = 0;
  bool converged = false;

  double gap() const { return upper_bound - value; }
};

namespace ipm {

/// Largest step alpha with x + alpha dx still PSD (infinity if unbounded).
inline double max_step(const ComplexMatrix& x, const ComplexMatrix& dx) {
  Eigen::LLT<ComplexMatrix> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const ComplexMatrix l = llt.matrixL();
  const ComplexMatrix linv = l.triangularView<Eigen::Lower>().solve(
      ComplexMatrix::Identity(x.rows(), x.cols()));
  const ComplexMatrix w = hermitian_part(linv * dx * linv.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(w, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues()(0);
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

}  // namespace ipm

/// max <H, chi> over the strategy set, with a duality-gap certificate.
inline LinearMaximum maximize_linear(const OperatorBasis& basis, const ComplexMatrix& h,
                                     const ComplexMatrix& interior, double tol = 1e-9,
                                     int max_iter = 200) {
  const int m = basis.constraint_count();
  const auto dim = static_cast<Eigen::Index>(basis.size());
  const ComplexMatrix herm = hermitian_part(h);
  LinearMaximum out;

  // y_I: coordinates of Lambda = I (the first n constraint rows are E_jj).
  RealVector y_identity = RealVector::Zero(m);
  for (int j = 0; j < basis.dim(); ++j) y_identity(j) = 1.0;
  auto adjoint_map = [&](const RealVector& y) {
    ComplexMatrix out_mat = ComplexMatrix::Zero(dim, dim);
    for (int i = 0; i < m; ++i) out_mat += y(i) * basis.constraint_operator(i);
    return out_mat;
  };
  auto forward_map = [&](const ComplexMatrix& x) {
    RealVector v(m);
    for (int i = 0; i < m; ++i) v(i) = real_inner(basis.constraint_operator(i), x);
    return v;
  };
  RealVector b(m);
  for (int i = 0; i < m; ++i) b(i) = basis.constraint_rhs(i);
  const ComplexMatrix g_identity = adjoint_map(y_identity);
  const double g_identity_min = min_eigenvalue(g_identity);

  const double scale = herm.norm();
  if (scale == 0.0) {
    out.chi = interior;
    out.converged = true;
    return out;
  }
  const ComplexMatrix c = herm / scale;
  const double tol_scaled = tol / scale;

  ComplexMatrix x = interior;
  RealVector y = ((std::max(max_eigenvalue(c), 0.0) + 1.0) / g_identity_min) * y_identity;
  ComplexMatrix z = hermitian_part(adjoint_map(y) - c);
  const double nn = static_cast<double>(dim);

  std::vector<ComplexMatrix> x_g_zinv(m);
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it;
    const RealVector rp = b - forward_map(x);
    const ComplexMatrix rd = hermitian_part(c - adjoint_map(y) + z);
    const double mu = real_inner(x, z) / nn;
    if (mu * nn <= 0.05 * tol_scaled && rp.norm() <= 1e-10 && rd.norm() <= 1e-10) break;
    if (!std::isfinite(mu)) break;

    Eigen::LLT<ComplexMatrix> zllt(z);
    if (zllt.info() != Eigen::Success) break;
    const ComplexMatrix zinv = zllt.solve(ComplexMatrix::Identity(dim, dim));
    for (int j = 0; j < m; ++j) x_g_zinv[j] = x * basis.constraint_operator(j) * zinv;
    RealMatrix schur(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) schur(i, j) = real_inner(basis.constraint_operator(i), x_g_zinv[j]);
    schur = 0.5 * (schur + schur.transpose()).eval();
    Eigen::PartialPivLU<RealMatrix> schur_lu(schur);

    const ComplexMatrix x_rd_zinv = x * rd * zinv;
    auto direction = [&](double sigma, const ComplexMatrix& second_order, RealVector& dy,
                         ComplexMatrix& dx, ComplexMatrix& dz) {
      const ComplexMatrix base = sigma * mu * zinv - x + x_rd_zinv + second_order;
      dy = schur_lu.solve(forward_map(base) - rp);
      dz = hermitian_part(adjoint_map(dy) - rd);
      dx = hermitian_part(sigma * mu * zinv - x + second_order - x * dz * zinv);
    };

    RealVector dy;
    ComplexMatrix dx, dz;
    const ComplexMatrix none = ComplexMatrix::Zero(dim, dim);
    direction(0.0, none, dy, dx, dz);
    const double ap = std::min(1.0, ipm::max_step(x, dx));
    const double ad = std::min(1.0, ipm::max_step(z, dz));
    const double mu_aff = real_inner(x + ap * dx, z + ad * dz) / nn;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    const ComplexMatrix second = -(dx * dz * zinv);
    direction(sigma, second, dy, dx, dz);
    const double step_p = std::min(1.0, 0.98 * ipm::max_step(x, dx));
    const double step_d = std::min(1.0, 0.98 * ipm::max_step(z, dz));
    if (!(step_p > 0.0) || !(step_d > 0.0)) break;
    x = hermitian_part(x + step_p * dx);
    y += step_d * dy;
    z = hermitian_part(z + step_d * dz);
  }

  out.chi = make_feasible(basis, x, interior);
  out.value = real_inner(herm, out.chi);

  // Certified bound: shift the dual point along G(I) until it is feasible.
  RealVector y_cert = scale * y;
  const double zmin = min_eigenvalue(hermitian_part(adjoint_map(y_cert) - herm));
  if (zmin < 0.0) y_cert += (-zmin / g_identity_min) * y_identity;
  out.upper_bound = b.dot(y_cert);
  out.converged = out.gap() <= tol;
  return out;
}

}  // namespace qgame::detail
