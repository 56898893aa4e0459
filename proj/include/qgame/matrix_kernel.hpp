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
 * Dense complex linear algebra shared by every other module: Kronecker
 * products, adjoints, hermitian eigendecomposition and the projection onto
 * the positive semidefinite cone.
 *
 * Index convention: all indices are 0-based. The 1-based matrix unit
 * n_[ij] of an n x n space has flat index (i-1)*n + (j-1), and
 * n_[ij] (x) n_[kl] = (n^2)_[(i-1)n+k, (j-1)n+l] holds for tensor_product.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <span>
#include <string>

#include "qgame/errors.hpp"

namespace qgame {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance for accepting a matrix as hermitian.
inline constexpr double kHermitianTolerance = 1e-8;

/// Largest matrix dimension any operation may produce. The environment
/// variable QGAME_MAX_DIM overrides the default of 256.
inline std::size_t max_dimension() {
  static const std::size_t value = [] {
    if (const char* env = std::getenv("QGAME_MAX_DIM")) {
      char* end = nullptr;
      const unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end != env && parsed > 0) return static_cast<std::size_t>(parsed);
    }
    return std::size_t{256};
  }();
  return value;
}

inline void check_dimension(std::size_t rows, std::size_t cols,
                            const char* what) {
  const std::size_t limit = max_dimension();
  if (rows > limit || cols > limit) {
    throw Error(ErrorKind::SizeLimit,
                std::string(what) + " requires a " + std::to_string(rows) +
                    "x" + std::to_string(cols) +
                    " matrix; the configured maximum dimension is " +
                    std::to_string(limit) + " (set QGAME_MAX_DIM to raise it)",
                static_cast<double>(std::max(rows, cols)));
  }
}

inline bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const Complex z = a.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

/// Kronecker product a (x) b. Row index of the result is
/// i_a * b.rows() + i_b, column index likewise.
inline ComplexMatrix tensor_product(const ComplexMatrix& a,
                                    const ComplexMatrix& b) {
  const auto rows = static_cast<std::size_t>(a.rows() * b.rows());
  const auto cols = static_cast<std::size_t>(a.cols() * b.cols());
  check_dimension(rows, cols, "tensor_product");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Left-to-right Kronecker product of a list; the first factor is the most
/// significant index.
inline ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return ComplexMatrix::Identity(1, 1);
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    out = tensor_product(out, factors[k]);
  }
  return out;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return (a + a.adjoint()) / 2.0;
}

/// ||a - a^dagger||_F.
inline double hermiticity_residual(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).norm();
}

inline bool is_hermitian(const ComplexMatrix& a,
                         double rel_tol = kHermitianTolerance) {
  return a.rows() == a.cols() &&
         hermiticity_residual(a) <= rel_tol * std::max(1.0, a.norm());
}

/// 0-based matrix unit: a single 1 at (i, j) of an n x n matrix.
inline ComplexMatrix matrix_unit(int n, int i, int j) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

/// Real Frobenius inner product Re tr(a^dagger b).
inline double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

struct HermitianEigenDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns

  ComplexMatrix reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
           eigenvectors.adjoint();
  }
};

inline void require_hermitian(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::NotHermitian,
                std::string(what) + ": matrix is not square");
  }
  const double residual = hermiticity_residual(a);
  if (residual > kHermitianTolerance * std::max(1.0, a.norm())) {
    throw Error(ErrorKind::NotHermitian,
                std::string(what) + ": ||A - A^dagger||_F = " +
                    std::to_string(residual),
                residual);
  }
}

/// Eigendecomposition of a hermitian matrix (the hermitian part is used, so
/// tiny asymmetries within tolerance do not leak into the result).
inline HermitianEigenDecomposition hermitian_eig(const ComplexMatrix& a) {
  require_hermitian(a, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline double min_eigenvalue(const ComplexMatrix& a) {
  return hermitian_eig(a).eigenvalues(0);
}

inline double max_eigenvalue(const ComplexMatrix& a) {
  const auto eig = hermitian_eig(a);
  return eig.eigenvalues(eig.eigenvalues.size() - 1);
}

/// Nearest positive semidefinite matrix in Frobenius norm (negative
/// eigenvalues clipped to zero).
inline ComplexMatrix psd_project(const ComplexMatrix& a) {
  auto eig = hermitian_eig(a);
  eig.eigenvalues = eig.eigenvalues.cwiseMax(0.0);
  return hermitian_part(eig.reconstruct());
}

/// Hermitian inverse square root of a positive definite matrix.
inline ComplexMatrix inverse_sqrt_psd(const ComplexMatrix& a) {
  auto eig = hermitian_eig(a);
  if (eig.eigenvalues(0) <= 0.0) {
    throw Error(ErrorKind::InvalidArgument,
                "inverse square root of a singular matrix",
                eig.eigenvalues(0));
  }
  eig.eigenvalues = eig.eigenvalues.cwiseSqrt().cwiseInverse();
  return hermitian_part(eig.reconstruct());
}

/// Partial trace over the first (most significant) factor of C^d (x) C^d'.
inline ComplexMatrix partial_trace_first(const ComplexMatrix& x, int first_dim) {
  const Eigen::Index rest = x.rows() / first_dim;
  ComplexMatrix out = ComplexMatrix::Zero(rest, rest);
  for (int a = 0; a < first_dim; ++a) out += x.block(a * rest, a * rest, rest, rest);
  return out;
}

}  // namespace qgame
