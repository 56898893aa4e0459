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
 * Quantum channel representations: operator bases, Kraus channels and chi
 * matrices, together with the trace-preservation constraint
 *
 *     sum_{alpha,beta} conj(chi_{alpha beta}) E_alpha^dagger E_beta = I
 *
 * that carves a player's strategy set out of the positive hermitian
 * matrices.
 */

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgame/matrix_kernel.hpp"

namespace qgame {

/// Feasibility tolerance shared by chi matrices and Kraus channels.
inline constexpr double kFeasibilityTolerance = 1e-9;
/// Eigenvalues of chi below this count as zero when extracting Kraus operators.
inline constexpr double kRankThreshold = 1e-10;

/// A basis {E_alpha} of the n x n operators, alpha = 0 .. n^2-1.
///
/// Besides the elements and their Gram matrix, the basis caches the pieces of
/// the linearized trace-preservation system: a real-orthonormal basis {B_i}
/// of the n x n hermitian matrices and, for each, the hermitian operator G_i
/// on chi-space with <G_i, chi> = <B_i, T(chi)>, where
/// T(chi) = sum conj(chi_ab) E_a^dagger E_b.
class OperatorBasis {
 public:
  static std::shared_ptr<const OperatorBasis> create(
      std::vector<ComplexMatrix> elements, std::string name = "custom") {
    return std::shared_ptr<const OperatorBasis>(
        new OperatorBasis(std::move(elements), std::move(name)));
  }

  int dim() const { return n_; }
  int size() const { return n_ * n_; }
  const std::string& name() const { return name_; }
  bool is_matrix_units() const { return matrix_units_; }
  const ComplexMatrix& element(int alpha) const { return elements_[alpha]; }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const ComplexMatrix& gram() const { return gram_; }
  double gram_min_singular_value() const { return gram_min_sv_; }

  /// Coefficients e with op = sum_alpha e_alpha E_alpha.
  ComplexVector expand(const ComplexMatrix& op) const {
    if (op.rows() != n_ || op.cols() != n_) {
      throw Error(ErrorKind::DimensionMismatch,
                  "expand_in_basis: operator is " + std::to_string(op.rows()) +
                      "x" + std::to_string(op.cols()) + ", basis dimension is " +
                      std::to_string(n_));
    }
    if (matrix_units_) {
      ComplexVector e(size());
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) e(i * n_ + j) = op(i, j);
      return e;
    }
    ComplexVector rhs(size());
    for (int a = 0; a < size(); ++a) {
      rhs(a) = (elements_[a].conjugate().cwiseProduct(op)).sum();
    }
    return gram_solver_.solve(rhs);
  }

  ComplexMatrix combine(const ComplexVector& coeffs) const {
    ComplexMatrix out = ComplexMatrix::Zero(n_, n_);
    for (int a = 0; a < size(); ++a) out += coeffs(a) * elements_[a];
    return out;
  }

  /// T(chi) = sum_{alpha,beta} conj(chi_{alpha beta}) E_alpha^dagger E_beta.
  ComplexMatrix tp_operator(const ComplexMatrix& chi) const {
    if (matrix_units_) {
      // E_(ab)^dagger E_(cd) = delta_ac |b><d|, so T is a conjugated partial trace.
      return partial_trace_first(chi, n_).conjugate();
    }
    ComplexMatrix out = ComplexMatrix::Zero(n_, n_);
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b)
        out += std::conj(chi(a, b)) * products_[a * size() + b];
    return out;
  }

  /// Number of real equations in the linearized constraint system.
  int constraint_count() const { return static_cast<int>(herm_basis_.size()); }
  const ComplexMatrix& constraint_operator(int i) const { return constraint_ops_[i]; }
  /// Right-hand side b_i = <B_i, I>.
  double constraint_rhs(int i) const { return constraint_rhs_(i); }

  /// Residual vector r_i = <B_i, T(chi) - I>.
  RealVector constraint_residual(const ComplexMatrix& chi) const {
    const ComplexMatrix defect =
        tp_operator(chi) - ComplexMatrix::Identity(n_, n_);
    RealVector r(constraint_count());
    for (int i = 0; i < constraint_count(); ++i) r(i) = real_inner(herm_basis_[i], defect);
    return r;
  }

  /// Orthogonal projection of a hermitian chi onto the affine set T(chi) = I.
  ComplexMatrix project_affine(const ComplexMatrix& chi) const {
    const RealVector weights = constraint_gram_solver_.solve(constraint_residual(chi));
    ComplexMatrix out = chi;
    for (int i = 0; i < constraint_count(); ++i) out -= weights(i) * constraint_ops_[i];
    return hermitian_part(out);
  }

  /// Rank of the real-linear map chi -> T(chi) on hermitian n^2 x n^2
  /// matrices. The strategy set has real dimension n^4 - rank.
  int constraint_rank() const {
    const int big = size();
    RealMatrix rows(constraint_count(), big * big);
    for (int i = 0; i < constraint_count(); ++i) {
      rows.row(i) = hermitian_coordinates(constraint_ops_[i]).transpose();
    }
    Eigen::ColPivHouseholderQR<RealMatrix> qr(rows);
    qr.setThreshold(1e-10);
    return static_cast<int>(qr.rank());
  }

  int strategy_set_dimension() const { return size() * size() - constraint_rank(); }

  /// Orthonormal real coordinates of a hermitian matrix: diagonal entries,
  /// then sqrt(2) Re and sqrt(2) Im of each strictly upper entry.
  static RealVector hermitian_coordinates(const ComplexMatrix& h) {
    const Eigen::Index d = h.rows();
    RealVector v(d * d);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < d; ++i) v(k++) = h(i, i).real();
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = i + 1; j < d; ++j) {
        v(k++) = std::sqrt(2.0) * h(i, j).real();
        v(k++) = std::sqrt(2.0) * h(i, j).imag();
      }
    return v;
  }

  /// Element-wise equality of the two bases.
  bool same_as(const OperatorBasis& other, double tol = 1e-12) const {
    if (this == &other) return true;
    if (n_ != other.n_) return false;
    for (int a = 0; a < size(); ++a) {
      if ((elements_[a] - other.elements_[a]).norm() > tol) return false;
    }
    return true;
  }

 private:
  OperatorBasis(std::vector<ComplexMatrix> elements, std::string name)
      : elements_(std::move(elements)), name_(std::move(name)) {
    if (elements_.empty()) {
      throw Error(ErrorKind::SingularBasis, "operator basis has no elements");
    }
    n_ = static_cast<int>(elements_.front().rows());
    if (n_ < 1 || static_cast<int>(elements_.size()) != n_ * n_) {
      throw Error(ErrorKind::SingularBasis,
                  "an operator basis of dimension " + std::to_string(n_) +
                      " needs " + std::to_string(n_ * n_) + " elements, got " +
                      std::to_string(elements_.size()));
    }
    for (const auto& e : elements_) {
      if (e.rows() != n_ || e.cols() != n_ || !all_finite(e)) {
        throw Error(ErrorKind::SingularBasis,
                    "basis elements must be finite " + std::to_string(n_) +
                        "x" + std::to_string(n_) + " matrices");
      }
    }
    const int big = size();
    gram_.resize(big, big);
    for (int a = 0; a < big; ++a)
      for (int b = 0; b < big; ++b)
        gram_(a, b) = (elements_[a].conjugate().cwiseProduct(elements_[b])).sum();
    Eigen::JacobiSVD<ComplexMatrix> svd(gram_);
    gram_min_sv_ = svd.singularValues()(big - 1);
    if (gram_min_sv_ <= 1e-10) {
      throw Error(ErrorKind::SingularBasis,
                  "Gram matrix is singular (smallest singular value " +
                      std::to_string(gram_min_sv_) + ")",
                  gram_min_sv_);
    }
    gram_solver_.compute(gram_);

    matrix_units_ = true;
    for (int i = 0; i < n_ && matrix_units_; ++i)
      for (int j = 0; j < n_; ++j)
        if ((elements_[i * n_ + j] - matrix_unit(n_, i, j)).norm() != 0.0) {
          matrix_units_ = false;
          break;
        }

    products_.reserve(static_cast<std::size_t>(big) * big);
    for (int a = 0; a < big; ++a)
      for (int b = 0; b < big; ++b)
        products_.push_back(elements_[a].adjoint() * elements_[b]);

    build_constraint_system();
  }

  void build_constraint_system() {
    const double r2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n_; ++i) herm_basis_.push_back(matrix_unit(n_, i, i));
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        herm_basis_.push_back(r2 * (matrix_unit(n_, i, j) + matrix_unit(n_, j, i)));
        herm_basis_.push_back(Complex(0.0, r2) *
                              (matrix_unit(n_, i, j) - matrix_unit(n_, j, i)));
      }
    const int big = size();
    const int m = constraint_count();
    constraint_rhs_.resize(m);
    for (int i = 0; i < m; ++i) {
      const ComplexMatrix& bi = herm_basis_[i];
      constraint_rhs_(i) = bi.trace().real();
      // (G_i)_{beta alpha} = tr(E_beta^dagger E_alpha B_i)
      ComplexMatrix g(big, big);
      for (int beta = 0; beta < big; ++beta)
        for (int alpha = 0; alpha < big; ++alpha)
          g(beta, alpha) =
              (products_[beta * big + alpha].cwiseProduct(bi.transpose())).sum();
      constraint_ops_.push_back(hermitian_part(g));
    }
    RealMatrix k(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) k(i, j) = real_inner(constraint_ops_[i], constraint_ops_[j]);
    constraint_gram_solver_.compute(k);
  }

  std::vector<ComplexMatrix> elements_;
  std::string name_;
  int n_ = 0;
  bool matrix_units_ = false;
  ComplexMatrix gram_;
  double gram_min_sv_ = 0.0;
  Eigen::FullPivLU<ComplexMatrix> gram_solver_;
  std::vector<ComplexMatrix> products_;
  std::vector<ComplexMatrix> herm_basis_;
  std::vector<ComplexMatrix> constraint_ops_;
  RealVector constraint_rhs_;
  Eigen::LDLT<RealMatrix> constraint_gram_solver_;
};

using BasisPtr = std::shared_ptr<const OperatorBasis>;

/// Matrix units n_[ij], ordered by flat index alpha = i*n + j (0-based).
inline BasisPtr matrix_unit_basis(int n) {
  if (n < 2) {
    throw Error(ErrorKind::InvalidArgument, "matrix_unit_basis needs n >= 2");
  }
  std::vector<ComplexMatrix> elements;
  elements.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) elements.push_back(matrix_unit(n, i, j));
  return OperatorBasis::create(std::move(elements), "matrix_units");
}

inline ComplexVector expand_in_basis(const ComplexMatrix& op,
                                     const OperatorBasis& basis) {
  return basis.expand(op);
}

// ---------------------------------------------------------------------------
// Kraus channels
// ---------------------------------------------------------------------------

inline double kraus_tp_residual(std::span<const ComplexMatrix> ops, int n) {
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& e : ops) sum += e.adjoint() * e;
  return (sum - ComplexMatrix::Identity(n, n)).norm();
}

/// A trace-preserving completely positive map given by Kraus operators.
class KrausChannel {
 public:
  KrausChannel(int n, std::vector<ComplexMatrix> operators)
      : n_(n), operators_(std::move(operators)) {
    if (n_ < 1 || operators_.empty() ||
        static_cast<int>(operators_.size()) > n_ * n_) {
      throw Error(ErrorKind::InvalidChannel,
                  "a channel on dimension " + std::to_string(n_) +
                      " needs between 1 and " + std::to_string(n_ * n_) +
                      " Kraus operators, got " + std::to_string(operators_.size()));
    }
    for (const auto& e : operators_) {
      if (e.rows() != n_ || e.cols() != n_ || !all_finite(e)) {
        throw Error(ErrorKind::InvalidChannel,
                    "Kraus operators must be finite " + std::to_string(n_) +
                        "x" + std::to_string(n_) + " matrices");
      }
    }
    const double residual = tp_residual();
    if (residual > kFeasibilityTolerance) {
      throw Error(ErrorKind::InvalidChannel,
                  "channel is not trace preserving: ||sum E^dagger E - I||_F = " +
                      std::to_string(residual),
                  residual);
    }
  }

  int dim() const { return n_; }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }
  double tp_residual() const { return kraus_tp_residual(operators_, n_); }

 private:
  int n_;
  std::vector<ComplexMatrix> operators_;
};

// ---------------------------------------------------------------------------
// Chi matrices
// ---------------------------------------------------------------------------

struct ChiCheck {
  double hermiticity = 0.0;  // ||chi - chi^dagger||_F
  double min_eigenvalue = 0.0;
  double tp_residual = 0.0;  // ||T(chi) - I||_F

  bool ok() const {
    return hermiticity <= kFeasibilityTolerance &&
           min_eigenvalue >= -kFeasibilityTolerance &&
           tp_residual <= kFeasibilityTolerance;
  }
};

inline ChiCheck check_chi(const OperatorBasis& basis, const ComplexMatrix& chi) {
  ChiCheck out;
  if (chi.rows() != basis.size() || chi.cols() != basis.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "chi must be " + std::to_string(basis.size()) + "x" +
                    std::to_string(basis.size()));
  }
  out.hermiticity = hermiticity_residual(chi);
  const ComplexMatrix h = hermitian_part(chi);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues()(0);
  out.tp_residual =
      (basis.tp_operator(h) - ComplexMatrix::Identity(basis.dim(), basis.dim())).norm();
  return out;
}

/// A player's strategy: a positive hermitian chi matrix relative to a basis,
/// satisfying the trace-preservation constraint. Construction validates.
class ChiMatrix {
 public:
  ChiMatrix(BasisPtr basis, const ComplexMatrix& chi)
      : basis_(std::move(basis)) {
    if (!basis_) throw Error(ErrorKind::InvalidChi, "chi matrix without a basis");
    if (!all_finite(chi)) throw Error(ErrorKind::InvalidChi, "chi has non-finite entries");
    const ChiCheck c = check_chi(*basis_, chi);
    if (c.hermiticity > kFeasibilityTolerance) {
      throw Error(ErrorKind::InvalidChi,
                  "chi is not hermitian (residual " + std::to_string(c.hermiticity) + ")",
                  c.hermiticity);
    }
    if (c.min_eigenvalue < -kFeasibilityTolerance) {
      throw Error(ErrorKind::InvalidChi,
                  "chi is not positive (smallest eigenvalue " +
                      std::to_string(c.min_eigenvalue) + ")",
                  c.min_eigenvalue);
    }
    if (c.tp_residual > kFeasibilityTolerance) {
      throw Error(ErrorKind::InvalidChi,
                  "chi violates trace preservation (residual " +
                      std::to_string(c.tp_residual) + ")",
                  c.tp_residual);
    }
    chi_ = hermitian_part(chi);
  }

  const BasisPtr& basis() const { return basis_; }
  int dim() const { return basis_->dim(); }
  const ComplexMatrix& matrix() const { return chi_; }
  Complex operator()(int alpha, int beta) const { return chi_(alpha, beta); }
  ChiCheck check() const { return check_chi(*basis_, chi_); }

 private:
  BasisPtr basis_;
  ComplexMatrix chi_;
};

using StrategyProfile = std::vector<ChiMatrix>;

/// t*a + (1-t)*b; the strategy set is convex so the result is valid.
inline ChiMatrix mix(double t, const ChiMatrix& a, const ChiMatrix& b) {
  if (!a.basis()->same_as(*b.basis())) {
    throw Error(ErrorKind::BasisMismatch, "mixing chi matrices of different bases");
  }
  return ChiMatrix(a.basis(), t * a.matrix() + (1.0 - t) * b.matrix());
}

inline ChiMatrix kraus_to_chi(const KrausChannel& channel, const BasisPtr& basis) {
  if (channel.dim() != basis->dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "channel dimension " + std::to_string(channel.dim()) +
                    " does not match basis dimension " + std::to_string(basis->dim()));
  }
  ComplexMatrix chi = ComplexMatrix::Zero(basis->size(), basis->size());
  for (const auto& e : channel.operators()) {
    const ComplexVector coeffs = basis->expand(e);
    chi += coeffs * coeffs.adjoint();
  }
  return ChiMatrix(basis, chi);
}

/// Kraus operators sqrt(lambda_m) sum_alpha (v_m)_alpha E_alpha over the
/// eigenpairs of chi with lambda_m > kRankThreshold.
inline KrausChannel chi_to_kraus(const ChiMatrix& chi) {
  const auto eig = hermitian_eig(chi.matrix());
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index m = eig.eigenvalues.size() - 1; m >= 0; --m) {
    const double lambda = eig.eigenvalues(m);
    if (lambda <= kRankThreshold) break;
    ops.push_back(std::sqrt(lambda) * chi.basis()->combine(eig.eigenvectors.col(m)));
  }
  if (ops.empty()) throw Error(ErrorKind::InvalidChi, "chi has no positive eigenvalue");
  return KrausChannel(chi.dim(), std::move(ops));
}

/// Congruence chi -> S chi S^dagger with S the coefficient map of
/// E -> E T(chi)^{-1/2}; the image satisfies T = I exactly and stays PSD.
inline ComplexMatrix restore_trace_preservation(const ComplexMatrix& chi,
                                                const OperatorBasis& basis) {
  const ComplexMatrix t = basis.tp_operator(chi);
  const ComplexMatrix s = inverse_sqrt_psd(hermitian_part(t));
  ComplexMatrix transform(basis.size(), basis.size());
  for (int a = 0; a < basis.size(); ++a) transform.col(a) = basis.expand(basis.element(a) * s);
  return hermitian_part(transform * chi * transform.adjoint());
}

// ---------------------------------------------------------------------------
// Named channels and random instances
// ---------------------------------------------------------------------------

inline KrausChannel identity_channel(int n) {
  return KrausChannel(n, {ComplexMatrix::Identity(n, n)});
}

/// Unitary channel rho -> U rho U^dagger.
inline KrausChannel unitary_channel(const ComplexMatrix& u) {
  return KrausChannel(static_cast<int>(u.rows()), {u});
}

/// Replaces any input with the basis state |target>.
inline KrausChannel replacement_channel(int n, int target) {
  std::vector<ComplexMatrix> ops;
  for (int i = 0; i < n; ++i) ops.push_back(matrix_unit(n, target, i));
  return KrausChannel(n, std::move(ops));
}

/// Completely depolarizing channel rho -> tr(rho) I/n.
inline KrausChannel depolarizing_channel(int n) {
  std::vector<ComplexMatrix> ops;
  const double w = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ops.push_back(w * matrix_unit(n, i, j));
  return KrausChannel(n, std::move(ops));
}

/// X^s with X|j> = |j+1 mod n>.
inline ComplexMatrix cyclic_shift(int n, int s) {
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) x(((j + s) % n + n) % n, j) = 1.0;
  return x;
}

/// {sqrt(p) I, sqrt(1-p) X} on a qubit.
inline KrausChannel bit_flip_mixture(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::InvalidDistribution, "bit-flip probability outside [0, 1]");
  }
  std::vector<ComplexMatrix> ops;
  if (p > 0.0) ops.push_back(std::sqrt(p) * ComplexMatrix::Identity(2, 2));
  if (p < 1.0) ops.push_back(std::sqrt(1.0 - p) * cyclic_shift(2, 1));
  return KrausChannel(2, std::move(ops));
}

/// The full-rank chi of the completely depolarizing channel; the interior
/// reference point of the strategy set.
inline ChiMatrix depolarizing_chi(const BasisPtr& basis) {
  return kraus_to_chi(depolarizing_channel(basis->dim()), basis);
}

/// Random channel from the Q factor of a complex Gaussian
/// (n*kraus_count) x n matrix. Deterministic for a given seed.
inline KrausChannel random_cptp(int n, int kraus_count, std::uint64_t seed) {
  if (kraus_count < 1 || kraus_count > n * n) {
    throw Error(ErrorKind::InvalidArgument,
                "kraus_count must be in [1, n^2], got " + std::to_string(kraus_count));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int rows = n * kraus_count;
  ComplexMatrix g(rows, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, n);
  const ComplexMatrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  // Fix the phase freedom of QR so the distribution is unitarily invariant.
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  std::vector<ComplexMatrix> ops;
  for (int k = 0; k < kraus_count; ++k) ops.push_back(q.block(k * n, 0, n, n));
  return KrausChannel(n, std::move(ops));
}

/// Embeds op on the factor `slot` of a register of `count` factors of
/// dimension n.
inline ComplexMatrix embed_operator(const ComplexMatrix& op, int slot, int count, int n) {
  const auto left = static_cast<Eigen::Index>(std::pow(n, slot));
  const auto right = static_cast<Eigen::Index>(std::pow(n, count - slot - 1));
  return tensor_product(tensor_product(ComplexMatrix::Identity(left, left), op),
                        ComplexMatrix::Identity(right, right));
}

/// pi = sum (E_k (x) F_l (x) ...) rho (E_k (x) F_l (x) ...)^dagger, one
/// channel per player.
inline ComplexMatrix apply_channels(const ComplexMatrix& rho,
                                    std::span<const KrausChannel> channels) {
  if (channels.empty()) {
    throw Error(ErrorKind::DimensionMismatch, "apply_channels needs one channel per player");
  }
  const int n = channels.front().dim();
  const int players = static_cast<int>(channels.size());
  const double expected = std::pow(n, players);
  for (const auto& c : channels) {
    if (c.dim() != n) {
      throw Error(ErrorKind::DimensionMismatch, "players' channels differ in dimension");
    }
  }
  if (rho.rows() != rho.cols() || static_cast<double>(rho.rows()) != expected) {
    throw Error(ErrorKind::DimensionMismatch,
                "state is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                    " but " + std::to_string(players) + " players of dimension " +
                    std::to_string(n) + " need " + std::to_string(static_cast<long>(expected)));
  }
  ComplexMatrix pi = rho;
  for (int k = 0; k < players; ++k) {
    ComplexMatrix next = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& e : channels[k].operators()) {
      const ComplexMatrix big = embed_operator(e, k, players, n);
      next += big * pi * big.adjoint();
    }
    pi = std::move(next);
  }
  return pi;
}

/// Two-player (or N-player) alias of apply_channels.
inline ComplexMatrix apply_channel_pair(const ComplexMatrix& rho,
                                        std::span<const KrausChannel> channels) {
  return apply_channels(rho, channels);
}

}  // namespace qgame
