// Copyright 2026 The ctrlgcl Authors.
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

// Controllability of the grounded-Laplacian follower dynamics
//
//   x_f' = -A x_f - B u
//
// where A, B are the follower blocks of the Laplacian. For a graph whose every
// component holds a leader, A is positive definite, -A is Hurwitz and the
// infinite-horizon Gramian W solves A W + W A^T = B B^T.

#include <algorithm>
#include <cmath>
#include <type_traits>

#include <Eigen/Dense>

#include "ctrlgcl/graph.hpp"

namespace ctrlgcl {

/// Relative tolerance for numerical rank decisions. 1e-10 in double; for
/// wider types sqrt(machine epsilon), which keeps the zero/nonzero split in
/// the middle of the available digits.
template <typename Scalar>
Scalar rank_tolerance() {
  if constexpr (std::is_same_v<Scalar, double>) {
    return 1e-10;
  } else {
    using std::sqrt;
    return sqrt(Eigen::NumTraits<Scalar>::epsilon());
  }
}

template <typename Scalar>
struct GramianReport {
  MatrixX<Scalar> W;
  /// Nonincreasing.
  VectorX<Scalar> eigenvalues;
  /// Eigenvalues strictly above this count toward the rank.
  Scalar threshold = Scalar(0);
  int rank = 0;
  Scalar trace = Scalar(0);
  /// Smallest eigenvalue above threshold; 0 when rank is 0.
  Scalar min_nonzero_eig = Scalar(0);
  /// Sum of log of the above-threshold eigenvalues; 0 when rank is 0.
  Scalar ld = Scalar(0);
};

/// Unique symmetric W with A W + W A^T = B B^T for symmetric positive
/// definite A, through A = Q diag(lambda) Q^T:
///   W = Q [ (Q^T B B^T Q)_ij / (lambda_i + lambda_j) ] Q^T.
/// Throws StabilityError when lambda_min(A) is not safely positive.
template <typename DerivedA, typename DerivedB>
MatrixX<typename DerivedA::Scalar> solve_lyapunov(const Eigen::MatrixBase<DerivedA>& A,
                                                  const Eigen::MatrixBase<DerivedB>& B) {
  using Scalar = typename DerivedA::Scalar;
  using std::abs;
  using std::max;
  if (A.rows() != A.cols()) throw ShapeError("solve_lyapunov: A must be square");
  if (B.rows() != A.rows()) throw ShapeError("solve_lyapunov: B must have as many rows as A");
  const Eigen::Index n = A.rows();
  if (n == 0) return MatrixX<Scalar>(0, 0);

  const MatrixX<Scalar> a = A;
  const Scalar asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > Scalar(n) * Eigen::NumTraits<Scalar>::epsilon() * max(Scalar(1), a.cwiseAbs().maxCoeff())) {
    throw ShapeError("solve_lyapunov: A must be symmetric");
  }

  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> eig(a);
  const VectorX<Scalar>& lambda = eig.eigenvalues();
  const MatrixX<Scalar>& Q = eig.eigenvectors();
  const Scalar floor = Scalar(n) * Eigen::NumTraits<Scalar>::epsilon() * max(Scalar(1), abs(lambda(n - 1)));
  if (!(lambda(0) > floor)) {
    throw StabilityError("follower block is not positive definite; some component has no leader");
  }

  const MatrixX<Scalar> G = Q.transpose() * B;
  MatrixX<Scalar> Wt = G * G.transpose();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) Wt(i, j) /= lambda(i) + lambda(j);
  }
  MatrixX<Scalar> W = Q * Wt * Q.transpose();
  return (W + W.transpose()) / Scalar(2);
}

/// ||A W + W A^T - B B^T||_F / (1 + ||B B^T||_F).
template <typename DerivedA, typename DerivedB, typename DerivedW>
typename DerivedA::Scalar lyapunov_residual(const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedB>& B,
                                            const Eigen::MatrixBase<DerivedW>& W) {
  using Scalar = typename DerivedA::Scalar;
  const MatrixX<Scalar> BBt = B * B.transpose();
  const MatrixX<Scalar> R = A * W + W * A.transpose() - BBt;
  return R.norm() / (Scalar(1) + BBt.norm());
}

/// Rank and spectral statistics of an already computed Gramian.
template <typename Scalar>
GramianReport<Scalar> summarize_gramian(MatrixX<Scalar> W) {
  using std::log;
  GramianReport<Scalar> report;
  report.W = std::move(W);
  const Eigen::Index n = report.W.rows();
  if (n == 0) {
    report.eigenvalues.resize(0);
    return report;
  }
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> eig(report.W, Eigen::EigenvaluesOnly);
  report.eigenvalues = eig.eigenvalues().reverse();
  report.trace = report.W.trace();
  const Scalar top = report.eigenvalues(0);
  if (!(top > Scalar(0))) return report;
  report.threshold = Scalar(n) * top * rank_tolerance<Scalar>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar mu = report.eigenvalues(i);
    if (!(mu > report.threshold)) break;
    ++report.rank;
    report.min_nonzero_eig = mu;
    report.ld += log(mu);
  }
  return report;
}

/// Gramian of the follower dynamics for (g, lc) plus its statistics.
/// Propagates StabilityError when a component has no leader.
template <typename Scalar = double>
GramianReport<Scalar> gramian_report(const Graph& g, const LeaderConfig& lc) {
  const auto blocks = partition_laplacian<Scalar>(g, lc);
  return summarize_gramian<Scalar>(solve_lyapunov(blocks.A, blocks.B));
}

/// Explicit [-B | (-A)(-B) | ... | (-A)^{n-1}(-B)].
template <typename DerivedA, typename DerivedB>
MatrixX<typename DerivedA::Scalar> controllability_matrix(const Eigen::MatrixBase<DerivedA>& A,
                                                          const Eigen::MatrixBase<DerivedB>& B) {
  using Scalar = typename DerivedA::Scalar;
  const Eigen::Index n = A.rows();
  const Eigen::Index m = B.cols();
  MatrixX<Scalar> K(n, n * m);
  if (n == 0) return K;
  MatrixX<Scalar> block = -B;
  for (Eigen::Index j = 0; j < n; ++j) {
    K.middleCols(j * m, m) = block;
    block = (-A * block).eval();
  }
  return K;
}

/// Dimension of span{F, E F, E^2 F, ...} for square E.
///
/// The Krylov blocks are generated one at a time against an orthonormal
/// basis of the span found so far (staircase form), and each orthogonalized
/// block is rank-revealed by column-pivoted Householder QR. Its diagonal is
/// compared against max(dims) * (largest column norm of E and F) * tol.
/// The explicit matrix [F, EF, ...] spans the same space but its columns
/// align with the dominant eigenvector after a few powers, which hides
/// directions behind roundoff.
template <typename DerivedE, typename DerivedF>
int krylov_rank(const Eigen::MatrixBase<DerivedE>& E, const Eigen::MatrixBase<DerivedF>& F) {
  using Scalar = typename DerivedE::Scalar;
  using std::abs;
  using std::max;
  if (E.rows() != E.cols() || F.rows() != E.rows()) throw ShapeError("krylov_rank: shape mismatch");
  const Eigen::Index n = E.rows();
  if (n == 0 || F.cols() == 0) return 0;

  const MatrixX<Scalar> e = E;
  Scalar reference = max(e.colwise().norm().maxCoeff(), F.colwise().norm().maxCoeff());
  if (!(reference > Scalar(0))) return 0;
  const Scalar cutoff = Scalar(max(n, F.cols())) * reference * rank_tolerance<Scalar>();

  MatrixX<Scalar> basis(n, 0);
  MatrixX<Scalar> block = F;
  while (basis.cols() < n && block.cols() > 0) {
    for (int pass = 0; pass < 2; ++pass) {
      if (basis.cols() > 0) block -= basis * (basis.transpose() * block);
    }
    Eigen::ColPivHouseholderQR<MatrixX<Scalar>> qr(block);
    const auto& R = qr.matrixQR();
    Eigen::Index fresh = 0;
    const Eigen::Index diag = std::min(block.rows(), block.cols());
    while (fresh < diag && abs(R(fresh, fresh)) > cutoff) ++fresh;
    fresh = std::min(fresh, n - basis.cols());
    if (fresh == 0) break;

    MatrixX<Scalar> Qthin = qr.householderQ() * MatrixX<Scalar>::Identity(n, fresh);
    if (basis.cols() > 0) Qthin -= basis * (basis.transpose() * Qthin);
    Qthin = Qthin.householderQr().householderQ() * MatrixX<Scalar>::Identity(n, fresh);

    MatrixX<Scalar> grown(n, basis.cols() + fresh);
    grown << basis, Qthin;
    basis = std::move(grown);
    block = e * Qthin;
  }
  return static_cast<int>(basis.cols());
}

/// gamma(G, V_l): dimension of the controllable subspace, the rank of
/// [-B | (-A)(-B) | ...].
template <typename Scalar = double>
int controllability_rank(const Graph& g, const LeaderConfig& lc) {
  const auto blocks = partition_laplacian<Scalar>(g, lc);
  const MatrixX<Scalar> E = -blocks.A;
  const MatrixX<Scalar> F = -blocks.B;
  return krylov_rank(E, F);
}

/// x^T W^+ x: infinite-horizon minimum input energy to steer the followers
/// from the origin to x_target. Throws UnreachableState when x_target has a
/// component outside the controllable subspace beyond 1e-8 relative.
double min_control_energy(const Graph& g, const LeaderConfig& lc, const Eigen::VectorXd& x_target);

extern template GramianReport<double> summarize_gramian<double>(Eigen::MatrixXd);
extern template GramianReport<double> gramian_report<double>(const Graph&, const LeaderConfig&);
extern template int controllability_rank<double>(const Graph&, const LeaderConfig&);

}  // namespace ctrlgcl
