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

#include "ctrlgcl/controllability.hpp"

#include <cmath>

namespace ctrlgcl {

template GramianReport<double> summarize_gramian<double>(Eigen::MatrixXd);
template GramianReport<double> gramian_report<double>(const Graph&, const LeaderConfig&);
template int controllability_rank<double>(const Graph&, const LeaderConfig&);

double min_control_energy(const Graph& g, const LeaderConfig& lc, const Eigen::VectorXd& x_target) {
  if (x_target.size() != static_cast<Eigen::Index>(lc.num_followers())) {
    throw ShapeError("min_control_energy: target has " + std::to_string(x_target.size()) + " entries, expected " +
                     std::to_string(lc.num_followers()));
  }
  if (x_target.size() == 0 || x_target.isZero(0.0)) return 0.0;

  const auto blocks = partition_laplacian<double>(g, lc);
  const Eigen::MatrixXd W = solve_lyapunov(blocks.A, blocks.B);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(W);
  const Eigen::VectorXd& mu = eig.eigenvalues();
  const Eigen::Index n = mu.size();
  const double threshold = static_cast<double>(n) * mu(n - 1) * rank_tolerance<double>();

  // Eigenvalues ascend, so the range of W is the trailing block.
  Eigen::Index first = n;
  while (first > 0 && mu(first - 1) > threshold) --first;
  const Eigen::Index r = n - first;
  if (r == 0) throw UnreachableState("Gramian is zero; no follower state is reachable");
  const auto U = eig.eigenvectors().rightCols(r);
  const Eigen::VectorXd coeff = U.transpose() * x_target;
  const double residual = (x_target - U * coeff).norm();
  if (residual > 1e-8 * std::max(1.0, x_target.norm())) {
    throw UnreachableState("target state lies outside the controllable subspace (residual " +
                           std::to_string(residual) + ")");
  }
  return coeff.cwiseAbs2().cwiseQuotient(mu.tail(r)).sum();
}

}  // namespace ctrlgcl
