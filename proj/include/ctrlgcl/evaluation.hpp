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

// Linear evaluation of frozen representations: repeated k-fold cross
// validation where the classifier sees a stratified label_rate subsample of
// each training fold and is scored on the whole held-out fold.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace ctrlgcl {

struct Split {
  /// Both ascending.
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

struct KFold {
  std::vector<Split> splits;
  /// False when some class has fewer members than folds and the split fell
  /// back to plain shuffled k-fold.
  bool stratified = true;
};

/// Each class is shuffled and dealt round-robin over the folds, the deal
/// continuing across classes. Throws std::invalid_argument when folds < 2 or
/// folds > labels.size().
KFold stratified_kfold(const std::vector<int>& labels, int folds, std::uint64_t seed);

/// One-vs-rest L2-regularized logistic regression,
///   min_w,b (1/n) sum_i log(1 + exp(-y_i (w.x_i + b))) + (reg/2) |w|^2,
/// solved by damped Newton on features standardized with training
/// statistics. The bias is unregularized. The objective is a mean, so
/// duplicating every row leaves the solution unchanged.
class LinearClassifier {
 public:
  /// Labels in [0, num_classes). Throws std::invalid_argument with fewer
  /// than two distinct labels present.
  static LinearClassifier fit(const Eigen::MatrixXd& x, const std::vector<int>& labels, int num_classes,
                              double reg);

  /// rows x classes; classes absent from training score -infinity.
  Eigen::MatrixXd scores(const Eigen::MatrixXd& x) const;
  /// Argmax of scores, lowest class on ties.
  std::vector<int> predict(const Eigen::MatrixXd& x) const;

  /// In standardized feature space; features x classes.
  const Eigen::MatrixXd& weights() const { return weights_; }
  const Eigen::RowVectorXd& bias() const { return bias_; }

 private:
  Eigen::RowVectorXd mean_;
  Eigen::RowVectorXd scale_;
  Eigen::MatrixXd weights_;
  Eigen::RowVectorXd bias_;
  std::vector<bool> present_;
};

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

struct EvalProtocol {
  int folds = 10;
  double label_rate = 0.10;
  int repetitions = 5;
  double reg = 1.0;
  std::uint64_t seed = 0;
};

struct FoldAccuracy {
  int repetition = 0;
  int fold = 0;
  double accuracy = 0.0;
};

struct EvalReport {
  std::vector<FoldAccuracy> folds;
  double mean = 0.0;
  /// Population standard deviation over all folds and repetitions.
  double stddev = 0.0;
  bool stratified = true;
};

/// Mean and population standard deviation of the fold accuracies.
void summarize(EvalReport& report);

/// Repetition r splits with derive_seed(protocol.seed, r). Throws
/// std::invalid_argument on misaligned inputs or a single class.
EvalReport evaluate(const Eigen::MatrixXd& x, const std::vector<int>& labels, const EvalProtocol& protocol);

}  // namespace ctrlgcl
