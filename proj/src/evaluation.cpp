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

#include "ctrlgcl/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "ctrlgcl/embedding.hpp"
#include "ctrlgcl/random.hpp"

namespace ctrlgcl {

KFold stratified_kfold(const std::vector<int>& labels, int folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("need at least 2 folds, got " + std::to_string(folds));
  if (static_cast<std::size_t>(folds) > labels.size()) {
    throw std::invalid_argument("more folds (" + std::to_string(folds) + ") than samples (" +
                                std::to_string(labels.size()) + ")");
  }
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  std::size_t smallest = labels.size();
  for (const auto& [label, members] : by_class) smallest = std::min(smallest, members.size());

  KFold out;
  out.stratified = smallest >= static_cast<std::size_t>(folds);
  if (!out.stratified) {
    std::vector<std::size_t> all(labels.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    by_class.clear();
    by_class[0] = std::move(all);
  }

  Rng rng(seed);
  std::vector<std::vector<std::size_t>> test(static_cast<std::size_t>(folds));
  std::size_t deal = 0;
  for (auto& [label, members] : by_class) {
    shuffle(members, rng);
    for (const std::size_t i : members) test[deal++ % test.size()].push_back(i);
  }
  for (auto& t : test) {
    std::sort(t.begin(), t.end());
    Split split;
    std::vector<char> in_test(labels.size(), 0);
    for (const std::size_t i : t) in_test[i] = 1;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!in_test[i]) split.train.push_back(i);
    }
    split.test = std::move(t);
    out.splits.push_back(std::move(split));
  }
  return out;
}

namespace {

// Binary logistic regression in standardized space; y in {-1, +1}.
Eigen::VectorXd fit_binary(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double reg) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  Eigen::MatrixXd xb(n, p + 1);
  xb << x, Eigen::VectorXd::Ones(n);
  Eigen::VectorXd ridge = Eigen::VectorXd::Constant(p + 1, reg);
  ridge(p) = 0.0;

  auto objective = [&](const Eigen::VectorXd& theta) {
    const Eigen::ArrayXd margin = y.array() * (xb * theta).array();
    // log(1 + exp(-m)) without overflow.
    const Eigen::ArrayXd loss = (-margin).max(0.0) + (-(margin.abs())).exp().log1p();
    return loss.mean() + 0.5 * (ridge.array() * theta.array().square()).sum();
  };

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(p + 1);
  double f = objective(theta);
  for (int iter = 0; iter < 100; ++iter) {
    const Eigen::ArrayXd margin = y.array() * (xb * theta).array();
    // sigma(-m) and sigma(m) sigma(-m).
    const Eigen::ArrayXd s = 1.0 / (1.0 + margin.exp());
    const Eigen::ArrayXd w = s * (1.0 - s);
    const Eigen::VectorXd grad =
        -(xb.transpose() * (y.array() * s).matrix()) / static_cast<double>(n) + (ridge.array() * theta.array()).matrix();
    Eigen::MatrixXd hess = xb.transpose() * (xb.array().colwise() * w).matrix() / static_cast<double>(n);
    hess.diagonal() += ridge;
    hess.diagonal().array() += 1e-12;
    const Eigen::VectorXd step = hess.ldlt().solve(grad);
    double t = 1.0;
    Eigen::VectorXd next = theta - step;
    double f_next = objective(next);
    while (f_next > f - 1e-4 * t * grad.dot(step) && t > 1e-8) {
      t *= 0.5;
      next = theta - t * step;
      f_next = objective(next);
    }
    const double moved = (next - theta).lpNorm<Eigen::Infinity>();
    theta = std::move(next);
    f = f_next;
    if (moved < 1e-10) break;
  }
  return theta;
}

}  // namespace

LinearClassifier LinearClassifier::fit(const Eigen::MatrixXd& x, const std::vector<int>& labels, int num_classes,
                                       double reg) {
  if (static_cast<std::size_t>(x.rows()) != labels.size()) throw std::invalid_argument("rows and labels differ in count");
  if (!(reg > 0.0)) throw std::invalid_argument("regularization must be positive");
  std::set<int> seen(labels.begin(), labels.end());
  if (seen.size() < 2) throw std::invalid_argument("classifier needs at least two classes in its training set");
  for (const int c : labels) {
    if (c < 0 || c >= num_classes) throw std::invalid_argument("label " + std::to_string(c) + " out of range");
  }

  LinearClassifier clf;
  const Standardizer st = Standardizer::fit(x);
  clf.mean_ = st.mean;
  clf.scale_ = st.scale;
  const Eigen::MatrixXd z = st.apply(x);
  clf.weights_ = Eigen::MatrixXd::Zero(x.cols(), num_classes);
  clf.bias_ = Eigen::RowVectorXd::Zero(num_classes);
  clf.present_.assign(static_cast<std::size_t>(num_classes), false);
  for (int c = 0; c < num_classes; ++c) {
    if (!seen.contains(c)) continue;
    clf.present_[static_cast<std::size_t>(c)] = true;
    Eigen::VectorXd y(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) y(i) = labels[static_cast<std::size_t>(i)] == c ? 1.0 : -1.0;
    const Eigen::VectorXd theta = fit_binary(z, y, reg);
    clf.weights_.col(c) = theta.head(x.cols());
    clf.bias_(c) = theta(x.cols());
  }
  return clf;
}

Eigen::MatrixXd LinearClassifier::scores(const Eigen::MatrixXd& x) const {
  if (x.cols() != mean_.size()) throw std::invalid_argument("classifier fitted on a different feature count");
  const Eigen::MatrixXd z = (x.rowwise() - mean_).array().rowwise() / scale_.array();
  Eigen::MatrixXd s = (z * weights_).rowwise() + bias_;
  for (std::size_t c = 0; c < present_.size(); ++c) {
    if (!present_[c]) s.col(static_cast<Eigen::Index>(c)).setConstant(-std::numeric_limits<double>::infinity());
  }
  return s;
}

std::vector<int> LinearClassifier::predict(const Eigen::MatrixXd& x) const {
  const Eigen::MatrixXd s = scores(x);
  std::vector<int> out(static_cast<std::size_t>(s.rows()));
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < s.cols(); ++c) {
      if (s(i, c) > s(i, best)) best = c;
    }
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size() || truth.empty()) throw std::invalid_argument("accuracy: size mismatch");
  std::size_t hit = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hit += predicted[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(truth.size());
}

void summarize(EvalReport& report) {
  if (report.folds.empty()) {
    report.mean = report.stddev = 0.0;
    return;
  }
  double sum = 0.0;
  for (const auto& f : report.folds) sum += f.accuracy;
  report.mean = sum / static_cast<double>(report.folds.size());
  double sq = 0.0;
  for (const auto& f : report.folds) sq += (f.accuracy - report.mean) * (f.accuracy - report.mean);
  report.stddev = std::sqrt(sq / static_cast<double>(report.folds.size()));
}

EvalReport evaluate(const Eigen::MatrixXd& x, const std::vector<int>& labels, const EvalProtocol& protocol) {
  if (static_cast<std::size_t>(x.rows()) != labels.size()) throw std::invalid_argument("rows and labels differ in count");
  if (!(protocol.label_rate > 0.0 && protocol.label_rate <= 1.0)) {
    throw std::invalid_argument("label rate must lie in (0, 1]");
  }
  if (protocol.repetitions < 1) throw std::invalid_argument("need at least one repetition");
  const std::set<int> classes(labels.begin(), labels.end());
  if (classes.size() < 2) throw std::invalid_argument("evaluation needs at least two classes");
  const int num_classes = *classes.rbegin() + 1;

  EvalReport report;
  for (int r = 0; r < protocol.repetitions; ++r) {
    const std::uint64_t rep_seed = derive_seed(protocol.seed, static_cast<std::uint64_t>(r));
    const KFold kfold = stratified_kfold(labels, protocol.folds, rep_seed);
    report.stratified = report.stratified && kfold.stratified;
    Rng rng(derive_seed(rep_seed, "subsample"));
    for (std::size_t f = 0; f < kfold.splits.size(); ++f) {
      const Split& split = kfold.splits[f];
      std::map<int, std::vector<std::size_t>> by_class;
      for (const std::size_t i : split.train) by_class[labels[i]].push_back(i);
      std::vector<std::size_t> chosen;
      for (auto& [label, members] : by_class) {
        const auto take = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(protocol.label_rate * static_cast<double>(members.size()))));
        shuffle(members, rng);
        chosen.insert(chosen.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
      }
      std::sort(chosen.begin(), chosen.end());
      std::vector<int> train_labels;
      for (const std::size_t i : chosen) train_labels.push_back(labels[i]);
      std::vector<int> test_labels;
      for (const std::size_t i : split.test) test_labels.push_back(labels[i]);

      const auto idx = [](const std::vector<std::size_t>& v) {
        return std::vector<Eigen::Index>(v.begin(), v.end());
      };
      const Eigen::MatrixXd x_train = x(idx(chosen), Eigen::all);
      const Eigen::MatrixXd x_test = x(idx(split.test), Eigen::all);
      const auto clf = LinearClassifier::fit(x_train, train_labels, num_classes, protocol.reg);
      report.folds.push_back({r, static_cast<int>(f), accuracy(clf.predict(x_test), test_labels)});
    }
  }
  summarize(report);
  return report;
}

}  // namespace ctrlgcl
