// Copyright 2026 The Speechscore Authors.
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

#include "speechscore/linear.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "speechscore/common.hpp"

namespace speechscore {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Design matrix with a trailing column of ones.
MatrixXd augmented(const DenseMatrix& X) {
  MatrixXd a(X.rows, X.cols + 1);
  for (std::size_t i = 0; i < X.rows; ++i) {
    for (std::size_t j = 0; j < X.cols; ++j) {
      const double v = X(i, j);
      if (!std::isfinite(v)) throw Error(ErrorKind::kInvalidArgument, "non-finite feature value");
      a(i, j) = v;
    }
    a(i, X.cols) = 1.0;
  }
  return a;
}

VectorXd normalized_weights(std::span<const double> w, std::size_t n) {
  VectorXd out = VectorXd::Ones(n);
  if (!w.empty()) {
    if (w.size() != n) throw Error(ErrorKind::kInvalidArgument, "weight count mismatch");
    for (std::size_t i = 0; i < n; ++i) out(i) = w[i];
  }
  const double s = out.sum();
  if (!(s > 0.0) || !out.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "weights must be finite with a positive sum");
  }
  return out / s;
}

void softmax_rows(MatrixXd& z) {
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double mx = z.row(i).maxCoeff();
    z.row(i) = (z.row(i).array() - mx).exp();
    z.row(i) /= z.row(i).sum();
  }
}

}  // namespace

double LinearModel::predict(std::span<const double> x) const {
  double s = intercept;
  for (std::size_t j = 0; j < coef.size(); ++j) s += coef[j] * x[j];
  return s;
}

nlohmann::json LinearModel::to_json() const {
  return {{"coef", coef}, {"intercept", intercept}};
}

LinearModel LinearModel::from_json(const nlohmann::json& j) {
  LinearModel m;
  m.coef = j.at("coef").get<std::vector<double>>();
  m.intercept = j.at("intercept").get<double>();
  return m;
}

LinearModel fit_linear(const DenseMatrix& X, std::span<const double> y,
                       std::span<const double> weights, double lambda) {
  if (X.rows == 0 || y.size() != X.rows) {
    throw Error(ErrorKind::kInvalidArgument, "linear fit needs |X| = |y| > 0");
  }
  const MatrixXd a = augmented(X);
  const VectorXd w = normalized_weights(weights, X.rows);
  VectorXd target(X.rows);
  for (std::size_t i = 0; i < X.rows; ++i) {
    if (!std::isfinite(y[i])) throw Error(ErrorKind::kInvalidArgument, "non-finite target");
    target(i) = y[i];
  }
  MatrixXd gram = a.transpose() * w.asDiagonal() * a;
  for (std::size_t j = 0; j < X.cols; ++j) gram(j, j) += lambda;
  const VectorXd rhs = a.transpose() * w.asDiagonal() * target;
  const VectorXd beta = gram.ldlt().solve(rhs);
  if (!beta.allFinite()) {
    throw Error(ErrorKind::kPrecondition, "linear system is singular");
  }
  LinearModel m;
  m.coef.assign(beta.data(), beta.data() + X.cols);
  m.intercept = beta(X.cols);
  return m;
}

std::vector<double> LogisticModel::predict_proba(std::span<const double> x) const {
  std::vector<double> z(n_classes);
  for (int k = 0; k < n_classes; ++k) {
    double s = intercept[k];
    for (std::size_t j = 0; j < coef[k].size(); ++j) s += coef[k][j] * x[j];
    z[k] = s;
  }
  return softmax(z);
}

int LogisticModel::predict(std::span<const double> x) const {
  const auto p = predict_proba(x);
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

nlohmann::json LogisticModel::to_json() const {
  return {{"n_classes", n_classes}, {"coef", coef}, {"intercept", intercept},
          {"iterations", iterations}, {"gradient_norm", gradient_norm}};
}

LogisticModel LogisticModel::from_json(const nlohmann::json& j) {
  LogisticModel m;
  m.n_classes = j.at("n_classes").get<int>();
  m.coef = j.at("coef").get<std::vector<std::vector<double>>>();
  m.intercept = j.at("intercept").get<std::vector<double>>();
  m.iterations = j.value("iterations", 0);
  m.gradient_norm = j.value("gradient_norm", 0.0);
  return m;
}

LogisticModel fit_logistic(const DenseMatrix& X, std::span<const double> y,
                           std::span<const double> weights, int n_classes,
                           const LogisticParams& params) {
  if (X.rows == 0 || y.size() != X.rows) {
    throw Error(ErrorKind::kInvalidArgument, "logistic fit needs |X| = |y| > 0");
  }
  if (n_classes < 2) throw Error(ErrorKind::kInvalidArgument, "need >= 2 classes");
  const MatrixXd a = augmented(X);
  const VectorXd w = normalized_weights(weights, X.rows);
  const auto n = static_cast<Eigen::Index>(X.rows);
  const auto p = static_cast<Eigen::Index>(X.cols);
  MatrixXd onehot = MatrixXd::Zero(n, n_classes);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double c = y[i];
    if (!(c >= 0 && c < n_classes && c == std::floor(c))) {
      throw Error(ErrorKind::kInvalidArgument, "class label outside [0, n_classes)");
    }
    onehot(i, static_cast<Eigen::Index>(c)) = 1.0;
  }

  // Softmax cross-entropy has Hessian <= 0.5 * A^T W A (x) I.
  const MatrixXd gram = a.transpose() * w.asDiagonal() * a;
  const double lmax = Eigen::SelfAdjointEigenSolver<MatrixXd>(gram, Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .maxCoeff();
  const double step = 1.0 / (0.5 * lmax + params.l2);

  auto gradient = [&](const MatrixXd& theta) {
    MatrixXd z = a * theta;
    softmax_rows(z);
    MatrixXd g = a.transpose() * (w.asDiagonal() * (z - onehot));
    g.topRows(p) += params.l2 * theta.topRows(p);
    return g;
  };

  MatrixXd theta = MatrixXd::Zero(p + 1, n_classes);
  MatrixXd look = theta;
  double t = 1.0;
  LogisticModel m;
  m.n_classes = n_classes;
  int it = 0;
  double gnorm = 0.0;
  for (; it < params.max_iterations; ++it) {
    const MatrixXd g = gradient(look);
    gnorm = g.norm();
    if (gnorm < params.tolerance) {
      theta = look;
      break;
    }
    const MatrixXd next = look - step * g;
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    // Restart momentum when it points uphill.
    if ((g.array() * (next - theta).array()).sum() > 0.0) {
      look = next;
      t = 1.0;
    } else {
      look = next + ((t - 1.0) / t_next) * (next - theta);
      t = t_next;
    }
    theta = next;
  }
  if (it == params.max_iterations) gnorm = gradient(theta).norm();
  m.iterations = it;
  m.gradient_norm = gnorm;
  m.coef.assign(n_classes, std::vector<double>(X.cols));
  m.intercept.resize(n_classes);
  for (int k = 0; k < n_classes; ++k) {
    for (Eigen::Index j = 0; j < p; ++j) m.coef[k][j] = theta(j, k);
    m.intercept[k] = theta(p, k);
  }
  return m;
}

}  // namespace speechscore
