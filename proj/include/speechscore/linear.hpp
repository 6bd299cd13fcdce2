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

// Linear and multinomial logistic regression baselines.

#ifndef SPEECHSCORE_LINEAR_HPP_
#define SPEECHSCORE_LINEAR_HPP_

#include <span>
#include <vector>

#include "json.hpp"
#include "speechscore/tree.hpp"

namespace speechscore {

struct LinearModel {
  std::vector<double> coef;
  double intercept = 0.0;

  double predict(std::span<const double> x) const;
  nlohmann::json to_json() const;
  static LinearModel from_json(const nlohmann::json& j);
};

// Weighted least squares with ridge damping `lambda` on the coefficients
// (the intercept is not damped).
LinearModel fit_linear(const DenseMatrix& X, std::span<const double> y,
                       std::span<const double> weights = {}, double lambda = 1e-8);

struct LogisticParams {
  double l2 = 1e-3;
  double tolerance = 1e-6;  // gradient norm
  int max_iterations = 10000;
};

struct LogisticModel {
  int n_classes = 2;
  std::vector<std::vector<double>> coef;  // n_classes x p
  std::vector<double> intercept;
  int iterations = 0;
  double gradient_norm = 0.0;

  std::vector<double> predict_proba(std::span<const double> x) const;
  int predict(std::span<const double> x) const;
  nlohmann::json to_json() const;
  static LogisticModel from_json(const nlohmann::json& j);
};

// Full-batch accelerated gradient descent on the weighted mean
// cross-entropy plus (l2 / 2) * |coef|^2, step 1/L.
LogisticModel fit_logistic(const DenseMatrix& X, std::span<const double> y,
                           std::span<const double> weights, int n_classes,
                           const LogisticParams& params = {});

}  // namespace speechscore

#endif  // SPEECHSCORE_LINEAR_HPP_
