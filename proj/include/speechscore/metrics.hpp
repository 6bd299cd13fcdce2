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

// Agreement and error metrics: quadratic weighted kappa, Pearson r, MSE.

#ifndef SPEECHSCORE_METRICS_HPP_
#define SPEECHSCORE_METRICS_HPP_

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace speechscore {

using Matrix2 = std::vector<std::vector<double>>;

// O[i][j]: human grade i, model grade j.
Matrix2 confusion_matrix(std::span<const int> human, std::span<const int> predicted,
                         int n_classes);
Matrix2 qwk_weights(int n_classes);

struct KappaResult {
  double kappa = 0.0;
  bool degenerate = false;  // sum(W*E) == 0, kappa defined as 1
};

KappaResult qwk_detail(std::span<const int> human, std::span<const int> predicted,
                       int n_classes);
double qwk(std::span<const int> human, std::span<const int> predicted, int n_classes);

struct PearsonResult {
  double r = 0.0;
  bool degenerate = false;  // a constant input
};
PearsonResult pearson_detail(std::span<const double> a, std::span<const double> b);
double pearson(std::span<const double> a, std::span<const double> b);

double mse(std::span<const double> y_true, std::span<const double> y_pred);

// Nearest integer, half-up, clamped to [0, n_classes - 1].
int round_to_grade(double raw, int n_classes);

struct MetricReport {
  double qwk = 0.0;
  double pearson_r = 0.0;
  double mse = 0.0;
  int n = 0;
  Matrix2 confusion;
  std::vector<std::string> flags;

  nlohmann::json to_json() const;
};

// Scores integer grades against model grades; r and MSE use the grades too.
MetricReport evaluate_grades(std::span<const int> human, std::span<const int> predicted,
                             int n_classes);

}  // namespace speechscore

#endif  // SPEECHSCORE_METRICS_HPP_
