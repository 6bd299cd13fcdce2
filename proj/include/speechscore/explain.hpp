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

// Model explanations: gain importance, partial dependence and exact
// path-dependent Shapley values for tree ensembles.

#ifndef SPEECHSCORE_EXPLAIN_HPP_
#define SPEECHSCORE_EXPLAIN_HPP_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "speechscore/model_selection.hpp"
#include "speechscore/tree.hpp"

namespace speechscore {

enum class ImportanceMethod { kGain, kSplitCount };

struct ImportanceRanking {
  ImportanceMethod method = ImportanceMethod::kGain;
  // Descending; empty when the model has no split.
  std::vector<std::pair<std::string, double>> items;
  std::vector<std::string> flags;
};

ImportanceRanking gain_importance(const TreeEnsembleModel& model,
                                  ImportanceMethod method = ImportanceMethod::kGain);

using Predictor = std::function<double(std::span<const double>)>;

struct PdpCurve {
  std::string feature;
  std::vector<double> grid;
  std::vector<double> mean_prediction;
  int n_background = 0;
  std::vector<std::string> flags;
};

// Linear interpolation between order statistics, q in [0, 1].
double percentile(std::vector<double> values, double q);

PdpCurve pdp(const Predictor& predict, const DenseMatrix& background,
             std::size_t feature, const std::string& feature_name, int n_grid = 20);

struct ShapValues {
  double base_value = 0.0;
  std::vector<double> phi;
};

// `output` selects the class for classifiers (margin for GBT, proportion
// for forests); regression ignores it.
ShapValues tree_shap(const TreeEnsembleModel& model, std::span<const double> x,
                     int output = 0);
// Shapley values by subset enumeration over cover-conditional expectations.
ShapValues brute_force_shap(const TreeEnsembleModel& model, std::span<const double> x,
                            int output = 0);
// The quantity SHAP values decompose.
double model_output(const TreeEnsembleModel& model, std::span<const double> x,
                    int output = 0);

struct ShapExplanation {
  double base_value = 0.0;
  DenseMatrix phi;             // samples x features
  DenseMatrix feature_values;  // samples x features
  std::vector<std::string> feature_names;
};

ShapExplanation shap_matrix(const TreeEnsembleModel& model, const DenseMatrix& X,
                            int output = 0, int threads = 1);

struct ShapPoint {
  std::string feature;
  double phi = 0.0;
  double standardized_value = 0.0;
};

struct ShapSummary {
  // Mean |phi| descending, ties by name.
  std::vector<std::pair<std::string, double>> ranking;
  std::vector<ShapPoint> points;
};

ShapSummary shap_summary(const ShapExplanation& explanation);

}  // namespace speechscore

#endif  // SPEECHSCORE_EXPLAIN_HPP_
