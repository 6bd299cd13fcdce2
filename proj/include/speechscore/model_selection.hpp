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

// Model families behind one interface, class weighting, k-fold grid search
// and the length-only baseline.

#ifndef SPEECHSCORE_MODEL_SELECTION_HPP_
#define SPEECHSCORE_MODEL_SELECTION_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "speechscore/linear.hpp"
#include "speechscore/tree.hpp"

namespace speechscore {

enum class ModelFamily { kLinear, kLogistic, kTree, kForest, kGbt };
std::string_view family_name(ModelFamily family);
ModelFamily parse_family(std::string_view name);
bool family_supports(ModelFamily family, Task task);

using ParamMap = std::map<std::string, double>;
using ParamGrid = std::map<std::string, std::vector<double>>;

// Recognized keys: max_depth, min_samples_leaf, min_samples_split,
// max_features (fraction of columns tried per split), n_trees, bootstrap,
// n_stages, learning_rate, l2, lambda.
struct ModelSpec {
  ModelFamily family = ModelFamily::kGbt;
  Task task = Task::kRegression;
  ParamMap params;
  bool use_class_weights = true;
};

class Model {
 public:
  ModelFamily family = ModelFamily::kGbt;
  Task task = Task::kRegression;
  int n_classes = 2;
  ParamMap params;
  std::vector<std::string> feature_names;
  // Input columns consumed, as indices into the caller's rows; empty means
  // every column in order.
  std::vector<int> columns;
  std::variant<TreeEnsembleModel, LinearModel, LogisticModel> impl;

  // Regression value, or the predicted class index.
  double predict(std::span<const double> row) const;
  int predict_grade(std::span<const double> row) const;
  std::vector<double> predict_rows(const DenseMatrix& X) const;
  std::vector<int> predict_grades(const DenseMatrix& X) const;

  const TreeEnsembleModel* ensemble() const { return std::get_if<TreeEnsembleModel>(&impl); }

  nlohmann::json to_json() const;
  static Model from_json(const nlohmann::json& j);

 private:
  std::vector<double> gather(std::span<const double> row) const;
};

// Per-sample weights n / (K * n_k), K = number of classes present.
std::vector<double> class_weights(std::span<const int> y);

Model fit_model(const ModelSpec& spec, const DenseMatrix& X, std::span<const int> y,
                int n_classes, const std::vector<std::string>& feature_names,
                std::uint64_t seed, int threads = 1);

std::vector<ParamMap> expand_grid(const ParamGrid& grid);
ParamGrid default_grid(ModelFamily family);

// Fold index per sample. Stratified folds deal each class round-robin after
// a seeded shuffle.
std::vector<int> cv_folds(std::span<const int> y, int k, bool stratified, std::uint64_t seed);

struct GridSearchSpec {
  ModelSpec model;  // params here act as fixed defaults under the grid
  ParamGrid grid;
  int folds = 5;
  std::uint64_t seed = 0;
};

struct CvRow {
  ParamMap params;
  std::vector<double> fold_qwk, fold_mse;
  double mean_qwk = 0.0, mean_mse = 0.0;
  std::vector<std::string> flags;
};

struct GridSearchResult {
  ParamMap best;
  std::size_t best_index = 0;
  std::vector<CvRow> table;

  nlohmann::json to_json() const;
};

// Best = highest mean QWK, then lowest mean MSE, then first in grid order.
GridSearchResult grid_search(const GridSearchSpec& spec, const DenseMatrix& X,
                             std::span<const int> y, int n_classes, int threads = 1);

// Forest on the single word-count column.
Model length_only_baseline(const DenseMatrix& X, const std::vector<std::string>& names,
                           std::span<const int> y, int n_classes, Task task,
                           std::uint64_t seed, const std::string& length_column = "W");

}  // namespace speechscore

#endif  // SPEECHSCORE_MODEL_SELECTION_HPP_
