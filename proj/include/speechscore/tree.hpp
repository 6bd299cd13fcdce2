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

// CART trees, random forests and gradient-boosted trees. Every node keeps
// its cover (sum of sample weights) for the SHAP recursion.

#ifndef SPEECHSCORE_TREE_HPP_
#define SPEECHSCORE_TREE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace speechscore {

enum class Task { kRegression, kClassification };
std::string_view task_name(Task task);
Task parse_task(std::string_view name);

// Row-major dense matrix.
struct DenseMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> values;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), values(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * cols, cols};
  }
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);
};

struct TreeParams {
  int max_depth = 6;
  int min_samples_leaf = 1;
  int min_samples_split = 2;
  int mtry = 0;  // features tried per split; 0 means all
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // x <= threshold goes left
  int left = -1, right = -1;
  double cover = 0.0;
  double gain = 0.0;  // weighted impurity decrease
  // Leaf output: one value for regression, class proportions for
  // classification. Internal nodes keep their node-level value too.
  std::vector<double> value;

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  const std::vector<double>& predict(std::span<const double> x) const;
  int depth() const;
  int split_count() const;
};

// For classification, y holds class indices in [0, n_classes).
Tree fit_tree(const DenseMatrix& X, std::span<const double> y,
              std::span<const double> weights, const TreeParams& params,
              Task task = Task::kRegression, int n_classes = 1, std::uint64_t seed = 0);

enum class EnsembleKind { kSingleTree, kForest, kGbtRegressor, kGbtClassifier };
std::string_view ensemble_kind_name(EnsembleKind kind);

struct TreeEnsembleModel {
  EnsembleKind kind = EnsembleKind::kSingleTree;
  Task task = Task::kRegression;
  int n_classes = 1;
  // kGbtClassifier stores n_classes trees per stage; tree t scores class
  // t % n_classes.
  std::vector<Tree> trees;
  std::vector<double> base_score;  // one entry per output
  double learning_rate = 1.0;
  std::vector<std::string> feature_names;

  int output_dim() const;
  // Multiplier applied to tree t's leaf values.
  double tree_scale() const;
  // Output dimension tree t writes to, or -1 if its leaves are full vectors.
  int tree_output(std::size_t t) const;

  // Regression: {value}. Forest/tree classification: class proportions.
  // GBT classification: class margins before softmax.
  std::vector<double> predict_raw(std::span<const double> x) const;
  std::vector<double> predict_proba(std::span<const double> x) const;
  // Regression value, or the argmax class index.
  double predict(std::span<const double> x) const;

  nlohmann::json to_json() const;
  static TreeEnsembleModel from_json(const nlohmann::json& j);
};

TreeEnsembleModel single_tree_model(const DenseMatrix& X, std::span<const double> y,
                                    std::span<const double> weights,
                                    const TreeParams& params, Task task, int n_classes,
                                    std::uint64_t seed = 0);

struct ForestParams {
  int n_trees = 100;
  TreeParams tree;
  bool bootstrap = true;
  std::uint64_t seed = 0;
};

// Tree t draws from derive_seed(seed, t), so the result does not depend on
// the thread count.
TreeEnsembleModel fit_forest(const DenseMatrix& X, std::span<const double> y,
                             std::span<const double> weights, const ForestParams& params,
                             Task task = Task::kRegression, int n_classes = 1,
                             int threads = 1);

enum class BaseScore { kMean, kZero };

struct GbtParams {
  int n_stages = 100;
  double learning_rate = 0.1;
  TreeParams tree{3, 1, 2, 0};
  BaseScore base = BaseScore::kMean;
  std::uint64_t seed = 0;
};

// Squared loss for regression; softmax with per-class trees fitted to the
// negative log-loss gradient for classification. When `stage_loss` is given
// it receives the weighted training loss after each stage.
TreeEnsembleModel fit_gbt(const DenseMatrix& X, std::span<const double> y,
                          std::span<const double> weights, const GbtParams& params,
                          Task task = Task::kRegression, int n_classes = 1,
                          std::vector<double>* stage_loss = nullptr);

std::vector<double> softmax(std::span<const double> margins);

}  // namespace speechscore

#endif  // SPEECHSCORE_TREE_HPP_
