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

#include "speechscore/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "speechscore/common.hpp"
#include "speechscore/metrics.hpp"

namespace speechscore {

namespace {

double param(const ParamMap& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

TreeParams tree_params(const ParamMap& p, std::size_t n_features, int depth_default) {
  TreeParams t;
  t.max_depth = static_cast<int>(param(p, "max_depth", depth_default));
  t.min_samples_leaf = static_cast<int>(param(p, "min_samples_leaf", 1));
  t.min_samples_split = static_cast<int>(param(p, "min_samples_split", 2));
  const double frac = param(p, "max_features", 1.0);
  if (frac < 1.0) {
    t.mtry = std::max(1, static_cast<int>(std::lround(frac * static_cast<double>(n_features))));
  }
  return t;
}

DenseMatrix select_rows(const DenseMatrix& X, const std::vector<std::size_t>& rows) {
  DenseMatrix out(rows.size(), X.cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::copy_n(X.values.begin() + rows[r] * X.cols, X.cols, out.values.begin() + r * X.cols);
  }
  return out;
}

}  // namespace

std::string_view family_name(ModelFamily f) {
  switch (f) {
    case ModelFamily::kLinear: return "linear";
    case ModelFamily::kLogistic: return "logistic";
    case ModelFamily::kTree: return "tree";
    case ModelFamily::kForest: return "forest";
    case ModelFamily::kGbt: return "gbt";
  }
  return "unknown";
}

ModelFamily parse_family(std::string_view name) {
  for (ModelFamily f : {ModelFamily::kLinear, ModelFamily::kLogistic, ModelFamily::kTree,
                        ModelFamily::kForest, ModelFamily::kGbt}) {
    if (family_name(f) == name) return f;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown model family: " + std::string(name));
}

bool family_supports(ModelFamily f, Task task) {
  if (f == ModelFamily::kLinear) return task == Task::kRegression;
  if (f == ModelFamily::kLogistic) return task == Task::kClassification;
  return true;
}

std::vector<double> Model::gather(std::span<const double> row) const {
  if (columns.empty()) return {row.begin(), row.end()};
  std::vector<double> x(columns.size());
  for (std::size_t k = 0; k < columns.size(); ++k) x[k] = row[columns[k]];
  return x;
}

double Model::predict(std::span<const double> row) const {
  const auto x = gather(row);
  if (const auto* t = std::get_if<TreeEnsembleModel>(&impl)) return t->predict(x);
  if (const auto* l = std::get_if<LinearModel>(&impl)) return l->predict(x);
  return std::get<LogisticModel>(impl).predict(x);
}

int Model::predict_grade(std::span<const double> row) const {
  const double v = predict(row);
  return task == Task::kRegression ? round_to_grade(v, n_classes) : static_cast<int>(v);
}

std::vector<double> Model::predict_rows(const DenseMatrix& X) const {
  std::vector<double> out(X.rows);
  for (std::size_t i = 0; i < X.rows; ++i) out[i] = predict(X.row(i));
  return out;
}

std::vector<int> Model::predict_grades(const DenseMatrix& X) const {
  std::vector<int> out(X.rows);
  for (std::size_t i = 0; i < X.rows; ++i) out[i] = predict_grade(X.row(i));
  return out;
}

nlohmann::json Model::to_json() const {
  nlohmann::json body;
  std::visit([&](const auto& m) { body = m.to_json(); }, impl);
  return {{"family", family_name(family)}, {"task", task_name(task)},
          {"n_classes", n_classes},        {"params", params},
          {"feature_names", feature_names}, {"columns", columns},
          {"model", body}};
}

Model Model::from_json(const nlohmann::json& j) {
  Model m;
  m.family = parse_family(j.at("family").get<std::string>());
  m.task = parse_task(j.at("task").get<std::string>());
  m.n_classes = j.at("n_classes").get<int>();
  m.params = j.at("params").get<ParamMap>();
  m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  m.columns = j.at("columns").get<std::vector<int>>();
  switch (m.family) {
    case ModelFamily::kLinear: m.impl = LinearModel::from_json(j.at("model")); break;
    case ModelFamily::kLogistic: m.impl = LogisticModel::from_json(j.at("model")); break;
    default: m.impl = TreeEnsembleModel::from_json(j.at("model")); break;
  }
  return m;
}

std::vector<double> class_weights(std::span<const int> y) {
  std::map<int, int> counts;
  for (int c : y) ++counts[c];
  const double n = static_cast<double>(y.size());
  const double k = static_cast<double>(counts.size());
  std::vector<double> w(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) w[i] = n / (k * counts[y[i]]);
  return w;
}

Model fit_model(const ModelSpec& spec, const DenseMatrix& X, std::span<const int> y,
                int n_classes, const std::vector<std::string>& feature_names,
                std::uint64_t seed, int threads) {
  if (!family_supports(spec.family, spec.task)) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(family_name(spec.family)) + " does not support " +
                    std::string(task_name(spec.task)));
  }
  if (X.rows != y.size() || X.rows == 0) {
    throw Error(ErrorKind::kInvalidArgument, "model fit needs |X| = |y| > 0");
  }
  const std::vector<double> yd(y.begin(), y.end());
  const std::vector<double> w =
      spec.use_class_weights ? class_weights(y) : std::vector<double>(y.size(), 1.0);
  const ParamMap& p = spec.params;
  Model m;
  m.family = spec.family;
  m.task = spec.task;
  m.n_classes = n_classes;
  m.params = p;
  m.feature_names = feature_names;
  switch (spec.family) {
    case ModelFamily::kLinear:
      m.impl = fit_linear(X, yd, w, param(p, "lambda", 1e-8));
      break;
    case ModelFamily::kLogistic: {
      LogisticParams lp;
      lp.l2 = param(p, "l2", lp.l2);
      m.impl = fit_logistic(X, yd, w, n_classes, lp);
      break;
    }
    case ModelFamily::kTree:
      m.impl = single_tree_model(X, yd, w, tree_params(p, X.cols, 6), spec.task, n_classes, seed);
      break;
    case ModelFamily::kForest: {
      ForestParams fp;
      fp.n_trees = static_cast<int>(param(p, "n_trees", 100));
      fp.bootstrap = param(p, "bootstrap", 1.0) != 0.0;
      ParamMap q = p;
      q.emplace("max_features", 0.33);
      fp.tree = tree_params(q, X.cols, 12);
      fp.seed = seed;
      m.impl = fit_forest(X, yd, w, fp, spec.task, n_classes, threads);
      break;
    }
    case ModelFamily::kGbt: {
      GbtParams gp;
      gp.n_stages = static_cast<int>(param(p, "n_stages", 100));
      gp.learning_rate = param(p, "learning_rate", 0.1);
      gp.tree = tree_params(p, X.cols, 3);
      gp.seed = seed;
      m.impl = fit_gbt(X, yd, w, gp, spec.task, n_classes);
      break;
    }
  }
  if (auto* t = std::get_if<TreeEnsembleModel>(&m.impl)) t->feature_names = feature_names;
  return m;
}

std::vector<ParamMap> expand_grid(const ParamGrid& grid) {
  std::vector<ParamMap> out = {ParamMap{}};
  for (const auto& [key, values] : grid) {
    if (values.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "grid entry '" + key + "' has no candidates");
    }
    std::vector<ParamMap> next;
    for (const auto& base : out) {
      for (double v : values) {
        ParamMap p = base;
        p[key] = v;
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

ParamGrid default_grid(ModelFamily family) {
  switch (family) {
    case ModelFamily::kGbt:
      return {{"max_depth", {3, 4, 6}},
              {"n_stages", {100, 300}},
              {"learning_rate", {0.05, 0.1}},
              {"min_samples_leaf", {1, 5, 20}}};
    case ModelFamily::kForest:
      return {{"n_trees", {100}}, {"min_samples_leaf", {1, 5, 20}}};
    case ModelFamily::kTree:
      return {{"max_depth", {3, 4, 6}}, {"min_samples_leaf", {1, 5, 20}}};
    case ModelFamily::kLogistic:
      return {{"l2", {1e-3}}};
    case ModelFamily::kLinear:
      return {{"lambda", {1e-8}}};
  }
  return {};
}

std::vector<int> cv_folds(std::span<const int> y, int k, bool stratified, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorKind::kInvalidArgument, "need at least 2 folds");
  std::vector<int> fold(y.size(), 0);
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < y.size(); ++i) groups[stratified ? y[i] : 0].push_back(i);
  std::size_t offset = 0;
  for (auto& [label, idx] : groups) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(label) + 1));
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      fold[idx[r]] = static_cast<int>((offset + r) % static_cast<std::size_t>(k));
    }
    offset += idx.size();
  }
  return fold;
}

nlohmann::json GridSearchResult::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table) {
    rows.push_back({{"params", r.params}, {"fold_qwk", r.fold_qwk}, {"fold_mse", r.fold_mse},
                    {"mean_qwk", r.mean_qwk}, {"mean_mse", r.mean_mse}, {"flags", r.flags}});
  }
  return {{"best", best}, {"best_index", best_index}, {"table", rows}};
}

GridSearchResult grid_search(const GridSearchSpec& spec, const DenseMatrix& X,
                             std::span<const int> y, int n_classes, int threads) {
  if (spec.folds < 2) throw Error(ErrorKind::kInvalidArgument, "need at least 2 folds");
  std::vector<ParamMap> configs = expand_grid(spec.grid);
  for (auto& c : configs) {
    for (const auto& [k, v] : spec.model.params) c.emplace(k, v);
  }
  const auto folds = static_cast<std::size_t>(spec.folds);
  const std::vector<int> fold =
      cv_folds(y, spec.folds, spec.model.task == Task::kClassification, spec.seed);

  GridSearchResult result;
  result.table.resize(configs.size());
  for (std::size_t c = 0; c < configs.size(); ++c) {
    result.table[c].params = configs[c];
    result.table[c].fold_qwk.assign(folds, 0.0);
    result.table[c].fold_mse.assign(folds, 0.0);
  }
  std::vector<std::string> fold_flags(configs.size() * folds);
  const std::vector<std::string> names(X.cols);

  parallel_for(configs.size() * folds, threads, [&](std::size_t task) {
    const std::size_t c = task / folds, f = task % folds;
    std::vector<std::size_t> train, held;
    for (std::size_t i = 0; i < y.size(); ++i) {
      (fold[i] == static_cast<int>(f) ? held : train).push_back(i);
    }
    std::vector<int> ytr, yte;
    for (auto i : train) ytr.push_back(y[i]);
    for (auto i : held) yte.push_back(y[i]);
    if (spec.model.task == Task::kClassification &&
        std::set<int>(ytr.begin(), ytr.end()).size() < static_cast<std::size_t>(n_classes)) {
      fold_flags[task] = "fold_missing_class";
    }
    ModelSpec ms = spec.model;
    ms.params = configs[c];
    const Model m = fit_model(ms, select_rows(X, train), ytr, n_classes, names,
                              derive_seed(spec.seed, task), 1);
    const auto pred = m.predict_grades(select_rows(X, held));
    result.table[c].fold_qwk[f] = qwk(yte, pred, n_classes);
    const std::vector<double> a(yte.begin(), yte.end()), b(pred.begin(), pred.end());
    result.table[c].fold_mse[f] = mse(a, b);
  });

  for (std::size_t c = 0; c < configs.size(); ++c) {
    CvRow& row = result.table[c];
    row.mean_qwk = mean(row.fold_qwk);
    row.mean_mse = mean(row.fold_mse);
    for (std::size_t f = 0; f < folds; ++f) {
      const auto& flag = fold_flags[c * folds + f];
      if (!flag.empty() && std::find(row.flags.begin(), row.flags.end(), flag) == row.flags.end()) {
        row.flags.push_back(flag);
      }
    }
    const CvRow& best = result.table[result.best_index];
    if (c > 0 && (row.mean_qwk > best.mean_qwk ||
                  (row.mean_qwk == best.mean_qwk && row.mean_mse < best.mean_mse))) {
      result.best_index = c;
    }
  }
  result.best = result.table[result.best_index].params;
  return result;
}

Model length_only_baseline(const DenseMatrix& X, const std::vector<std::string>& names,
                           std::span<const int> y, int n_classes, Task task,
                           std::uint64_t seed, const std::string& length_column) {
  const auto it = std::find(names.begin(), names.end(), length_column);
  if (it == names.end()) {
    throw Error(ErrorKind::kSchemaMismatch, "length column '" + length_column + "' missing");
  }
  const int col = static_cast<int>(it - names.begin());
  DenseMatrix x1(X.rows, 1);
  for (std::size_t i = 0; i < X.rows; ++i) x1(i, 0) = X(i, col);
  ModelSpec spec;
  spec.family = ModelFamily::kForest;
  spec.task = task;
  spec.params = {{"n_trees", 100}, {"min_samples_leaf", 5}, {"max_features", 1.0}};
  Model m = fit_model(spec, x1, y, n_classes, {length_column}, seed, 1);
  m.columns = {col};
  return m;
}

}  // namespace speechscore
