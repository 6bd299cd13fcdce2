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

#include "speechscore/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "speechscore/common.hpp"

namespace speechscore {

namespace {

constexpr double kGainTolerance = 1e-12;

bool improves(double candidate, double best) {
  return candidate > best + kGainTolerance * std::max(1.0, std::abs(best));
}

// Row indices sorted by each feature, computed once and shared by every tree
// of an ensemble.
struct Presort {
  std::vector<std::vector<std::uint32_t>> order;

  explicit Presort(const DenseMatrix& X) : order(X.cols) {
    for (std::size_t j = 0; j < X.cols; ++j) {
      auto& o = order[j];
      o.resize(X.rows);
      std::iota(o.begin(), o.end(), 0u);
      std::stable_sort(o.begin(), o.end(),
                       [&](std::uint32_t a, std::uint32_t b) { return X(a, j) < X(b, j); });
    }
  }
};

struct Stats {
  double w = 0.0, wy = 0.0, wyy = 0.0;
  int count = 0;
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();
  std::vector<double> cls;
};

class Builder {
 public:
  Builder(const DenseMatrix& X, const Presort& presort, std::span<const double> y,
          std::span<const double> w, const TreeParams& params, Task task, int n_classes,
          std::uint64_t seed)
      : X_(X), presort_(presort), y_(y), w_(w), params_(params), task_(task),
        k_(task == Task::kClassification ? n_classes : 1), rng_(seed) {
    if (X.rows == 0 || y.size() != X.rows || w.size() != X.rows) {
      throw Error(ErrorKind::kInvalidArgument, "tree fit needs |X| = |y| = |w| > 0");
    }
    if (task_ == Task::kClassification) {
      for (double v : y) {
        if (v < 0 || v >= k_ || v != std::floor(v)) {
          throw Error(ErrorKind::kInvalidArgument, "class label outside [0, n_classes)");
        }
      }
    }
    double sw = 0.0, swy = 0.0;
    for (std::size_t i = 0; i < X.rows; ++i) {
      if (w[i] < 0 || !std::isfinite(w[i])) {
        throw Error(ErrorKind::kInvalidArgument, "sample weights must be finite and >= 0");
      }
      sw += w[i];
      swy += w[i] * y[i];
    }
    shift_ = sw > 0.0 ? swy / sw : 0.0;
  }

  Tree build() {
    const std::size_t n = X_.rows;
    node_of_.assign(n, -1);
    Stats root = empty_stats();
    for (std::size_t i = 0; i < n; ++i) {
      if (w_[i] > 0.0) {
        node_of_[i] = 0;
        accumulate(root, i);
      }
    }
    if (root.count == 0) {
      throw Error(ErrorKind::kInvalidArgument, "tree fit needs a positive sample weight");
    }
    tree_.nodes.push_back(make_node(root));
    std::vector<int> frontier = {0};
    std::vector<Stats> frontier_stats = {root};

    for (int depth = 0; depth < params_.max_depth && !frontier.empty(); ++depth) {
      grow_level(frontier, frontier_stats);
    }
    return std::move(tree_);
  }

 private:
  Stats empty_stats() const {
    Stats s;
    s.cls.assign(task_ == Task::kClassification ? k_ : 0, 0.0);
    return s;
  }

  void accumulate(Stats& s, std::size_t i) const {
    const double w = w_[i];
    s.w += w;
    s.count += 1;
    if (task_ == Task::kClassification) {
      s.cls[static_cast<std::size_t>(y_[i])] += w;
    } else {
      const double y = y_[i] - shift_;
      s.wy += w * y;
      s.wyy += w * y * y;
    }
    s.ymin = std::min(s.ymin, y_[i]);
    s.ymax = std::max(s.ymax, y_[i]);
  }

  // W times the node impurity.
  double impurity(double w, double wy, double wyy, const double* cls) const {
    if (w <= 0.0) return 0.0;
    if (task_ == Task::kClassification) {
      double s = 0.0;
      for (int k = 0; k < k_; ++k) s += cls[k] * cls[k];
      return std::max(0.0, w - s / w);
    }
    return std::max(0.0, wyy - wy * wy / w);
  }
  double impurity(const Stats& s) const {
    return impurity(s.w, s.wy, s.wyy, s.cls.data());
  }

  TreeNode make_node(const Stats& s) const {
    TreeNode node;
    node.cover = s.w;
    if (task_ == Task::kClassification) {
      node.value.resize(k_);
      for (int k = 0; k < k_; ++k) node.value[k] = s.cls[k] / s.w;
    } else {
      node.value = {s.wy / s.w + shift_};
    }
    return node;
  }

  bool splittable(const Stats& s) const {
    return s.count >= params_.min_samples_split &&
           s.count >= 2 * std::max(1, params_.min_samples_leaf) && s.ymax > s.ymin;
  }

  void grow_level(std::vector<int>& frontier, std::vector<Stats>& frontier_stats) {
    const std::size_t p = X_.cols;
    std::vector<int> slot_of(tree_.nodes.size(), -1);
    std::vector<int> slots;
    std::vector<const Stats*> slot_stats;
    for (std::size_t f = 0; f < frontier.size(); ++f) {
      if (!splittable(frontier_stats[f])) continue;
      slot_of[frontier[f]] = static_cast<int>(slots.size());
      slots.push_back(frontier[f]);
      slot_stats.push_back(&frontier_stats[f]);
    }
    if (slots.empty()) {
      frontier.clear();
      return;
    }
    const std::size_t ns = slots.size();
    const bool subsample = params_.mtry > 0 && static_cast<std::size_t>(params_.mtry) < p;
    std::vector<char> mask;
    if (subsample) {
      mask.assign(ns * p, 0);
      std::vector<std::size_t> features(p);
      for (std::size_t s = 0; s < ns; ++s) {
        std::iota(features.begin(), features.end(), std::size_t{0});
        for (int m = 0; m < params_.mtry; ++m) {
          std::uniform_int_distribution<std::size_t> pick(m, p - 1);
          std::swap(features[m], features[pick(rng_)]);
          mask[s * p + features[m]] = 1;
        }
      }
    }

    std::vector<double> parent_imp(ns);
    for (std::size_t s = 0; s < ns; ++s) parent_imp[s] = impurity(*slot_stats[s]);
    std::vector<double> best_gain(ns, 0.0), best_thr(ns, 0.0);
    std::vector<int> best_feat(ns, -1);

    const int msl = std::max(1, params_.min_samples_leaf);
    std::vector<double> lw(ns), lwy(ns), lwyy(ns), last(ns);
    std::vector<int> lcount(ns);
    std::vector<double> lcls(task_ == Task::kClassification ? ns * k_ : 0);
    std::vector<double> rcls(task_ == Task::kClassification ? k_ : 0);
    for (std::size_t j = 0; j < p; ++j) {
      std::fill(lw.begin(), lw.end(), 0.0);
      std::fill(lwy.begin(), lwy.end(), 0.0);
      std::fill(lwyy.begin(), lwyy.end(), 0.0);
      std::fill(lcount.begin(), lcount.end(), 0);
      std::fill(lcls.begin(), lcls.end(), 0.0);
      for (std::uint32_t i : presort_.order[j]) {
        const int nd = node_of_[i];
        if (nd < 0) continue;
        const int s = slot_of[nd];
        if (s < 0) continue;
        if (subsample && !mask[s * p + j]) continue;
        const double x = X_(i, j);
        const Stats& ps = *slot_stats[s];
        if (lcount[s] >= msl && x > last[s] && ps.count - lcount[s] >= msl) {
          double gain;
          if (task_ == Task::kClassification) {
            const double* lc = &lcls[s * k_];
            for (int k = 0; k < k_; ++k) rcls[k] = ps.cls[k] - lc[k];
            gain = parent_imp[s] - impurity(lw[s], 0, 0, lc) -
                   impurity(ps.w - lw[s], 0, 0, rcls.data());
          } else {
            gain = parent_imp[s] - impurity(lw[s], lwy[s], lwyy[s], nullptr) -
                   impurity(ps.w - lw[s], ps.wy - lwy[s], ps.wyy - lwyy[s], nullptr);
          }
          if (improves(gain, best_gain[s])) {
            double thr = 0.5 * (last[s] + x);
            if (!(thr < x)) thr = last[s];
            best_gain[s] = gain;
            best_feat[s] = static_cast<int>(j);
            best_thr[s] = thr;
          }
        }
        const double w = w_[i];
        lw[s] += w;
        lcount[s] += 1;
        if (task_ == Task::kClassification) {
          lcls[s * k_ + static_cast<std::size_t>(y_[i])] += w;
        } else {
          const double y = y_[i] - shift_;
          lwy[s] += w * y;
          lwyy[s] += w * y * y;
        }
        last[s] = x;
      }
    }

    // Apply splits and route samples to the children.
    std::vector<int> left_of(tree_.nodes.size(), -1);
    std::vector<int> next;
    for (std::size_t s = 0; s < ns; ++s) {
      if (best_feat[s] < 0 || !(best_gain[s] > kGainTolerance * std::max(1.0, parent_imp[s]))) {
        continue;
      }
      const int nd = slots[s];
      const int l = static_cast<int>(tree_.nodes.size());
      tree_.nodes.emplace_back();
      tree_.nodes.emplace_back();
      TreeNode& node = tree_.nodes[nd];
      node.feature = best_feat[s];
      node.threshold = best_thr[s];
      node.gain = best_gain[s];
      node.left = l;
      node.right = l + 1;
      left_of[nd] = l;
      next.push_back(l);
      next.push_back(l + 1);
    }
    std::vector<Stats> child_stats(tree_.nodes.size(), Stats{});
    for (int c : next) child_stats[c] = empty_stats();
    for (std::size_t i = 0; i < X_.rows; ++i) {
      const int nd = node_of_[i];
      if (nd < 0) continue;
      if (left_of[nd] < 0) {
        node_of_[i] = -1;  // settled in a leaf
        continue;
      }
      const TreeNode& node = tree_.nodes[nd];
      const int c = X_(i, node.feature) <= node.threshold ? node.left : node.right;
      node_of_[i] = c;
      accumulate(child_stats[c], i);
    }
    frontier_stats.clear();
    for (int c : next) {
      const Stats& cs = child_stats[c];
      tree_.nodes[c] = make_node(cs);
      frontier_stats.push_back(cs);
    }
    frontier = next;
  }

  const DenseMatrix& X_;
  const Presort& presort_;
  std::span<const double> y_, w_;
  TreeParams params_;
  Task task_;
  int k_;
  std::mt19937_64 rng_;
  double shift_ = 0.0;
  std::vector<int> node_of_;
  Tree tree_;
};

std::vector<double> uniform_weights(std::span<const double> w, std::size_t n) {
  if (w.empty()) return std::vector<double>(n, 1.0);
  return {w.begin(), w.end()};
}

nlohmann::json tree_to_json(const Tree& t) {
  nlohmann::json feature = nlohmann::json::array(), threshold = nlohmann::json::array(),
                 left = nlohmann::json::array(), right = nlohmann::json::array(),
                 cover = nlohmann::json::array(), gain = nlohmann::json::array(),
                 value = nlohmann::json::array();
  for (const auto& n : t.nodes) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    cover.push_back(n.cover);
    gain.push_back(n.gain);
    value.push_back(n.value);
  }
  return {{"feature", feature}, {"threshold", threshold}, {"left", left},
          {"right", right},     {"cover", cover},         {"gain", gain},
          {"value", value}};
}

Tree tree_from_json(const nlohmann::json& j) {
  Tree t;
  const std::size_t n = j.at("feature").size();
  for (const char* key : {"threshold", "left", "right", "cover", "gain", "value"}) {
    if (j.at(key).size() != n) {
      throw Error(ErrorKind::kParse, std::string("tree array '") + key + "' has wrong length");
    }
  }
  t.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    TreeNode& node = t.nodes[i];
    node.feature = j["feature"][i].get<int>();
    node.threshold = j["threshold"][i].get<double>();
    node.left = j["left"][i].get<int>();
    node.right = j["right"][i].get<int>();
    node.cover = j["cover"][i].get<double>();
    node.gain = j["gain"][i].get<double>();
    node.value = j["value"][i].get<std::vector<double>>();
    if (!node.is_leaf() && (node.left <= 0 || node.right <= 0 ||
                            static_cast<std::size_t>(std::max(node.left, node.right)) >= n)) {
      throw Error(ErrorKind::kParse, "tree child index out of range");
    }
  }
  return t;
}

}  // namespace

std::string_view task_name(Task task) {
  return task == Task::kRegression ? "regression" : "classification";
}

Task parse_task(std::string_view name) {
  if (name == "regression") return Task::kRegression;
  if (name == "classification") return Task::kClassification;
  throw Error(ErrorKind::kInvalidArgument, "unknown task formulation: " + std::string(name));
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  DenseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) {
      throw Error(ErrorKind::kInvalidArgument, "ragged rows in matrix");
    }
    std::copy(rows[i].begin(), rows[i].end(), m.values.begin() + i * m.cols);
  }
  return m;
}

const std::vector<double>& Tree::predict(std::span<const double> x) const {
  int i = 0;
  while (!nodes[i].is_leaf()) {
    const TreeNode& n = nodes[i];
    i = x[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes[i].value;
}

int Tree::depth() const {
  std::vector<int> d(nodes.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) continue;
    d[nodes[i].left] = d[nodes[i].right] = d[i] + 1;
    best = std::max(best, d[i] + 1);
  }
  return best;
}

int Tree::split_count() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(),
                                        [](const TreeNode& n) { return !n.is_leaf(); }));
}

Tree fit_tree(const DenseMatrix& X, std::span<const double> y,
              std::span<const double> weights, const TreeParams& params, Task task,
              int n_classes, std::uint64_t seed) {
  const Presort presort(X);
  const auto w = uniform_weights(weights, X.rows);
  return Builder(X, presort, y, w, params, task, n_classes, seed).build();
}

std::string_view ensemble_kind_name(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::kSingleTree: return "single_tree";
    case EnsembleKind::kForest: return "forest";
    case EnsembleKind::kGbtRegressor: return "gbt_regressor";
    case EnsembleKind::kGbtClassifier: return "gbt_classifier";
  }
  return "unknown";
}

int TreeEnsembleModel::output_dim() const {
  return task == Task::kClassification ? n_classes : 1;
}

double TreeEnsembleModel::tree_scale() const {
  switch (kind) {
    case EnsembleKind::kForest: return trees.empty() ? 0.0 : 1.0 / trees.size();
    case EnsembleKind::kGbtRegressor:
    case EnsembleKind::kGbtClassifier: return learning_rate;
    case EnsembleKind::kSingleTree: break;
  }
  return 1.0;
}

int TreeEnsembleModel::tree_output(std::size_t t) const {
  if (kind == EnsembleKind::kGbtClassifier) return static_cast<int>(t % n_classes);
  return -1;
}

std::vector<double> TreeEnsembleModel::predict_raw(std::span<const double> x) const {
  std::vector<double> out = base_score;
  out.resize(output_dim(), 0.0);
  const double scale = tree_scale();
  for (std::size_t t = 0; t < trees.size(); ++t) {
    const auto& v = trees[t].predict(x);
    const int o = tree_output(t);
    if (o >= 0) {
      out[o] += scale * v[0];
    } else {
      for (std::size_t d = 0; d < out.size(); ++d) out[d] += scale * v[d];
    }
  }
  return out;
}

std::vector<double> softmax(std::span<const double> m) {
  std::vector<double> p(m.begin(), m.end());
  if (p.empty()) return p;
  const double mx = *std::max_element(p.begin(), p.end());
  double z = 0.0;
  for (double& v : p) z += (v = std::exp(v - mx));
  for (double& v : p) v /= z;
  return p;
}

std::vector<double> TreeEnsembleModel::predict_proba(std::span<const double> x) const {
  if (task != Task::kClassification) {
    throw Error(ErrorKind::kPrecondition, "class probabilities need a classifier");
  }
  auto raw = predict_raw(x);
  return kind == EnsembleKind::kGbtClassifier ? softmax(raw) : raw;
}

double TreeEnsembleModel::predict(std::span<const double> x) const {
  const auto raw = predict_raw(x);
  if (task == Task::kRegression) return raw[0];
  return static_cast<double>(std::max_element(raw.begin(), raw.end()) - raw.begin());
}

nlohmann::json TreeEnsembleModel::to_json() const {
  nlohmann::json trees_json = nlohmann::json::array();
  for (const auto& t : trees) trees_json.push_back(tree_to_json(t));
  return {{"kind", ensemble_kind_name(kind)}, {"task", task_name(task)},
          {"n_classes", n_classes},           {"base_score", base_score},
          {"learning_rate", learning_rate},   {"feature_names", feature_names},
          {"trees", trees_json}};
}

TreeEnsembleModel TreeEnsembleModel::from_json(const nlohmann::json& j) {
  TreeEnsembleModel m;
  const std::string kind = j.at("kind").get<std::string>();
  bool known = false;
  for (EnsembleKind k : {EnsembleKind::kSingleTree, EnsembleKind::kForest,
                         EnsembleKind::kGbtRegressor, EnsembleKind::kGbtClassifier}) {
    if (ensemble_kind_name(k) == kind) {
      m.kind = k;
      known = true;
    }
  }
  if (!known) throw Error(ErrorKind::kParse, "unknown ensemble kind: " + kind);
  m.task = parse_task(j.at("task").get<std::string>());
  m.n_classes = j.at("n_classes").get<int>();
  m.base_score = j.at("base_score").get<std::vector<double>>();
  m.learning_rate = j.at("learning_rate").get<double>();
  m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  for (const auto& t : j.at("trees")) {
    m.trees.push_back(tree_from_json(t));
    for (const auto& n : m.trees.back().nodes) {
      if (n.feature >= static_cast<int>(m.feature_names.size())) {
        throw Error(ErrorKind::kParse, "tree references an unknown feature index");
      }
    }
  }
  return m;
}

TreeEnsembleModel single_tree_model(const DenseMatrix& X, std::span<const double> y,
                                    std::span<const double> weights,
                                    const TreeParams& params, Task task, int n_classes,
                                    std::uint64_t seed) {
  TreeEnsembleModel m;
  m.kind = EnsembleKind::kSingleTree;
  m.task = task;
  m.n_classes = task == Task::kClassification ? n_classes : 1;
  m.base_score.assign(m.output_dim(), 0.0);
  m.trees.push_back(fit_tree(X, y, weights, params, task, n_classes, seed));
  return m;
}

TreeEnsembleModel fit_forest(const DenseMatrix& X, std::span<const double> y,
                             std::span<const double> weights, const ForestParams& params,
                             Task task, int n_classes, int threads) {
  if (params.n_trees < 1) throw Error(ErrorKind::kInvalidArgument, "n_trees must be >= 1");
  const Presort presort(X);
  const auto base = uniform_weights(weights, X.rows);
  TreeEnsembleModel m;
  m.kind = EnsembleKind::kForest;
  m.task = task;
  m.n_classes = task == Task::kClassification ? n_classes : 1;
  m.base_score.assign(m.output_dim(), 0.0);
  m.trees.resize(params.n_trees);
  parallel_for(m.trees.size(), threads, [&](std::size_t t) {
    const std::uint64_t tree_seed = derive_seed(params.seed, t);
    std::vector<double> w = base;
    if (params.bootstrap) {
      std::mt19937_64 rng(tree_seed);
      std::uniform_int_distribution<std::size_t> draw(0, X.rows - 1);
      std::vector<double> multiplicity(X.rows, 0.0);
      for (std::size_t k = 0; k < X.rows; ++k) multiplicity[draw(rng)] += 1.0;
      for (std::size_t i = 0; i < X.rows; ++i) w[i] *= multiplicity[i];
    }
    m.trees[t] = Builder(X, presort, y, w, params.tree, task, n_classes,
                         derive_seed(tree_seed, 1)).build();
  });
  return m;
}

TreeEnsembleModel fit_gbt(const DenseMatrix& X, std::span<const double> y,
                          std::span<const double> weights, const GbtParams& params,
                          Task task, int n_classes, std::vector<double>* stage_loss) {
  if (params.n_stages < 1) throw Error(ErrorKind::kInvalidArgument, "n_stages must be >= 1");
  if (!(params.learning_rate > 0.0 && params.learning_rate <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "learning_rate must lie in (0, 1]");
  }
  const std::size_t n = X.rows;
  if (n == 0 || y.size() != n) {
    throw Error(ErrorKind::kInvalidArgument, "GBT fit needs |X| = |y| > 0");
  }
  const Presort presort(X);
  const auto w = uniform_weights(weights, n);
  const double sw = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(sw > 0.0)) throw Error(ErrorKind::kInvalidArgument, "GBT fit needs positive weight");
  const double nu = params.learning_rate;

  TreeEnsembleModel m;
  m.task = task;
  m.learning_rate = nu;
  if (stage_loss) stage_loss->clear();

  if (task == Task::kRegression) {
    m.kind = EnsembleKind::kGbtRegressor;
    m.n_classes = 1;
    double f0 = 0.0;
    if (params.base == BaseScore::kMean) {
      for (std::size_t i = 0; i < n; ++i) f0 += w[i] * y[i];
      f0 /= sw;
    }
    m.base_score = {f0};
    std::vector<double> f(n, f0), r(n);
    for (int stage = 0; stage < params.n_stages; ++stage) {
      for (std::size_t i = 0; i < n; ++i) r[i] = y[i] - f[i];
      Tree t = Builder(X, presort, r, w, params.tree, Task::kRegression, 1,
                       derive_seed(params.seed, stage)).build();
      double loss = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        f[i] += nu * t.predict(X.row(i))[0];
        loss += w[i] * (y[i] - f[i]) * (y[i] - f[i]);
      }
      if (stage_loss) stage_loss->push_back(loss / sw);
      m.trees.push_back(std::move(t));
    }
    return m;
  }

  if (n_classes < 2) throw Error(ErrorKind::kInvalidArgument, "classification needs >= 2 classes");
  m.kind = EnsembleKind::kGbtClassifier;
  m.n_classes = n_classes;
  const auto K = static_cast<std::size_t>(n_classes);
  std::vector<double> base(K, 0.0);
  if (params.base == BaseScore::kMean) {
    std::vector<double> prior(K, 0.0);
    for (std::size_t i = 0; i < n; ++i) prior[static_cast<std::size_t>(y[i])] += w[i];
    for (std::size_t k = 0; k < K; ++k) base[k] = std::log(std::max(prior[k] / sw, 1e-12));
  }
  m.base_score = base;
  std::vector<double> f(n * K);
  for (std::size_t i = 0; i < n; ++i) std::copy(base.begin(), base.end(), f.begin() + i * K);
  std::vector<double> prob(n * K), g(n);
  for (int stage = 0; stage < params.n_stages; ++stage) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = softmax(std::span<const double>(f.data() + i * K, K));
      std::copy(p.begin(), p.end(), prob.begin() + i * K);
    }
    std::vector<Tree> stage_trees;
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        g[i] = (static_cast<std::size_t>(y[i]) == k ? 1.0 : 0.0) - prob[i * K + k];
      }
      stage_trees.push_back(Builder(X, presort, g, w, params.tree, Task::kRegression, 1,
                                    derive_seed(params.seed, stage * K + k)).build());
    }
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < K; ++k) {
        f[i * K + k] += nu * stage_trees[k].predict(X.row(i))[0];
      }
      const auto p = softmax(std::span<const double>(f.data() + i * K, K));
      loss -= w[i] * std::log(std::max(p[static_cast<std::size_t>(y[i])], 1e-300));
    }
    if (stage_loss) stage_loss->push_back(loss / sw);
    for (auto& t : stage_trees) m.trees.push_back(std::move(t));
  }
  return m;
}

}  // namespace speechscore
