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

#include "speechscore/explain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "speechscore/common.hpp"

namespace speechscore {

namespace {

struct PathElement {
  int feature = -1;
  double zero_fraction = 0.0;
  double one_fraction = 0.0;
  double pweight = 0.0;
};

void extend_path(PathElement* path, int depth, double zero, double one, int feature) {
  path[depth] = {feature, zero, one, depth == 0 ? 1.0 : 0.0};
  for (int i = depth - 1; i >= 0; --i) {
    path[i + 1].pweight += one * path[i].pweight * (i + 1) / static_cast<double>(depth + 1);
    path[i].pweight = zero * path[i].pweight * (depth - i) / static_cast<double>(depth + 1);
  }
}

void unwind_path(PathElement* path, int depth, int index) {
  const double one = path[index].one_fraction;
  const double zero = path[index].zero_fraction;
  double next = path[depth].pweight;
  for (int i = depth - 1; i >= 0; --i) {
    if (one != 0.0) {
      const double tmp = path[i].pweight;
      path[i].pweight = next * (depth + 1) / ((i + 1) * one);
      next = tmp - path[i].pweight * zero * (depth - i) / static_cast<double>(depth + 1);
    } else {
      path[i].pweight = path[i].pweight * (depth + 1) / (zero * (depth - i));
    }
  }
  for (int i = index; i < depth; ++i) {
    path[i].feature = path[i + 1].feature;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
}

double unwound_path_sum(const PathElement* path, int depth, int index) {
  const double one = path[index].one_fraction;
  const double zero = path[index].zero_fraction;
  double next = path[depth].pweight;
  double total = 0.0;
  for (int i = depth - 1; i >= 0; --i) {
    if (one != 0.0) {
      const double tmp = next * (depth + 1) / ((i + 1) * one);
      total += tmp;
      next = path[i].pweight - tmp * zero * (depth - i) / static_cast<double>(depth + 1);
    } else if (zero != 0.0) {
      total += path[i].pweight / zero / ((depth - i) / static_cast<double>(depth + 1));
    }
  }
  return total;
}

class TreeShap {
 public:
  TreeShap(const Tree& tree, std::span<const double> x, int output, double scale,
           std::vector<double>& phi)
      : tree_(tree), x_(x), output_(output), scale_(scale), phi_(phi) {
    // Each recursion level copies its parent's path into the next slot.
    const std::size_t d = static_cast<std::size_t>(tree.depth()) + 2;
    storage_.resize(d * (d + 1) / 2 + d);
  }

  void run() { recurse(0, storage_.data(), 0, 1.0, 1.0, -1); }

 private:
  double leaf_value(const TreeNode& n) const {
    return n.value.size() == 1 ? n.value[0] : n.value[output_];
  }

  void recurse(int node, PathElement* parent_path, int depth, double zero, double one,
               int feature) {
    PathElement* path = parent_path + depth;
    std::copy(parent_path, parent_path + depth, path);
    extend_path(path, depth, zero, one, feature);
    const TreeNode& n = tree_.nodes[node];
    if (n.is_leaf()) {
      const double v = leaf_value(n) * scale_;
      for (int i = 1; i <= depth; ++i) {
        const double w = unwound_path_sum(path, depth, i);
        phi_[path[i].feature] += w * (path[i].one_fraction - path[i].zero_fraction) * v;
      }
      return;
    }
    const bool go_left = x_[n.feature] <= n.threshold;
    const int hot = go_left ? n.left : n.right;
    const int cold = go_left ? n.right : n.left;
    double incoming_zero = 1.0, incoming_one = 1.0;
    int k = 1;
    for (; k <= depth; ++k) {
      if (path[k].feature == n.feature) break;
    }
    if (k <= depth) {
      incoming_zero = path[k].zero_fraction;
      incoming_one = path[k].one_fraction;
      unwind_path(path, depth, k);
      --depth;
    }
    const double hot_zero = tree_.nodes[hot].cover / n.cover;
    const double cold_zero = tree_.nodes[cold].cover / n.cover;
    recurse(hot, path, depth + 1, hot_zero * incoming_zero, incoming_one, n.feature);
    recurse(cold, path, depth + 1, cold_zero * incoming_zero, 0.0, n.feature);
  }

  const Tree& tree_;
  std::span<const double> x_;
  int output_;
  double scale_;
  std::vector<double>& phi_;
  std::vector<PathElement> storage_;
};

void check_covers(const Tree& tree) {
  for (const auto& n : tree.nodes) {
    if (!n.is_leaf() && !(n.cover > 0.0)) {
      throw Error(ErrorKind::kDegenerateCover, "internal tree node has zero cover");
    }
  }
}

// Cover-conditional expectation given that features in `known` follow x.
double conditional_value(const Tree& tree, int node, std::span<const double> x,
                         const std::vector<char>& known, int output) {
  const TreeNode& n = tree.nodes[node];
  if (n.is_leaf()) return n.value.size() == 1 ? n.value[0] : n.value[output];
  if (known[n.feature]) {
    return conditional_value(tree, x[n.feature] <= n.threshold ? n.left : n.right, x, known,
                             output);
  }
  const TreeNode& l = tree.nodes[n.left];
  const TreeNode& r = tree.nodes[n.right];
  return (l.cover * conditional_value(tree, n.left, x, known, output) +
          r.cover * conditional_value(tree, n.right, x, known, output)) /
         n.cover;
}

bool tree_contributes(const TreeEnsembleModel& m, std::size_t t, int output) {
  const int o = m.tree_output(t);
  return o < 0 || o == output;
}

std::size_t n_features(const TreeEnsembleModel& m) {
  std::size_t p = m.feature_names.size();
  for (const auto& t : m.trees) {
    for (const auto& n : t.nodes) p = std::max(p, static_cast<std::size_t>(n.feature + 1));
  }
  return p;
}

double base_of(const TreeEnsembleModel& m, int output) {
  return m.base_score.empty() ? 0.0 : m.base_score[std::min<std::size_t>(output, m.base_score.size() - 1)];
}

}  // namespace

ImportanceRanking gain_importance(const TreeEnsembleModel& model, ImportanceMethod method) {
  const std::size_t p = n_features(model);
  std::vector<double> total(p, 0.0);
  for (const auto& t : model.trees) {
    for (const auto& n : t.nodes) {
      if (!n.is_leaf()) total[n.feature] += method == ImportanceMethod::kGain ? n.gain : 1.0;
    }
  }
  ImportanceRanking r;
  r.method = method;
  const double sum = std::accumulate(total.begin(), total.end(), 0.0);
  if (!(sum > 0.0)) {
    r.flags.push_back("no_splits");
    return r;
  }
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return total[a] > total[b]; });
  for (std::size_t j : order) {
    const std::string name =
        j < model.feature_names.size() ? model.feature_names[j] : "f" + std::to_string(j);
    r.items.emplace_back(name, total[j] / sum);
  }
  return r;
}

double percentile(std::vector<double> v, double q) {
  if (v.empty()) throw Error(ErrorKind::kInvalidArgument, "percentile of empty sample");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

PdpCurve pdp(const Predictor& predict, const DenseMatrix& background, std::size_t feature,
             const std::string& feature_name, int n_grid) {
  if (background.rows == 0) throw Error(ErrorKind::kInvalidArgument, "PDP background is empty");
  if (feature >= background.cols) {
    throw Error(ErrorKind::kInvalidArgument, "PDP feature '" + feature_name + "' not present");
  }
  if (n_grid < 1) throw Error(ErrorKind::kInvalidArgument, "PDP grid needs >= 1 point");
  std::vector<double> col(background.rows);
  for (std::size_t i = 0; i < background.rows; ++i) col[i] = background(i, feature);
  const double lo = percentile(col, 0.01), hi = percentile(col, 0.99);
  PdpCurve c;
  c.feature = feature_name;
  c.n_background = static_cast<int>(background.rows);
  if (!(hi > lo)) {
    c.flags.push_back("constant_feature");
    c.grid = {lo};
  } else if (n_grid == 1) {
    c.grid = {lo};
  } else {
    for (int g = 0; g < n_grid; ++g) c.grid.push_back(lo + (hi - lo) * g / (n_grid - 1));
  }
  std::vector<double> row(background.cols);
  for (double v : c.grid) {
    double s = 0.0;
    for (std::size_t i = 0; i < background.rows; ++i) {
      const auto r = background.row(i);
      std::copy(r.begin(), r.end(), row.begin());
      row[feature] = v;
      s += predict(row);
    }
    c.mean_prediction.push_back(s / static_cast<double>(background.rows));
  }
  return c;
}

double model_output(const TreeEnsembleModel& model, std::span<const double> x, int output) {
  return model.predict_raw(x)[model.output_dim() == 1 ? 0 : output];
}

ShapValues tree_shap(const TreeEnsembleModel& model, std::span<const double> x, int output) {
  ShapValues s;
  s.phi.assign(n_features(model), 0.0);
  s.base_value = base_of(model, output);
  const double scale = model.tree_scale();
  for (std::size_t t = 0; t < model.trees.size(); ++t) {
    if (!tree_contributes(model, t, output)) continue;
    const Tree& tree = model.trees[t];
    check_covers(tree);
    const std::vector<char> none(s.phi.size(), 0);
    s.base_value += scale * conditional_value(tree, 0, x, none, output);
    TreeShap(tree, x, output, scale, s.phi).run();
  }
  return s;
}

ShapValues brute_force_shap(const TreeEnsembleModel& model, std::span<const double> x,
                            int output) {
  const std::size_t p = n_features(model);
  if (p > 12) {
    throw Error(ErrorKind::kPrecondition, "brute-force SHAP refuses more than 12 features");
  }
  const std::size_t subsets = std::size_t{1} << p;
  std::vector<double> v(subsets, base_of(model, output));
  const double scale = model.tree_scale();
  std::vector<char> known(p);
  for (std::size_t s = 0; s < subsets; ++s) {
    for (std::size_t j = 0; j < p; ++j) known[j] = (s >> j) & 1;
    for (std::size_t t = 0; t < model.trees.size(); ++t) {
      if (!tree_contributes(model, t, output)) continue;
      check_covers(model.trees[t]);
      v[s] += scale * conditional_value(model.trees[t], 0, x, known, output);
    }
  }
  std::vector<double> fact(p + 1, 1.0);
  for (std::size_t k = 1; k <= p; ++k) fact[k] = fact[k - 1] * static_cast<double>(k);
  ShapValues out;
  out.base_value = v[0];
  out.phi.assign(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t s = 0; s < subsets; ++s) {
      if (s & bit) continue;
      const auto k = static_cast<std::size_t>(__builtin_popcountll(s));
      const double weight = fact[k] * fact[p - k - 1] / fact[p];
      out.phi[i] += weight * (v[s | bit] - v[s]);
    }
  }
  return out;
}

ShapExplanation shap_matrix(const TreeEnsembleModel& model, const DenseMatrix& X, int output,
                            int threads) {
  if (X.rows == 0) throw Error(ErrorKind::kInvalidArgument, "SHAP needs at least one sample");
  ShapExplanation e;
  e.phi = DenseMatrix(X.rows, X.cols);
  e.feature_values = X;
  e.feature_names = model.feature_names;
  e.feature_names.resize(X.cols);
  std::vector<double> base(X.rows);
  parallel_for(X.rows, threads, [&](std::size_t i) {
    const ShapValues s = tree_shap(model, X.row(i), output);
    base[i] = s.base_value;
    for (std::size_t j = 0; j < s.phi.size() && j < X.cols; ++j) e.phi(i, j) = s.phi[j];
  });
  e.base_value = base[0];
  return e;
}

ShapSummary shap_summary(const ShapExplanation& e) {
  const DenseMatrix& phi = e.phi;
  if (phi.rows == 0) throw Error(ErrorKind::kInvalidArgument, "SHAP summary needs samples");
  ShapSummary s;
  std::vector<double> mean_abs(phi.cols, 0.0);
  for (std::size_t j = 0; j < phi.cols; ++j) {
    for (std::size_t i = 0; i < phi.rows; ++i) mean_abs[j] += std::abs(phi(i, j));
    mean_abs[j] /= static_cast<double>(phi.rows);
    s.ranking.emplace_back(e.feature_names[j], mean_abs[j]);
  }
  std::sort(s.ranking.begin(), s.ranking.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  for (std::size_t j = 0; j < phi.cols; ++j) {
    std::vector<double> col(phi.rows);
    for (std::size_t i = 0; i < phi.rows; ++i) col[i] = e.feature_values(i, j);
    const double m = mean(col), sd = population_sd(col);
    for (std::size_t i = 0; i < phi.rows; ++i) {
      s.points.push_back({e.feature_names[j], phi(i, j), sd > 0.0 ? (col[i] - m) / sd : 0.0});
    }
  }
  return s;
}

}  // namespace speechscore
