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

#include "speechscore/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "speechscore/common.hpp"

namespace speechscore {

namespace {

void check_pairs(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorKind::kInvalidArgument, "metric inputs differ in length");
  if (a == 0) throw Error(ErrorKind::kInvalidArgument, "metric needs at least one pair");
}

}  // namespace

Matrix2 confusion_matrix(std::span<const int> human, std::span<const int> predicted,
                         int n_classes) {
  check_pairs(human.size(), predicted.size());
  if (n_classes < 2) throw Error(ErrorKind::kInvalidArgument, "need at least 2 classes");
  Matrix2 o(n_classes, std::vector<double>(n_classes, 0.0));
  for (std::size_t k = 0; k < human.size(); ++k) {
    const int i = human[k], j = predicted[k];
    if (i < 0 || i >= n_classes || j < 0 || j >= n_classes) {
      throw Error(ErrorKind::kInvalidArgument, "grade outside [0, N-1]");
    }
    o[i][j] += 1.0;
  }
  return o;
}

Matrix2 qwk_weights(int n) {
  Matrix2 w(n, std::vector<double>(n, 0.0));
  const double d = static_cast<double>(n - 1) * (n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w[i][j] = static_cast<double>((i - j) * (i - j)) / d;
  }
  return w;
}

KappaResult qwk_detail(std::span<const int> human, std::span<const int> predicted,
                       int n) {
  const Matrix2 o = confusion_matrix(human, predicted, n);
  const Matrix2 w = qwk_weights(n);
  std::vector<double> hist_h(n, 0.0), hist_p(n, 0.0);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      hist_h[i] += o[i][j];
      hist_p[j] += o[i][j];
      total += o[i][j];
    }
  }
  double wo = 0.0, we = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double e = hist_h[i] * hist_p[j] / total;
      wo += w[i][j] * o[i][j];
      we += w[i][j] * e;
    }
  }
  if (we == 0.0) return {1.0, true};
  return {1.0 - wo / we, false};
}

double qwk(std::span<const int> human, std::span<const int> predicted, int n) {
  return qwk_detail(human, predicted, n).kappa;
}

PearsonResult pearson_detail(std::span<const double> a, std::span<const double> b) {
  check_pairs(a.size(), b.size());
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return {0.0, true};
  return {std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0), false};
}

double pearson(std::span<const double> a, std::span<const double> b) {
  return pearson_detail(a, b).r;
}

double mse(std::span<const double> y_true, std::span<const double> y_pred) {
  check_pairs(y_true.size(), y_pred.size());
  double s = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double d = y_true[i] - y_pred[i];
    s += d * d;
  }
  return s / static_cast<double>(y_true.size());
}

int round_to_grade(double raw, int n) {
  if (!std::isfinite(raw)) throw Error(ErrorKind::kInvalidArgument, "non-finite prediction");
  const double r = std::floor(raw + 0.5);
  return static_cast<int>(std::clamp(r, 0.0, static_cast<double>(n - 1)));
}

nlohmann::json MetricReport::to_json() const {
  return {{"qwk", qwk}, {"pearson_r", pearson_r}, {"mse", mse}, {"n", n},
          {"confusion", confusion}, {"flags", flags}};
}

MetricReport evaluate_grades(std::span<const int> human, std::span<const int> predicted,
                             int n_classes) {
  MetricReport r;
  const KappaResult k = qwk_detail(human, predicted, n_classes);
  r.qwk = k.kappa;
  if (k.degenerate) r.flags.push_back("qwk_degenerate");
  const std::vector<double> h(human.begin(), human.end()), p(predicted.begin(), predicted.end());
  const PearsonResult pr = pearson_detail(h, p);
  r.pearson_r = pr.r;
  if (pr.degenerate) r.flags.push_back("pearson_constant_input");
  r.mse = mse(h, p);
  r.n = static_cast<int>(human.size());
  r.confusion = confusion_matrix(human, predicted, n_classes);
  return r;
}

}  // namespace speechscore
