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

// Experiment orchestration: per-prompt benchmarks over model families and
// task formulations, and the two group-ablation protocols.

#ifndef SPEECHSCORE_HARNESS_HPP_
#define SPEECHSCORE_HARNESS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "speechscore/extract.hpp"
#include "speechscore/feature_matrix.hpp"
#include "speechscore/metrics.hpp"
#include "speechscore/model_selection.hpp"

namespace speechscore {

// Standardizer fitted on the training rows plus the model trained on the
// standardized features.
struct TrainedModel {
  Standardizer standardizer;
  Model model;

  // Rows of `m` must carry the fitted columns in the fitted order.
  std::vector<int> predict_grades(const FeatureMatrix& m) const;
  DenseMatrix standardized(const FeatureMatrix& m) const;

  nlohmann::json to_json() const;
  static TrainedModel from_json(const nlohmann::json& j);
};

// Stratified 70:10:20-style split computed independently for each prompt.
SplitAssignment split_per_prompt(const std::vector<AlignedResponse>& corpus,
                                 std::array<double, 3> ratios, std::uint64_t seed);

// Number of grade levels: one more than the largest grade in `m`.
int grade_levels(const FeatureMatrix& m);
std::vector<int> grades_of(const FeatureMatrix& m);
DenseMatrix dense_of(const FeatureMatrix& m);

struct TrainConfig {
  ModelFamily family = ModelFamily::kGbt;
  Task task = Task::kRegression;
  ParamGrid grid;  // empty: the family's default grid
  ParamMap fixed;  // applied under the grid
  int folds = 5;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct TrainResult {
  TrainedModel trained;
  GridSearchResult cv;
};

// Grid search on `train`, then a refit of the best parameters on all of it.
TrainResult train_model(const FeatureMatrix& train, int n_classes, const TrainConfig& config);

struct BenchmarkConfig {
  std::vector<ModelFamily> models = {ModelFamily::kLinear, ModelFamily::kLogistic,
                                     ModelFamily::kTree, ModelFamily::kForest,
                                     ModelFamily::kGbt};
  std::vector<Task> formulations = {Task::kRegression, Task::kClassification};
  std::map<ModelFamily, ParamGrid> grids;  // missing: default grid
  std::vector<FeatureGroup> groups = all_groups();  // must all be present
  std::string evaluation_split = "test";
  int folds = 5;
  bool length_baseline = true;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct BenchmarkRow {
  std::string prompt;
  std::string model;        // family name, "length_baseline" or "HH"
  std::string formulation;  // "regression", "classification" or "-"
  std::string split;
  ParamMap params;
  MetricReport metrics;
};

struct BenchmarkCell {
  std::string prompt, model, formulation;
  TrainResult result;
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;
  std::vector<BenchmarkCell> cells;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

// One row per (prompt, model, formulation) whose family supports the
// formulation, plus a length baseline per (prompt, formulation) and an HH
// row per prompt when second grades exist. Families that do not support a
// formulation are skipped.
BenchmarkReport run_benchmark(const FeatureMatrix& matrix, const BenchmarkConfig& config);

// reports/<prompt>/<model>/<formulation>/{report.json,report.csv,cv.json,
// model.json}, plus summary.json and summary.csv at the top.
void write_benchmark(const BenchmarkReport& report, const std::filesystem::path& dir);

enum class AblationMode { kAdditive, kLeaveOneOut };
std::string_view ablation_mode_name(AblationMode mode);
AblationMode parse_ablation_mode(std::string_view name);

struct AblationConfig {
  ModelFamily family = ModelFamily::kGbt;
  Task task = Task::kRegression;
  ParamGrid grid;  // tuned once on the full feature set
  std::vector<FeatureGroup> order = all_groups();
  std::string prompt;  // empty: every row
  std::string evaluation_split = "test";
  int folds = 5;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct AblationRow {
  std::string configuration;  // "CF+FF", "-GVF", "full"
  std::vector<std::string> groups;
  std::size_t n_features = 0;
  MetricReport metrics;
  double pct_change = 0.0;  // vs. the full feature set
  Model model;
};

struct AblationReport {
  AblationMode mode = AblationMode::kAdditive;
  std::string prompt;
  ParamMap params;
  std::vector<AblationRow> rows;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

// Cumulative stages over `order`; the last stage is the full set.
AblationReport ablation_additive(const FeatureMatrix& matrix, const AblationConfig& config);
// The full set followed by one row per group with that group removed.
AblationReport ablation_leave_one_out(const FeatureMatrix& matrix, const AblationConfig& config);

}  // namespace speechscore

#endif  // SPEECHSCORE_HARNESS_HPP_
