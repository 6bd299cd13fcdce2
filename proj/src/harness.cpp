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

#include "speechscore/harness.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "speechscore/common.hpp"
#include "speechscore/plots.hpp"

namespace speechscore {

namespace {

namespace fs = std::filesystem;

nlohmann::json params_json(const ParamMap& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

std::string params_text(const ParamMap& p) {
  std::string s;
  for (const auto& [k, v] : p) {
    if (!s.empty()) s += ';';
    s += k + "=" + format_double(v);
  }
  return s;
}

FeatureMatrix rows_where(const FeatureMatrix& m, const std::string& prompt,
                         const std::string& split) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const RowMeta& meta = m.meta()[i];
    if (!prompt.empty() && meta.prompt_id != prompt) continue;
    if (!split.empty() && meta.split != split) continue;
    if (meta.grade < 0) continue;
    idx.push_back(i);
  }
  return m.select_rows(idx);
}

void require_groups(const FeatureMatrix& m, const std::vector<FeatureGroup>& groups) {
  const std::set<std::string> present(m.groups().begin(), m.groups().end());
  for (FeatureGroup g : groups) {
    if (!present.count(std::string(group_name(g)))) {
      throw Error(ErrorKind::kSchemaMismatch,
                  "feature group " + std::string(group_name(g)) + " missing from matrix");
    }
  }
}

void require_rows(const FeatureMatrix& m, const std::string& what) {
  if (m.rows() == 0) throw Error(ErrorKind::kPrecondition, "no graded rows in " + what);
}

MetricReport score(const TrainedModel& t, const FeatureMatrix& eval, int n_classes) {
  return evaluate_grades(grades_of(eval), t.predict_grades(eval), n_classes);
}

std::string row_csv(const BenchmarkRow& r) {
  std::ostringstream os;
  os << r.prompt << ',' << r.model << ',' << r.formulation << ',' << r.split << ','
     << format_double(r.metrics.qwk) << ',' << format_double(r.metrics.pearson_r) << ','
     << format_double(r.metrics.mse) << ',' << r.metrics.n << ',' << params_text(r.params)
     << '\n';
  return os.str();
}

const char* kBenchmarkHeader = "prompt,model,formulation,split,qwk,r,mse,n,params\n";

nlohmann::json row_json(const BenchmarkRow& r) {
  return {{"prompt", r.prompt},       {"model", r.model},
          {"formulation", r.formulation}, {"split", r.split},
          {"params", params_json(r.params)}, {"metrics", r.metrics.to_json()}};
}

}  // namespace

DenseMatrix TrainedModel::standardized(const FeatureMatrix& m) const {
  return dense_of(standardizer.apply(m));
}

std::vector<int> TrainedModel::predict_grades(const FeatureMatrix& m) const {
  return model.predict_grades(standardized(m));
}

nlohmann::json TrainedModel::to_json() const {
  return {{"standardizer", standardizer.to_json()}, {"model", model.to_json()}};
}

TrainedModel TrainedModel::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("standardizer") || !j.contains("model")) {
    throw Error(ErrorKind::kParse, "model file needs 'standardizer' and 'model'");
  }
  return {Standardizer::from_json(j.at("standardizer")), Model::from_json(j.at("model"))};
}

SplitAssignment split_per_prompt(const std::vector<AlignedResponse>& corpus,
                                 std::array<double, 3> ratios, std::uint64_t seed) {
  std::map<std::string, std::vector<AlignedResponse>> by_prompt;
  for (const auto& r : corpus) {
    AlignedResponse light;
    light.response_id = r.response_id;
    light.prompt_id = r.prompt_id;
    light.grade = r.grade;
    by_prompt[r.prompt_id].push_back(std::move(light));
  }
  SplitAssignment out;
  out.seed = seed;
  for (const auto& [prompt, rows] : by_prompt) {
    const SplitAssignment s = stratified_split(rows, ratios, derive_seed(seed, hash_string(prompt)));
    out.ratios = s.ratios;
    out.train.insert(s.train.begin(), s.train.end());
    out.valid.insert(s.valid.begin(), s.valid.end());
    out.test.insert(s.test.begin(), s.test.end());
  }
  return out;
}

int grade_levels(const FeatureMatrix& m) {
  int top = -1;
  for (const auto& meta : m.meta()) top = std::max({top, meta.grade, meta.second_grade});
  if (top < 0) throw Error(ErrorKind::kPrecondition, "matrix has no grades");
  return std::max(2, top + 1);
}

std::vector<int> grades_of(const FeatureMatrix& m) {
  std::vector<int> y;
  y.reserve(m.rows());
  for (const auto& meta : m.meta()) y.push_back(meta.grade);
  return y;
}

DenseMatrix dense_of(const FeatureMatrix& m) {
  DenseMatrix X(m.rows(), m.cols());
  std::copy(m.data().begin(), m.data().end(), X.values.begin());
  return X;
}

TrainResult train_model(const FeatureMatrix& train, int n_classes, const TrainConfig& config) {
  require_rows(train, "training split");
  if (!family_supports(config.family, config.task)) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(family_name(config.family)) + " does not support " +
                    std::string(task_name(config.task)));
  }
  TrainResult out;
  out.trained.standardizer = Standardizer::fit(train);
  const DenseMatrix X = out.trained.standardized(train);
  const std::vector<int> y = grades_of(train);

  GridSearchSpec gs;
  gs.model.family = config.family;
  gs.model.task = config.task;
  gs.model.params = config.fixed;
  gs.grid = config.grid.empty() ? default_grid(config.family) : config.grid;
  gs.folds = config.folds;
  gs.seed = derive_seed(config.seed, 1);
  out.cv = grid_search(gs, X, y, n_classes, config.threads);

  ModelSpec spec = gs.model;
  for (const auto& [k, v] : out.cv.best) spec.params[k] = v;
  out.trained.model = fit_model(spec, X, y, n_classes, train.names(), derive_seed(config.seed, 2),
                                config.threads);
  return out;
}

nlohmann::json BenchmarkReport::to_json() const {
  nlohmann::json rows_j = nlohmann::json::array();
  for (const auto& r : rows) rows_j.push_back(row_json(r));
  return {{"rows", rows_j}};
}

std::string BenchmarkReport::to_csv() const {
  std::string s = kBenchmarkHeader;
  for (const auto& r : rows) s += row_csv(r);
  return s;
}

BenchmarkReport run_benchmark(const FeatureMatrix& matrix, const BenchmarkConfig& config) {
  require_groups(matrix, config.groups);
  const int n_classes = grade_levels(matrix);
  BenchmarkReport report;
  for (const std::string& prompt : matrix.prompts()) {
    const FeatureMatrix train = rows_where(matrix, prompt, "train");
    const FeatureMatrix eval = rows_where(matrix, prompt, config.evaluation_split);
    require_rows(train, "training split of " + prompt);
    require_rows(eval, config.evaluation_split + " split of " + prompt);

    for (ModelFamily family : config.models) {
      for (Task task : config.formulations) {
        if (!family_supports(family, task)) continue;
        const std::string model(family_name(family));
        const std::string formulation(task_name(task));
        TrainConfig tc;
        tc.family = family;
        tc.task = task;
        if (const auto it = config.grids.find(family); it != config.grids.end()) {
          tc.grid = it->second;
        }
        tc.folds = config.folds;
        tc.seed = derive_seed(config.seed, hash_string(prompt + "/" + model + "/" + formulation));
        tc.threads = config.threads;
        BenchmarkCell cell{prompt, model, formulation, train_model(train, n_classes, tc)};
        report.rows.push_back({prompt, model, formulation, config.evaluation_split,
                               cell.result.cv.best, score(cell.result.trained, eval, n_classes)});
        report.cells.push_back(std::move(cell));
      }
    }

    if (config.length_baseline && train.column_index("W")) {
      for (Task task : config.formulations) {
        const std::string formulation(task_name(task));
        const DenseMatrix X = dense_of(train);
        const std::uint64_t seed =
            derive_seed(config.seed, hash_string(prompt + "/length_baseline/" + formulation));
        const Model m = length_only_baseline(X, train.names(), grades_of(train), n_classes, task,
                                             seed);
        const auto pred = m.predict_grades(dense_of(eval));
        report.rows.push_back({prompt, "length_baseline", formulation, config.evaluation_split,
                               m.params, evaluate_grades(grades_of(eval), pred, n_classes)});
      }
    }

    std::vector<int> h1, h2;
    for (const auto& meta : eval.meta()) {
      if (meta.second_grade < 0) continue;
      h1.push_back(meta.grade);
      h2.push_back(meta.second_grade);
    }
    if (!h1.empty()) {
      report.rows.push_back({prompt, "HH", "-", config.evaluation_split, {},
                             evaluate_grades(h1, h2, n_classes)});
    }
  }
  return report;
}

void write_benchmark(const BenchmarkReport& report, const fs::path& dir) {
  for (const auto& cell : report.cells) {
    const fs::path d = dir / cell.prompt / cell.model / cell.formulation;
    std::string csv = kBenchmarkHeader;
    nlohmann::json rows_j = nlohmann::json::array();
    for (const auto& r : report.rows) {
      if (r.prompt == cell.prompt && r.model == cell.model && r.formulation == cell.formulation) {
        csv += row_csv(r);
        rows_j.push_back(row_json(r));
      }
    }
    write_text_file(d / "report.json", nlohmann::json{{"rows", rows_j}}.dump(2) + "\n");
    write_text_file(d / "report.csv", csv);
    write_text_file(d / "cv.json", cell.result.cv.to_json().dump(2) + "\n");
    write_text_file(d / "model.json", cell.result.trained.to_json().dump() + "\n");
  }
  write_text_file(dir / "summary.json", report.to_json().dump(2) + "\n");
  write_text_file(dir / "summary.csv", report.to_csv());
}

std::string_view ablation_mode_name(AblationMode mode) {
  return mode == AblationMode::kAdditive ? "additive" : "leave_one_out";
}

AblationMode parse_ablation_mode(std::string_view name) {
  if (name == "additive" || name == "add") return AblationMode::kAdditive;
  if (name == "leave_one_out" || name == "drop") return AblationMode::kLeaveOneOut;
  throw Error(ErrorKind::kInvalidArgument, "unknown ablation mode: " + std::string(name));
}

nlohmann::json AblationReport::to_json() const {
  nlohmann::json rows_j = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_j.push_back({{"configuration", r.configuration},
                      {"groups", r.groups},
                      {"n_features", r.n_features},
                      {"metrics", r.metrics.to_json()},
                      {"pct_change", r.pct_change}});
  }
  return {{"mode", ablation_mode_name(mode)},
          {"prompt", prompt},
          {"params", params_json(params)},
          {"rows", rows_j}};
}

std::string AblationReport::to_csv() const {
  std::ostringstream os;
  os << "configuration,n_features,qwk,r,mse,pct_change\n";
  for (const auto& r : rows) {
    os << r.configuration << ',' << r.n_features << ',' << format_double(r.metrics.qwk) << ','
       << format_double(r.metrics.pearson_r) << ',' << format_double(r.metrics.mse) << ','
       << format_double(r.pct_change) << '\n';
  }
  return os.str();
}

namespace {

struct AblationContext {
  FeatureMatrix train, eval;
  int n_classes = 2;
  ParamMap best;
};

AblationContext prepare_ablation(const FeatureMatrix& matrix, const AblationConfig& config) {
  require_groups(matrix, config.order);
  AblationContext ctx;
  ctx.n_classes = grade_levels(matrix);
  ctx.train = rows_where(matrix, config.prompt, "train");
  ctx.eval = rows_where(matrix, config.prompt, config.evaluation_split);
  require_rows(ctx.train, "training split");
  require_rows(ctx.eval, config.evaluation_split + " split");

  TrainConfig tc;
  tc.family = config.family;
  tc.task = config.task;
  tc.grid = config.grid;
  tc.folds = config.folds;
  tc.seed = derive_seed(config.seed, 0);
  tc.threads = config.threads;
  std::vector<std::string> tags;
  for (FeatureGroup g : config.order) tags.emplace_back(group_name(g));
  ctx.best = train_model(ctx.train.select_groups(tags), ctx.n_classes, tc).cv.best;
  return ctx;
}

AblationRow run_configuration(const AblationContext& ctx, const AblationConfig& config,
                              const std::string& name, const std::vector<std::string>& tags,
                              std::uint64_t stream) {
  const FeatureMatrix train = ctx.train.select_groups(tags);
  const FeatureMatrix eval = ctx.eval.select_groups(tags);
  TrainedModel t;
  t.standardizer = Standardizer::fit(train);
  ModelSpec spec;
  spec.family = config.family;
  spec.task = config.task;
  spec.params = ctx.best;
  t.model = fit_model(spec, t.standardized(train), grades_of(train), ctx.n_classes,
                      train.names(), derive_seed(config.seed, stream), config.threads);
  AblationRow row;
  row.configuration = name;
  row.groups = tags;
  row.n_features = train.cols();
  row.metrics = score(t, eval, ctx.n_classes);
  row.model = std::move(t.model);
  return row;
}

void fill_pct_change(AblationReport& report, double full_qwk) {
  for (auto& r : report.rows) {
    r.pct_change = full_qwk != 0.0 ? 100.0 * (r.metrics.qwk - full_qwk) / full_qwk : 0.0;
  }
}

}  // namespace

AblationReport ablation_additive(const FeatureMatrix& matrix, const AblationConfig& config) {
  const AblationContext ctx = prepare_ablation(matrix, config);
  AblationReport report;
  report.mode = AblationMode::kAdditive;
  report.prompt = config.prompt;
  report.params = ctx.best;
  std::vector<std::string> tags;
  std::string name;
  for (std::size_t k = 0; k < config.order.size(); ++k) {
    const std::string g(group_name(config.order[k]));
    tags.push_back(g);
    name += (name.empty() ? "" : "+") + g;
    report.rows.push_back(run_configuration(ctx, config, name, tags, 100 + k));
  }
  fill_pct_change(report, report.rows.back().metrics.qwk);
  return report;
}

AblationReport ablation_leave_one_out(const FeatureMatrix& matrix, const AblationConfig& config) {
  const AblationContext ctx = prepare_ablation(matrix, config);
  AblationReport report;
  report.mode = AblationMode::kLeaveOneOut;
  report.prompt = config.prompt;
  report.params = ctx.best;
  std::vector<std::string> all;
  for (FeatureGroup g : config.order) all.emplace_back(group_name(g));
  report.rows.push_back(run_configuration(ctx, config, "full", all, 200));
  for (std::size_t k = 0; k < all.size(); ++k) {
    std::vector<std::string> tags;
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (j != k) tags.push_back(all[j]);
    }
    report.rows.push_back(run_configuration(ctx, config, "-" + all[k], tags, 201 + k));
  }
  fill_pct_change(report, report.rows.front().metrics.qwk);
  return report;
}

}  // namespace speechscore
