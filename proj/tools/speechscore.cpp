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

// speechscore: extract | train | evaluate | explain | ablate | synth | report

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "speechscore/common.hpp"
#include "speechscore/corpus.hpp"
#include "speechscore/explain.hpp"
#include "speechscore/extract.hpp"
#include "speechscore/harness.hpp"
#include "speechscore/plots.hpp"
#include "speechscore/synth.hpp"

namespace fs = std::filesystem;
using namespace speechscore;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  int threads = 1;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<FeatureGroup> parse_groups(const std::string& s) {
  std::vector<FeatureGroup> g;
  for (const auto& name : split_list(s)) g.push_back(parse_group(name));
  if (g.empty()) throw Error(ErrorKind::kInvalidArgument, "no feature groups given");
  return g;
}

std::vector<std::string> group_tags(const std::vector<FeatureGroup>& groups) {
  std::vector<std::string> tags;
  for (FeatureGroup g : groups) tags.emplace_back(group_name(g));
  return tags;
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
  }
}

ParamGrid grid_from_json(const nlohmann::json& j) {
  ParamGrid grid;
  for (const auto& [k, v] : j.items()) {
    if (v.is_array()) {
      grid[k] = v.get<std::vector<double>>();
    } else {
      grid[k] = {v.get<double>()};
    }
  }
  return grid;
}

FeatureMatrix rows_of(const FeatureMatrix& m, const std::string& prompt, const std::string& split) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const RowMeta& meta = m.meta()[i];
    if (!prompt.empty() && meta.prompt_id != prompt) continue;
    if (!split.empty() && split != "all" && meta.split != split) continue;
    idx.push_back(i);
  }
  return m.select_rows(idx);
}

FeatureMatrix columns_like(const FeatureMatrix& m, const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  for (const auto& n : names) {
    const auto c = m.column_index(n);
    if (!c) throw Error(ErrorKind::kSchemaMismatch, "feature column '" + n + "' missing");
    idx.push_back(*c);
  }
  return m.select_columns(idx);
}

LexicalResources resources_from(const std::string& dir) {
  return dir.empty() ? bundled_resources() : load_resources(dir);
}

// extract ---------------------------------------------------------------

struct ExtractOpts {
  std::string corpus, resources, groups = "CF,FF,SPF,GVF,AF", out;
  std::vector<double> ratios = {0.7, 0.1, 0.2};
  bool no_split = false;
  int min_df = 2, max_terms = 1000;
  PitchConfig pitch;
  bool secondary_stress = false;
};

void cmd_extract(const ExtractOpts& o, const Globals& g) {
  const LoadReport loaded = load_corpus(o.corpus, g.threads);
  ExtractConfig cfg;
  cfg.groups = parse_groups(o.groups);
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  cfg.tfidf_min_df = o.min_df;
  cfg.tfidf_max_terms = o.max_terms;
  cfg.pitch = o.pitch;
  cfg.prosody.secondary_counts_as_stressed = o.secondary_stress;
  if (o.ratios.size() != 3) throw Error(ErrorKind::kInvalidArgument, "--split needs 3 ratios");
  std::optional<SplitAssignment> splits;
  if (!o.no_split) {
    splits = split_per_prompt(loaded.responses, {o.ratios[0], o.ratios[1], o.ratios[2]}, g.seed);
  }
  const ExtractResult r = extract_features(loaded.responses, resources_from(o.resources),
                                           splits ? &*splits : nullptr, cfg);
  fs::create_directories(o.out);
  r.matrix.write_csv(fs::path(o.out) / "features.csv");
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& [path, why] : loaded.rejects) failures.push_back({{"source", path}, {"reason", why}});
  for (const auto& [id, why] : r.failures) failures.push_back({{"source", id}, {"reason", why}});
  nlohmann::json flags = nlohmann::json::object();
  for (std::size_t i = 0; i < r.matrix.rows(); ++i) {
    if (!r.row_flags[i].empty()) flags[r.matrix.meta()[i].response_id] = r.row_flags[i];
  }
  write_text_file(fs::path(o.out) / "failures.json", failures.dump(2) + "\n");
  write_text_file(fs::path(o.out) / "flags.json", flags.dump(2) + "\n");
}

// train -----------------------------------------------------------------

struct TrainOpts {
  std::string features, model = "gbt", task = "regression", grid, prompt, groups, out;
  int folds = 5;
};

void cmd_train(const TrainOpts& o, const Globals& g) {
  FeatureMatrix m = FeatureMatrix::read_csv(o.features);
  if (!o.groups.empty()) m = m.select_groups(group_tags(parse_groups(o.groups)));
  const int n_classes = grade_levels(m);
  const FeatureMatrix train = rows_of(m, o.prompt, "train");
  TrainConfig tc;
  tc.family = parse_family(o.model);
  tc.task = parse_task(o.task);
  if (!o.grid.empty()) tc.grid = grid_from_json(read_json(o.grid));
  tc.folds = o.folds;
  tc.seed = g.seed;
  tc.threads = g.threads;
  const TrainResult r = train_model(train, n_classes, tc);
  write_text_file(fs::path(o.out) / "model.json", r.trained.to_json().dump() + "\n");
  write_text_file(fs::path(o.out) / "cv.json", r.cv.to_json().dump(2) + "\n");
}

// evaluate --------------------------------------------------------------

struct EvaluateOpts {
  std::string features, model, predictions, split = "test", prompt, out;
  int grade_levels = 0;
};

int parse_grade_field(const std::string& s) {
  try {
    return Grade::parse(s).ordinal();
  } catch (const Error&) {
  }
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::kParse, "bad grade '" + s + "' in predictions");
}

std::map<std::string, int> read_predictions(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::map<std::string, int> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::kParse, "predictions need id,grade");
    if (header) {
      header = false;
      if (line.substr(0, comma) == "response_id") continue;
    }
    out[line.substr(0, comma)] = parse_grade_field(line.substr(comma + 1));
  }
  return out;
}

void cmd_evaluate(const EvaluateOpts& o, const Globals&) {
  if (o.model.empty() == o.predictions.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "give exactly one of --model or --predictions");
  }
  const FeatureMatrix all = FeatureMatrix::read_csv(o.features);
  const int n_classes = o.grade_levels > 0 ? o.grade_levels : grade_levels(all);
  FeatureMatrix eval = rows_of(all, o.prompt, o.split);
  std::vector<int> human, pred;
  if (!o.model.empty()) {
    const TrainedModel t = TrainedModel::from_json(read_json(o.model));
    eval = columns_like(eval, t.standardizer.names());
    pred = t.predict_grades(eval);
    human = grades_of(eval);
  } else {
    const auto p = read_predictions(o.predictions);
    for (const auto& meta : eval.meta()) {
      const auto it = p.find(meta.response_id);
      if (it == p.end()) {
        throw Error(ErrorKind::kSchemaMismatch, "no prediction for " + meta.response_id);
      }
      human.push_back(meta.grade);
      pred.push_back(it->second);
    }
  }
  if (human.empty()) throw Error(ErrorKind::kPrecondition, "no rows to evaluate");
  const MetricReport rep = evaluate_grades(human, pred, n_classes);
  nlohmann::json j = rep.to_json();
  j["split"] = o.split;
  write_text_file(fs::path(o.out) / "metrics.json", j.dump(2) + "\n");
}

// explain ---------------------------------------------------------------

struct ExplainOpts {
  std::string method, features, model, feature, split = "train", prompt, out;
  std::string importance = "gain";
  int grid_points = 20, output = 0, top = 20;
};

void cmd_explain(const ExplainOpts& o, const Globals& g) {
  const TrainedModel t = TrainedModel::from_json(read_json(o.model));
  if (o.method == "importance") {
    const TreeEnsembleModel* e = t.model.ensemble();
    if (!e) throw Error(ErrorKind::kInvalidArgument, "importance needs a tree-based model");
    const ImportanceMethod method =
        o.importance == "split_count" ? ImportanceMethod::kSplitCount : ImportanceMethod::kGain;
    const ImportanceRanking r = gain_importance(*e, method);
    write_text_file(fs::path(o.out) / "importance.csv", importance_csv(r));
    write_text_file(fs::path(o.out) / "importance.svg", importance_svg(r, o.top));
    return;
  }
  if (o.features.empty()) throw Error(ErrorKind::kInvalidArgument, "--features is required");
  const FeatureMatrix data =
      columns_like(rows_of(FeatureMatrix::read_csv(o.features), o.prompt, o.split),
                   t.standardizer.names());
  if (data.rows() == 0) throw Error(ErrorKind::kPrecondition, "no background rows");
  if (o.method == "pdp") {
    const auto col = data.column_index(o.feature);
    if (!col) throw Error(ErrorKind::kSchemaMismatch, "feature '" + o.feature + "' missing");
    const Standardizer& s = t.standardizer;
    // Curves are drawn in raw feature units.
    const Predictor predict = [&](std::span<const double> raw) {
      std::vector<double> z(raw.begin(), raw.end());
      for (std::size_t c = 0; c < z.size(); ++c) {
        if (!s.zero_variance(c)) z[c] = (z[c] - s.means()[c]) / s.sds()[c];
      }
      return t.model.predict(z);
    };
    const PdpCurve curve = pdp(predict, dense_of(data), *col, o.feature, o.grid_points);
    write_text_file(fs::path(o.out) / ("pdp_" + o.feature + ".csv"), pdp_csv(curve));
    write_text_file(fs::path(o.out) / ("pdp_" + o.feature + ".svg"), pdp_svg(curve));
    return;
  }
  if (o.method == "shap") {
    const TreeEnsembleModel* e = t.model.ensemble();
    if (!e) throw Error(ErrorKind::kInvalidArgument, "shap needs a tree-based model");
    const ShapExplanation ex = shap_matrix(*e, t.standardized(data), o.output, g.threads);
    write_text_file(fs::path(o.out) / "shap.csv", shap_csv(ex));
    write_text_file(fs::path(o.out) / "shap_summary.svg", shap_summary_svg(shap_summary(ex), o.top));
    return;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown explain method: " + o.method);
}

// ablate ----------------------------------------------------------------

struct AblateOpts {
  std::string features, mode = "add", model = "gbt", task = "regression", grid;
  std::string order = "CF,FF,SPF,GVF,AF", prompt, split = "test", out;
  int folds = 5;
};

void cmd_ablate(const AblateOpts& o, const Globals& g) {
  const FeatureMatrix m = FeatureMatrix::read_csv(o.features);
  AblationConfig cfg;
  cfg.family = parse_family(o.model);
  cfg.task = parse_task(o.task);
  if (!o.grid.empty()) cfg.grid = grid_from_json(read_json(o.grid));
  cfg.order = parse_groups(o.order);
  cfg.evaluation_split = o.split;
  cfg.folds = o.folds;
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  const AblationMode mode = parse_ablation_mode(o.mode);
  const std::vector<std::string> prompts =
      o.prompt.empty() ? m.prompts() : std::vector<std::string>{o.prompt};
  for (const auto& p : prompts) {
    cfg.prompt = p;
    const AblationReport r =
        mode == AblationMode::kAdditive ? ablation_additive(m, cfg) : ablation_leave_one_out(m, cfg);
    const std::string stem = "ablation_" + std::string(ablation_mode_name(mode));
    write_text_file(fs::path(o.out) / p / (stem + ".json"), r.to_json().dump(2) + "\n");
    write_text_file(fs::path(o.out) / p / (stem + ".csv"), r.to_csv());
  }
}

// synth -----------------------------------------------------------------

struct SynthOpts {
  SynthSpec spec;
  std::string score_function = "mixed", out;
  bool no_audio = false;
};

void cmd_synth(SynthOpts o, const Globals& g) {
  o.spec.seed = g.seed;
  o.spec.score_function = parse_score_function(o.score_function);
  o.spec.audio = !o.no_audio;
  write_synth_corpus(synth_corpus(o.spec), o.out);
}

// report ----------------------------------------------------------------

struct ReportOpts {
  std::string features, models = "linear,logistic,tree,forest,gbt";
  std::string formulations = "regression,classification", grids, groups = "CF,FF,SPF,GVF,AF";
  std::string split = "test", out = "reports";
  int folds = 5;
  bool no_length_baseline = false;
};

void cmd_report(const ReportOpts& o, const Globals& g) {
  const FeatureMatrix m = FeatureMatrix::read_csv(o.features);
  BenchmarkConfig cfg;
  cfg.models.clear();
  for (const auto& name : split_list(o.models)) cfg.models.push_back(parse_family(name));
  cfg.formulations.clear();
  for (const auto& name : split_list(o.formulations)) cfg.formulations.push_back(parse_task(name));
  if (!o.grids.empty()) {
    const nlohmann::json grids = read_json(o.grids);
    for (const auto& [family, grid] : grids.items()) {
      cfg.grids[parse_family(family)] = grid_from_json(grid);
    }
  }
  cfg.groups = parse_groups(o.groups);
  cfg.evaluation_split = o.split;
  cfg.folds = o.folds;
  cfg.length_baseline = !o.no_length_baseline;
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  write_benchmark(run_benchmark(m, cfg), o.out);
}

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpretable speech scoring pipeline"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "Key = value configuration file ([subcommand] sections)");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Random seed (mandatory)")->required();
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

  ExtractOpts ex;
  auto* extract = app.add_subcommand("extract", "Extract a group-tagged feature matrix");
  extract->add_option("--corpus", ex.corpus, "Manifest file or directory of alignments")
      ->required();
  extract->add_option("--resources", ex.resources, "Lexical resources directory (bundled if empty)");
  extract->add_option("--groups", ex.groups, "Comma-separated feature groups");
  extract->add_option("--split", ex.ratios, "Train/valid/test ratios")->expected(3)->delimiter(',');
  extract->add_flag("--no-split", ex.no_split, "Leave the split column empty");
  extract->add_option("--min-df", ex.min_df, "TF-IDF minimum document frequency");
  extract->add_option("--max-terms", ex.max_terms, "TF-IDF vocabulary cap");
  extract->add_option("--frame", ex.pitch.frame, "Pitch analysis frame (s)");
  extract->add_option("--hop", ex.pitch.hop, "Pitch analysis hop (s)");
  extract->add_option("--fmin", ex.pitch.fmin, "Lowest pitch searched (Hz)");
  extract->add_option("--fmax", ex.pitch.fmax, "Highest pitch searched (Hz)");
  extract->add_flag("--secondary-stress", ex.secondary_stress,
                    "Count secondary stress as stressed");
  extract->add_option("--out", ex.out, "Output directory")->required();

  TrainOpts tr;
  auto* train = app.add_subcommand("train", "Grid-search and fit a model");
  train->add_option("--features", tr.features, "Feature CSV")->required();
  train->add_option("--model", tr.model, "linear|logistic|tree|forest|gbt");
  train->add_option("--task", tr.task, "regression|classification");
  train->add_option("--grid", tr.grid, "JSON parameter grid (family default if empty)");
  train->add_option("--folds", tr.folds, "Cross-validation folds");
  train->add_option("--prompt", tr.prompt, "Restrict to one prompt");
  train->add_option("--groups", tr.groups, "Restrict to these feature groups");
  train->add_option("--out", tr.out, "Output directory")->required();

  EvaluateOpts ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against human grades");
  evaluate->add_option("--features", ev.features, "Feature CSV carrying the gold grades")
      ->required();
  evaluate->add_option("--model", ev.model, "model.json from train");
  evaluate->add_option("--predictions", ev.predictions, "CSV of response_id,grade");
  evaluate->add_option("--split", ev.split, "train|valid|test|all");
  evaluate->add_option("--prompt", ev.prompt, "Restrict to one prompt");
  evaluate->add_option("--grade-levels", ev.grade_levels, "Grade levels (0: from the data)");
  evaluate->add_option("--out", ev.out, "Output directory")->required();

  ExplainOpts xp;
  auto* explain = app.add_subcommand("explain", "Feature importance, PDP or SHAP artifacts");
  explain->add_option("method", xp.method, "importance|pdp|shap")->required();
  explain->add_option("--model", xp.model, "model.json from train")->required();
  explain->add_option("--features", xp.features, "Feature CSV (pdp, shap)");
  explain->add_option("--feature", xp.feature, "Feature for pdp");
  explain->add_option("--split", xp.split, "Background rows: train|valid|test|all");
  explain->add_option("--prompt", xp.prompt, "Restrict to one prompt");
  explain->add_option("--importance", xp.importance, "gain|split_count");
  explain->add_option("--grid-points", xp.grid_points, "PDP grid size");
  explain->add_option("--output", xp.output, "Class index explained by shap");
  explain->add_option("--top", xp.top, "Features drawn in plots");
  explain->add_option("--out", xp.out, "Output directory")->required();

  AblateOpts ab;
  auto* ablate = app.add_subcommand("ablate", "Feature-group ablation");
  ablate->add_option("--features", ab.features, "Feature CSV")->required();
  ablate->add_option("--mode", ab.mode, "add|drop");
  ablate->add_option("--model", ab.model, "Model family");
  ablate->add_option("--task", ab.task, "regression|classification");
  ablate->add_option("--grid", ab.grid, "JSON parameter grid (family default if empty)");
  ablate->add_option("--order", ab.order, "Group order for additive stages");
  ablate->add_option("--prompt", ab.prompt, "One prompt (every prompt if empty)");
  ablate->add_option("--split", ab.split, "Evaluation split");
  ablate->add_option("--folds", ab.folds, "Cross-validation folds");
  ablate->add_option("--out", ab.out, "Output directory")->required();

  SynthOpts sy;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic graded corpus");
  synth->add_option("--n", sy.spec.n, "Responses");
  synth->add_option("--grade-levels", sy.spec.grade_levels, "Grade levels (2-5)");
  synth->add_option("--score-function", sy.score_function,
                    "mixed|speaking_rate|fluency|length");
  synth->add_option("--noise", sy.spec.score_noise, "Score noise standard deviation");
  synth->add_option("--prompts", sy.spec.n_prompts, "Prompts");
  synth->add_option("--mean-words", sy.spec.mean_words, "Typical words per response");
  synth->add_option("--audio-seconds", sy.spec.audio_seconds, "Synthetic audio length");
  synth->add_flag("--no-audio", sy.no_audio, "Skip audio");
  synth->add_flag("--second-rater", sy.spec.second_rater, "Emit a simulated second grade");
  synth->add_option("--disagreement", sy.spec.rater_disagreement, "Second-rater disagreement rate");
  synth->add_option("--out", sy.out, "Output directory")->required();

  ReportOpts rp;
  auto* report = app.add_subcommand("report", "Benchmark every model and formulation");
  report->add_option("--features", rp.features, "Feature CSV")->required();
  report->add_option("--models", rp.models, "Comma-separated model families");
  report->add_option("--formulations", rp.formulations, "Comma-separated tasks");
  report->add_option("--grids", rp.grids, "JSON object of per-family grids");
  report->add_option("--groups", rp.groups, "Groups that must be present");
  report->add_option("--split", rp.split, "Evaluation split");
  report->add_option("--folds", rp.folds, "Cross-validation folds");
  report->add_flag("--no-length-baseline", rp.no_length_baseline, "Skip the length baseline");
  report->add_option("--out", rp.out, "Reports directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }

  try {
    if (*extract) cmd_extract(ex, g);
    if (*train) cmd_train(tr, g);
    if (*evaluate) cmd_evaluate(ev, g);
    if (*explain) cmd_explain(xp, g);
    if (*ablate) cmd_ablate(ab, g);
    if (*synth) cmd_synth(sy, g);
    if (*report) cmd_report(rp, g);
  } catch (const Error& e) {
    print_error(std::string(error_kind_name(e.kind())), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
  return 0;
}
