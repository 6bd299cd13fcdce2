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


#include <cmath>
#include <set>

#include "doctest.h"
#include "speechscore/common.hpp"
#include "fixtures.hpp"
#include "speechscore/fluency.hpp"
#include "speechscore/harness.hpp"
#include "speechscore/synth.hpp"

using namespace speechscore;

namespace {

const std::vector<FeatureGroup> kNoAudio = {FeatureGroup::kCF, FeatureGroup::kFF,
                                            FeatureGroup::kSPF, FeatureGroup::kGVF};

SynthCorpus small_corpus(int n, ScoreFunction f, std::uint64_t seed = 7, bool second = false) {
  SynthSpec spec;
  spec.n = n;
  spec.seed = seed;
  spec.score_function = f;
  spec.audio = false;
  spec.mean_words = 80;
  spec.second_rater = second;
  return synth_corpus(spec);
}

FeatureMatrix features(const SynthCorpus& c, std::uint64_t seed = 7) {
  const auto split = split_per_prompt(c.responses, {0.7, 0.1, 0.2}, seed);
  ExtractConfig cfg;
  cfg.groups = kNoAudio;
  cfg.seed = seed;
  auto ex = extract_features(c.responses, bundled_resources(), &split, cfg);
  REQUIRE(ex.failures.empty());
  return ex.matrix;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) ma += a[i], mb += b[i];
  ma /= a.size();
  mb /= b.size();
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

const ParamGrid kSmallGbt = {{"max_depth", {2}}, {"n_stages", {60}}, {"learning_rate", {0.1}}};

}  // namespace

TEST_CASE("synthetic grades follow the requested proportions") {
  SynthSpec spec;
  spec.n = 500;
  spec.seed = 7;
  spec.audio = false;
  const auto c = synth_corpus(spec);
  REQUIRE(c.responses.size() == 500);
  std::map<int, int> hist;
  for (const auto& r : c.responses) ++hist[r.grade->ordinal()];
  REQUIRE(hist.size() == 3);
  for (const auto& [g, n] : hist) CHECK(std::abs(n - 500.0 / 3) <= 50.0);

  spec.grade_proportions = {0.2, 0.5, 0.3};
  std::map<int, int> skew;
  for (const auto& r : synth_corpus(spec).responses) ++skew[r.grade->ordinal()];
  CHECK(std::abs(skew[0] - 100) <= 50);
  CHECK(std::abs(skew[1] - 250) <= 50);
  CHECK(std::abs(skew[2] - 150) <= 50);
}

TEST_CASE("speaking-rate corpus ties grades to speaking rate") {
  const auto c = small_corpus(300, ScoreFunction::kSpeakingRate);
  std::vector<double> rate, grade;
  for (const auto& r : c.responses) {
    rate.push_back(fluency_features(r, bundled_resources()).at("speaking_rate"));
    grade.push_back(r.grade->ordinal());
  }
  CHECK(pearson(rate, grade) > 0.6);
}

TEST_CASE("synthesis is deterministic and validates its inputs") {
  const auto a = small_corpus(60, ScoreFunction::kMixed, 11);
  const auto b = small_corpus(60, ScoreFunction::kMixed, 11);
  const auto d = small_corpus(60, ScoreFunction::kMixed, 12);
  REQUIRE(a.responses.size() == b.responses.size());
  bool same = true, differs = false;
  for (std::size_t i = 0; i < a.responses.size(); ++i) {
    same = same && response_to_json(a.responses[i]) == response_to_json(b.responses[i]);
    differs = differs || response_to_json(a.responses[i]) != response_to_json(d.responses[i]);
  }
  CHECK(same);
  CHECK(differs);
  SynthSpec bad;
  bad.n = 49;
  CHECK_THROWS_AS(synth_corpus(bad), Error);
  bad.n = 100;
  bad.grade_levels = 6;
  CHECK_THROWS_AS(synth_corpus(bad), Error);
}

TEST_CASE("feature columns partition into the requested groups") {
  const auto m = features(small_corpus(60, ScoreFunction::kMixed));
  std::set<std::string> tags(m.groups().begin(), m.groups().end());
  CHECK(tags == std::set<std::string>{"CF", "FF", "SPF", "GVF"});
  for (std::size_t c = 0; c < m.cols(); ++c) {
    CHECK(group_name(group_of_feature(m.names()[c])) == m.groups()[c]);
  }
  std::set<std::string> names(m.names().begin(), m.names().end());
  CHECK(names.size() == m.cols());
}

TEST_CASE("benchmark rows per model and formulation") {
  const auto c = small_corpus(120, ScoreFunction::kMixed, 7, true);
  const auto m = features(c);
  BenchmarkConfig bc;
  bc.models = {ModelFamily::kTree, ModelFamily::kGbt};
  bc.grids[ModelFamily::kTree] = {{"max_depth", {3}}};
  bc.grids[ModelFamily::kGbt] = kSmallGbt;
  bc.groups = kNoAudio;
  bc.length_baseline = false;
  bc.folds = 3;
  bc.seed = 7;
  const auto report = run_benchmark(m, bc);
  int models = 0, hh = 0;
  for (const auto& row : report.rows) {
    if (row.model == "HH") {
      ++hh;
      CHECK(row.formulation == "-");
      CHECK(row.metrics.qwk > 0.0);
    } else {
      ++models;
      CHECK(row.metrics.n > 0);
    }
  }
  CHECK(models == 4);
  CHECK(hh == 1);
  CHECK(report.cells.size() == 4);

  bc.groups = all_groups();
  CHECK_THROWS_AS(run_benchmark(m, bc), Error);
}

TEST_CASE("additive ablation grows the feature set stage by stage") {
  const auto m = features(small_corpus(150, ScoreFunction::kMixed));
  AblationConfig ac;
  ac.grid = kSmallGbt;
  ac.order = kNoAudio;
  ac.folds = 3;
  ac.seed = 7;
  const auto r = ablation_additive(m, ac);
  REQUIRE(r.rows.size() == kNoAudio.size());
  for (std::size_t k = 1; k < r.rows.size(); ++k) {
    CHECK(r.rows[k].n_features > r.rows[k - 1].n_features);
    CHECK(r.rows[k].groups.size() == k + 1);
  }
  CHECK(r.rows.back().n_features == m.cols());
  CHECK(r.rows[0].configuration == "CF");
}

TEST_CASE("fluency-driven corpus shows up in both ablations") {
  const auto m = features(small_corpus(300, ScoreFunction::kFluency));
  AblationConfig ac;
  ac.grid = kSmallGbt;
  ac.order = kNoAudio;
  ac.folds = 3;
  ac.seed = 7;
  const auto add = ablation_additive(m, ac);
  REQUIRE(add.rows.size() >= 2);
  CHECK(add.rows[1].groups.back() == "FF");
  CHECK(add.rows[1].metrics.qwk - add.rows[0].metrics.qwk >= 0.2);

  const auto loo = ablation_leave_one_out(m, ac);
  REQUIRE(loo.rows.size() == kNoAudio.size() + 1);
  CHECK(loo.rows[0].configuration == "full");
  for (const auto& row : loo.rows) {
    if (row.configuration == "-FF") CHECK(row.pct_change <= -10.0);
  }
}

TEST_CASE("test rows never influence training") {
  auto m = features(small_corpus(100, ScoreFunction::kMixed));
  TrainConfig tc;
  tc.grid = kSmallGbt;
  tc.folds = 3;
  tc.seed = 7;
  const int K = grade_levels(m);
  const auto before = train_model(m.select_rows(m.rows_in_split("train")), K, tc);
  for (auto i : m.rows_in_split("test")) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(i, c) = 1e6;
  }
  const auto after = train_model(m.select_rows(m.rows_in_split("train")), K, tc);
  CHECK(before.trained.to_json() == after.trained.to_json());
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  const auto m = features(small_corpus(100, ScoreFunction::kMixed));
  BenchmarkConfig bc;
  bc.models = {ModelFamily::kLinear, ModelFamily::kForest};
  bc.grids[ModelFamily::kForest] = {{"n_trees", {20}}, {"max_depth", {3}}};
  bc.groups = kNoAudio;
  bc.folds = 3;
  bc.seed = 3;
  const auto a = run_benchmark(m, bc);
  bc.threads = 4;
  const auto b = run_benchmark(m, bc);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.to_csv() == b.to_csv());

  const auto dir = fixtures::scratch_dir("bench");
  write_benchmark(a, dir);
  CHECK(std::filesystem::exists(dir / "summary.json"));
  CHECK(std::filesystem::exists(dir / "summary.csv"));
}
