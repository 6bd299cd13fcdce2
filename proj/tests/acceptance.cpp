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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "speechscore/acoustic.hpp"
#include "speechscore/content.hpp"
#include "speechscore/explain.hpp"
#include "speechscore/fluency.hpp"
#include "speechscore/grammar.hpp"
#include "speechscore/harness.hpp"
#include "speechscore/metrics.hpp"
#include "speechscore/prosody.hpp"
#include "speechscore/synth.hpp"
#include "speechscore/tree.hpp"

namespace ss = speechscore;

namespace {

constexpr std::uint64_t kSeed = 7;

// Collects failed sub-checks for one criterion.
struct Checks {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, " (got %.12g, want %.12g)", got, want);
      failures.push_back(what + buf);
    }
  }
};

int g_failed = 0;

void run(int id, const char* title, double budget_s, const std::function<void(Checks&)>& body) {
  Checks c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "runtime %.1f s exceeds %.0f s", secs, budget_s);
    c.failures.push_back(buf);
  }
  const bool ok = c.failures.empty();
  if (!ok) ++g_failed;
  std::printf("%s %2d %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, title, secs);
  for (const auto& f : c.failures) std::printf("       - %s\n", f.c_str());
  std::fflush(stdout);
}

// Kappa straight from the definition: observed vs. chance-expected
// quadratic disagreement.
double oracle_qwk(const std::vector<int>& h, const std::vector<int>& p, int n) {
  std::vector<std::vector<double>> O(n, std::vector<double>(n, 0.0));
  std::vector<double> hh(n, 0.0), hp(n, 0.0);
  for (std::size_t k = 0; k < h.size(); ++k) {
    O[h[k]][p[k]] += 1.0;
    hh[h[k]] += 1.0;
    hp[p[k]] += 1.0;
  }
  double num = 0.0, den = 0.0;
  const double total = static_cast<double>(h.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = double(i - j) * double(i - j) / (double(n - 1) * (n - 1));
      num += w * O[i][j];
      den += w * hh[i] * hp[j] / total;
    }
  }
  return 1.0 - num / den;
}

void criterion_metrics(Checks& c) {
  const auto W = ss::qwk_weights(3);
  const double want[3][3] = {{0, 0.25, 1}, {0.25, 0, 0.25}, {1, 0.25, 0}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) c.near(W[i][j], want[i][j], 1e-12, "W3 entry");
  }
  const std::vector<int> h = {0, 1, 2, 2, 1, 0, 2, 1};
  const std::vector<int> p = {0, 2, 2, 1, 1, 0, 2, 0};
  c.near(ss::qwk(h, p, 3), oracle_qwk(h, p, 3), 1e-12, "qwk N=3 vs oracle");
  c.near(ss::qwk(std::vector<int>{0, 1}, std::vector<int>{1, 0}, 2), -1.0, 1e-12,
         "qwk antidiagonal N=2");
  c.near(ss::mse(std::vector<double>{1, 2}, std::vector<double>{1, 3}), 0.5, 1e-12, "mse");
  const std::vector<double> a = {1, 2, 3}, b = {1, 2, 4};
  // Centered: a' = (-1, 0, 1), b' = (-4/3, -1/3, 5/3).
  const double r = (4.0 / 3 + 5.0 / 3) /
                   std::sqrt(2.0 * (16.0 / 9 + 1.0 / 9 + 25.0 / 9));
  c.near(ss::pearson(a, b), r, 1e-12, "pearson");
  c.near(r, 0.98198, 5e-6, "pearson rounded");
}

void criterion_independence(Checks& c) {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> g(0, 4);
  std::vector<int> h(10000), p(10000);
  for (auto& v : h) v = g(rng);
  for (auto& v : p) v = g(rng);
  const double k = ss::qwk(h, p, 5);
  c.expect(std::abs(k) < 0.05, "random pairs |kappa| = " + std::to_string(k));
  c.near(ss::qwk(h, h, 5), 1.0, 1e-12, "perfect agreement");
}

void criterion_features(Checks& c) {
  const ss::LexicalResources res = [] {
    ss::LexicalResources r;
    r.filled_pauses = ss::default_filled_pauses();
    r.stopwords = {"the"};
    r.frequency_rank = {{"run", 120}, {"cat", 300}, {"the", 1}, {"saw", 500}};
    r.complexity_avg = {{"cat", 2.0}, {"run", 3.0}};
    r.complexity_mode = {{"cat", 2.0}, {"run", 3.0}};
    return r;
  }();

  // Timeline [0,.5] [.7,1.2] [1.8,2.3].
  {
    const auto r = fixtures::timeline({{"a", 0.0, 0.5}, {"b", 0.7, 1.2}, {"c", 1.8, 2.3}});
    const auto prof = ss::silence_profile(r);
    c.expect(prof.gaps.size() == 2 && prof.silences.size() == 2 &&
                 prof.long_silences.size() == 1,
             "timeline gap counts");
    if (prof.gaps.size() == 2) {
      c.near(prof.gaps[0].duration, 0.7 - 0.5, 1e-9, "gap 1");
      c.near(prof.gaps[1].duration, 1.8 - 1.2, 1e-9, "gap 2");
    }
    if (!prof.long_silences.empty()) c.near(prof.long_silences[0].duration, 0.6, 1e-9, "long");
    c.near(prof.response_time, 2.3 - 0.0, 1e-9, "response_time");
    c.near(prof.articulation_time, 0.5 + 0.5 + 0.5, 1e-9, "articulation_time");
    const auto fs = ss::fluency_features(r, res);
    c.near(fs.at("speaking_rate"), 3.0 / 2.3, 1e-9, "speaking_rate");
    c.near(fs.at("articulation_rate"), 3.0 / 1.5, 1e-9, "articulation_rate");
    c.near(fs.at("SilenceRate1"), 2.0 / 3.0, 1e-9, "SilenceRate1");
    c.near(fs.at("SilenceRate2"), 2.0 / 2.3, 1e-9, "SilenceRate2");
    c.near(fs.at("longpfreq"), 1.0 / 3.0, 1e-9, "longpfreq");
  }
  // Silences {.2, .6, .4}.
  {
    const auto r = fixtures::timeline(
        {{"a", 0.0, 0.3}, {"b", 0.5, 0.8}, {"c", 1.4, 1.7}, {"d", 2.1, 2.4}});
    const auto fs = ss::fluency_features(r, res);
    const double m = (0.2 + 0.6 + 0.4) / 3.0;
    const double mad = (std::abs(0.2 - m) + std::abs(0.6 - m) + std::abs(0.4 - m)) / 3.0;
    c.near(fs.at("mean_silence"), m, 1e-9, "mean_silence");
    c.near(fs.at("silence_absolute_deviation"), mad, 1e-9, "silence_absolute_deviation");
    c.near(mad, 0.4 / 3.0, 1e-12, "mad hand value");
    c.near(fs.at("general_silence"), 3.0, 1e-9, "general_silence");
    c.near(fs.at("long_silence_deviation"), std::abs(0.6 - 0.6), 1e-9, "long dev");
  }
  // "um the uh cat" over 2 s.
  {
    const auto r = fixtures::timeline(
        {{"um", 0.0, 0.4}, {"the", 0.5, 0.9}, {"uh", 1.0, 1.4}, {"cat", 1.6, 2.0}});
    const auto fs = ss::fluency_features(r, res);
    c.near(fs.at("filled_pause_rate"), 2.0 / 2.0, 1e-9, "filled_pause_rate");
    c.near(fs.at("speaking_rate"), 2.0 / 2.0, 1e-9, "speaking_rate without fillers");
  }
  // Syllabification and stress distances.
  {
    auto r = fixtures::response({fixtures::word("about", 0.0, 0.4, {"AH0", "B", "AW1", "T"})});
    const auto syl = ss::syllabify(r);
    c.expect(syl.size() == 2, "AH0 B AW1 T gives two syllables");
    if (syl.size() == 2) {
      c.expect(syl[0].onset.empty() && syl[1].onset.size() == 1 &&
                   syl[1].onset[0].label == "B" && syl[1].coda.size() == 1,
               "B opens the second syllable");
    }
    std::vector<ss::Syllable> s(8);
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i].nucleus.start = 0.25 * i;
      s[i].stressed = i == 0 || i == 2 || i == 6;
    }
    const auto fs = ss::stress_features(s);
    c.near(fs.at("StressedSyllPercent"), 100.0 * 3 / 8, 1e-9, "StressedSyllPercent");
    c.near(fs.at("StressDistanceSyllMean"), (2.0 + 4.0) / 2, 1e-9, "syll distance mean");
    c.near(fs.at("StressDistanceSyllSD"), (1.0 + 1.0) / 2, 1e-9, "syll distance MAD");
    c.near(fs.at("StressDistanceMean"), (0.5 + 1.0) / 2, 1e-9, "time distance mean");
    c.near(fs.at("StressDistanceSD"), (0.25 + 0.25) / 2, 1e-9, "time distance MAD");
  }
  // Pairwise variability.
  {
    ss::IntervalSequence seq;
    seq.vocalic = {100, 200};
    seq.consonantal = {150, 150, 150};
    seq.syllabic = {100, 200, 100};
    const auto fs = ss::interval_features(seq, 1000.0);
    c.near(fs.at("vowelPVI"), 100.0, 1e-9, "vowelPVI");
    c.near(fs.at("vowelPVINorm"), 100.0 * 100.0 / 150.0, 1e-9, "vowelPVINorm");
    c.near(fs.at("consonantPVI"), 0.0, 1e-9, "constant PVI");
    c.near(fs.at("consonantDurationSD"), 0.0, 1e-9, "constant SD");
    c.near(fs.at("vowelPercentage"), 30.0, 1e-9, "vowelPercentage");
    c.near(fs.at("consonantPercentage"), 45.0, 1e-9, "consonantPercentage");
    c.near(fs.at("syllablePVI"), 100.0, 1e-9, "syllablePVI");
  }
  // Lexical diversity, syntactic ratios, complexity sums.
  {
    const auto toks = fixtures::tokens("the cat saw the cat", {"DET", "NOUN", "VERB", "DET", "NOUN"});
    const auto fs = ss::lexical_features(toks, res, kSeed);
    c.near(fs.at("ttr"), 3.0 / 5.0, 1e-9, "ttr");
    c.near(fs.at("ndw"), 3.0, 1e-9, "ndw");
    const auto verbs = fixtures::tokens("run run", {"VERB", "VERB"});
    c.near(ss::lexical_features(verbs, res, kSeed).at("vs1"), 0.0, 1e-9, "vs1");

    ss::UnitCounts u;
    u.W = 100;
    u.S = 5;
    u.C = 12;
    u.T = 8;
    u.DC = 4;
    const auto syn = ss::syntactic_features(u);
    c.near(syn.at("MLS"), 100.0 / 5.0, 1e-9, "MLS");
    c.near(syn.at("MLT"), 100.0 / 8.0, 1e-9, "MLT");
    c.near(syn.at("MLC"), 100.0 / 12.0, 1e-9, "MLC");
    c.near(syn.at("C/T"), 12.0 / 8.0, 1e-9, "C/T");
    c.near(syn.at("DC/C"), 4.0 / 12.0, 1e-9, "DC/C");
    c.near(syn.at("DC/T"), 4.0 / 8.0, 1e-9, "DC/T");

    const auto ct = fixtures::tokens("cat run", {"NOUN", "VERB"});
    const auto cx = ss::count_and_complexity_features(ct, res, ss::UnitCounts{});
    c.near(cx.at("total_text_complexity_no_sw_mAvg"), 2.0 + 3.0, 1e-9, "total complexity");
    c.near(cx.at("average_word_complexity_no_sw_mAvg"), (2.0 + 3.0) / 2, 1e-9,
           "average complexity");
    c.near(cx.at("total_text_complexity_mMod"), 2.0 + 3.0, 1e-9, "mode total");
  }
}

// Tone whose cycle k lasts period * (1 + p * u_k), u_k uniform in [-1, 1].
ss::AudioBuffer perturbed_tone(double p, double seconds, std::uint64_t seed) {
  const double rate = 16000.0, period = 0.01;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ss::AudioBuffer a;
  a.sample_rate = rate;
  double phase = 0.0, cycle = period * (1.0 + p * u(rng));
  const auto n = static_cast<std::size_t>(seconds * rate);
  for (std::size_t i = 0; i < n; ++i) {
    a.samples.push_back(0.5 * std::sin(2.0 * std::numbers::pi * phase));
    phase += 1.0 / (rate * cycle);
    if (phase >= 1.0) {
      phase -= 1.0;
      cycle = period * (1.0 + p * u(rng));
    }
  }
  return a;
}

void criterion_dsp(Checks& c) {
  const auto tone = fixtures::sine(100.0, 1.0);
  const auto track = ss::pitch_track(tone);
  c.expect(!track.periods.empty(), "tone has voiced frames");
  double worst = 0.0;
  for (double t : track.periods) worst = std::max(worst, std::abs(t - 0.01));
  c.expect(worst <= 1.0 / 16000.0, "period error " + std::to_string(worst) + " s");
  const auto fs = ss::acoustic_features(tone, track);
  for (const char* name : {"localJitter", "rapJitter", "ppq5Jitter", "ddpJitter", "localShimmer",
                           "apq3Shimmer", "aqpq5Shimmer", "ddaShimmer"}) {
    c.expect(fs.at(name) < 1e-3, std::string(name) + " on a pure tone");
  }

  std::vector<double> rap;
  for (double p : {0.0, 0.01, 0.02, 0.05}) {
    const auto a = perturbed_tone(p, 2.0, kSeed);
    const auto f = ss::acoustic_features(a, ss::pitch_track(a));
    rap.push_back(f.at("rapJitter"));
    c.expect(f.at("ddpJitter") == 3.0 * f.at("rapJitter"), "ddp = 3 rap");
    c.expect(f.at("ddaShimmer") == 3.0 * f.at("apq3Shimmer"), "dda = 3 apq3");
  }
  for (std::size_t k = 1; k < rap.size(); ++k) {
    c.expect(rap[k] > rap[k - 1], "rapJitter increases with perturbation step " +
                                      std::to_string(k));
  }
}

// Random tree with consistent covers; returns the node index.
int grow(ss::Tree& t, std::mt19937_64& rng, int depth, int max_depth, int p) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int id = static_cast<int>(t.nodes.size());
  t.nodes.emplace_back();
  if (depth == max_depth || u(rng) < 0.25) {
    t.nodes[id].cover = 1.0 + 9.0 * u(rng);
    t.nodes[id].value = {4.0 * u(rng) - 2.0};
    return id;
  }
  const int f = std::uniform_int_distribution<int>(0, p - 1)(rng);
  const double thr = 2.0 * u(rng) - 1.0;
  const int l = grow(t, rng, depth + 1, max_depth, p);
  const int r = grow(t, rng, depth + 1, max_depth, p);
  auto& n = t.nodes[id];
  n.feature = f;
  n.threshold = thr;
  n.left = l;
  n.right = r;
  n.cover = t.nodes[l].cover + t.nodes[r].cover;
  n.gain = u(rng);
  n.value = {0.0};
  return id;
}

void criterion_shap(Checks& c) {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int mismatches = 0, accuracy = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = 1 + static_cast<int>(u(rng) * 8);
    ss::TreeEnsembleModel m;
    const int n_trees = 1 + static_cast<int>(u(rng) * 3);
    m.kind = n_trees == 1 ? ss::EnsembleKind::kSingleTree
                          : (trial % 2 ? ss::EnsembleKind::kGbtRegressor
                                       : ss::EnsembleKind::kForest);
    m.learning_rate = 0.3;
    m.base_score = {m.kind == ss::EnsembleKind::kGbtRegressor ? 0.5 : 0.0};
    for (int k = 0; k < p; ++k) m.feature_names.push_back("f" + std::to_string(k));
    for (int k = 0; k < n_trees; ++k) {
      ss::Tree t;
      grow(t, rng, 0, 1 + static_cast<int>(u(rng) * 3), p);
      m.trees.push_back(std::move(t));
    }
    std::vector<double> x(p);
    for (auto& v : x) v = 3.0 * u(rng) - 1.5;
    const auto fast = ss::tree_shap(m, x);
    const auto slow = ss::brute_force_shap(m, x);
    bool same = std::abs(fast.base_value - slow.base_value) <= 1e-9;
    double sum = fast.base_value;
    for (int k = 0; k < p; ++k) {
      same = same && std::abs(fast.phi[k] - slow.phi[k]) <= 1e-9;
      sum += fast.phi[k];
    }
    mismatches += !same;
    accuracy += std::abs(sum - m.predict(x)) >= 1e-6;
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " of 1000 trees disagree with brute force");
  c.expect(accuracy == 0, std::to_string(accuracy) + " random trees violate local accuracy");

  // Trained GBT with a dummy constant column 5.
  const std::size_t n = 300;
  ss::DenseMatrix X(n, 6);
  std::vector<double> y(n), w(n, 1.0), cls(n);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < 5; ++j) X(i, j) = g(rng);
    X(i, 5) = 1.0;
    y[i] = X(i, 0) + 0.5 * X(i, 1) * X(i, 2) + 0.1 * g(rng);
    cls[i] = y[i] < -0.5 ? 0 : (y[i] < 0.5 ? 1 : 2);
  }
  ss::GbtParams gp;
  gp.n_stages = 50;
  auto reg = ss::fit_gbt(X, y, w, gp);
  auto clf = ss::fit_gbt(X, cls, w, gp, ss::Task::kClassification, 3);
  reg.feature_names = clf.feature_names = {"x0", "x1", "x2", "x3", "x4", "dummy"};
  double worst = 0.0, dummy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = X.row(i);
    const auto s = ss::tree_shap(reg, row);
    double total = s.base_value;
    for (double v : s.phi) total += v;
    worst = std::max(worst, std::abs(total - reg.predict(row)));
    dummy = std::max(dummy, std::abs(s.phi[5]));
    for (int k = 0; k < 3; ++k) {
      const auto sc = ss::tree_shap(clf, row, k);
      double tc = sc.base_value;
      for (double v : sc.phi) tc += v;
      worst = std::max(worst, std::abs(tc - clf.predict_raw(row)[k]));
      dummy = std::max(dummy, std::abs(sc.phi[5]));
    }
  }
  c.expect(worst < 1e-6, "GBT local accuracy error " + std::to_string(worst));
  c.expect(dummy == 0.0, "dummy feature phi " + std::to_string(dummy));
}

void criterion_pdp(Checks& c) {
  std::mt19937_64 rng(kSeed);
  std::normal_distribution<double> g(0.0, 1.0);
  ss::DenseMatrix bg(200, 2);
  for (auto& v : bg.values) v = g(rng);
  const ss::Predictor additive = [](std::span<const double> x) { return x[0] + x[1]; };
  const auto curve = ss::pdp(additive, bg, 0, "x1");
  double mean_x2 = 0.0;
  for (std::size_t i = 0; i < bg.rows; ++i) mean_x2 += bg(i, 1);
  mean_x2 /= bg.rows;
  c.expect(curve.grid.size() == 20, "20 grid points");
  for (std::size_t k = 0; k < curve.grid.size(); ++k) {
    c.near(curve.mean_prediction[k], curve.grid[k] + mean_x2, 1e-9, "additive identity");
  }

  ss::TreeEnsembleModel step;
  step.base_score = {0.0};
  ss::Tree t;
  t.nodes.resize(3);
  t.nodes[0].feature = 0;
  t.nodes[0].threshold = 0.0;
  t.nodes[0].left = 1;
  t.nodes[0].right = 2;
  t.nodes[0].cover = 2.0;
  t.nodes[1].cover = t.nodes[2].cover = 1.0;
  t.nodes[1].value = {0.0};
  t.nodes[2].value = {1.0};
  step.trees.push_back(t);
  const auto sc = ss::pdp([&](std::span<const double> x) { return step.predict(x); }, bg, 0, "x1");
  bool saw_low = false, saw_high = false;
  for (std::size_t k = 0; k < sc.grid.size(); ++k) {
    const double want = sc.grid[k] <= 0.0 ? 0.0 : 1.0;
    c.expect(sc.mean_prediction[k] == want, "step curve value");
    (want == 0.0 ? saw_low : saw_high) = true;
  }
  c.expect(saw_low && saw_high, "step curve crosses 0");
}

void criterion_learner(Checks& c) {
  std::mt19937_64 rng(kSeed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 10.0);

  {
    const std::size_t n = 400;
    ss::DenseMatrix X(n, 2);
    std::vector<double> y(n), w(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      X(i, 0) = u(rng);
      X(i, 1) = u(rng);
      y[i] = X(i, 0) + 0.1 * g(rng);
    }
    std::vector<double> loss;
    ss::GbtParams gp;
    gp.n_stages = 200;
    ss::fit_gbt(X, y, w, gp, ss::Task::kRegression, 1, &loss);
    bool mono = loss.size() == 200;
    for (std::size_t k = 1; k < loss.size(); ++k) mono = mono && loss[k] <= loss[k - 1];
    c.expect(mono, "GBT training loss non-increasing");
  }
  {
    auto make = [&](std::size_t n, ss::DenseMatrix& X, std::vector<double>& y) {
      X = ss::DenseMatrix(n, 1);
      y.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        X(i, 0) = u(rng);
        y[i] = X(i, 0) + g(rng);
      }
    };
    ss::DenseMatrix Xtr, Xte;
    std::vector<double> ytr, yte;
    make(300, Xtr, ytr);
    make(2000, Xte, yte);
    std::vector<double> w(ytr.size(), 1.0);
    ss::TreeParams tp{8, 1, 2, 0};
    const auto tree = ss::single_tree_model(Xtr, ytr, w, tp, ss::Task::kRegression, 1, kSeed);
    ss::ForestParams fp;
    fp.n_trees = 50;
    fp.tree = tp;
    fp.seed = kSeed;
    const auto forest = ss::fit_forest(Xtr, ytr, w, fp);
    std::vector<double> pt, pf;
    for (std::size_t i = 0; i < Xte.rows; ++i) {
      pt.push_back(tree.predict(Xte.row(i)));
      pf.push_back(forest.predict(Xte.row(i)));
    }
    c.expect(ss::mse(yte, pf) <= ss::mse(yte, pt), "forest test MSE <= tree test MSE");
  }
  {
    const std::size_t n = 50;
    ss::DenseMatrix X(n, 1, 1.0);
    std::vector<double> y(n, 4.0), w(n, 1.0);
    for (double nu : {0.1, 0.3, 0.7}) {
      for (int k : {1, 5, 20}) {
        ss::GbtParams gp;
        gp.n_stages = k;
        gp.learning_rate = nu;
        gp.base = ss::BaseScore::kZero;
        const auto m = ss::fit_gbt(X, y, w, gp);
        c.near(m.predict(X.row(0)), 4.0 * (1.0 - std::pow(1.0 - nu, k)), 1e-9,
               "geometric shrinkage");
      }
    }
  }
  {
    const std::size_t n = 200;
    ss::DenseMatrix X(n, 3);
    std::vector<double> y(n), w(n, 1.0), cls(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < 3; ++j) X(i, j) = g(rng);
      y[i] = X(i, 0) * X(i, 1) + std::sin(X(i, 2));
      cls[i] = y[i] > 0 ? 1 : 0;
    }
    ss::ForestParams fp;
    fp.n_trees = 20;
    fp.seed = kSeed;
    std::vector<ss::TreeEnsembleModel> models = {
        ss::fit_gbt(X, y, w, ss::GbtParams{}),
        ss::fit_gbt(X, cls, w, ss::GbtParams{}, ss::Task::kClassification, 2),
        ss::fit_forest(X, y, w, fp),
        ss::fit_forest(X, cls, w, fp, ss::Task::kClassification, 2)};
    for (auto& m : models) {
      m.feature_names = {"a", "b", "c"};
      const auto back = ss::TreeEnsembleModel::from_json(
          nlohmann::json::parse(m.to_json().dump()));
      bool same = true;
      for (std::size_t i = 0; i < n; ++i) {
        const auto a = m.predict_raw(X.row(i));
        const auto b = back.predict_raw(X.row(i));
        same = same && a == b;
      }
      c.expect(same, std::string("round trip of ") +
                         std::string(ss::ensemble_kind_name(m.kind)));
    }
  }
}

// Reduced grid for the pipeline criteria; recorded alongside the defaults.
ss::ParamGrid acceptance_grid() {
  return {{"max_depth", {2, 3}},
          {"n_stages", {200}},
          {"learning_rate", {0.05}},
          {"min_samples_leaf", {5}}};
}

struct Pipeline {
  ss::SynthCorpus corpus;
  ss::FeatureMatrix matrix;
};

Pipeline build_pipeline(int n, int threads) {
  ss::SynthSpec spec;
  spec.n = n;
  spec.grade_levels = 3;
  spec.seed = kSeed;
  spec.score_function = ss::ScoreFunction::kMixed;
  Pipeline p;
  p.corpus = ss::synth_corpus(spec);
  const auto split = ss::split_per_prompt(p.corpus.responses, {0.70, 0.10, 0.20}, kSeed);
  ss::ExtractConfig cfg;
  cfg.seed = kSeed;
  cfg.threads = threads;
  auto ex = ss::extract_features(p.corpus.responses, ss::bundled_resources(), &split, cfg);
  if (!ex.failures.empty()) {
    throw ss::Error(ss::ErrorKind::kPrecondition,
                    "extraction failed for " + ex.failures.front().first);
  }
  p.matrix = std::move(ex.matrix);
  return p;
}

Pipeline g_pipeline;

// Fluency timing, pause structure and vocabulary breadth.
const std::set<std::string>& generating_features() {
  static const std::set<std::string> s = {
      "speaking_rate",   "general_silence",  "mean_silence", "silence_absolute_deviation",
      "SilenceRate1",    "SilenceRate2",     "long_silence_deviation", "longpfreq",
      "ttr",             "ndw",              "ndwz",         "ndwerz",
      "ndwesz",          "ls1",              "ls2"};
  return s;
}

void criterion_end_to_end(Checks& c) {
  g_pipeline = build_pipeline(800, 1);
  const auto& m = g_pipeline.matrix;
  const int K = ss::grade_levels(m);
  const auto train = m.select_rows(m.rows_in_split("train"));
  const auto test = m.select_rows(m.rows_in_split("test"));
  ss::TrainConfig tc;
  tc.grid = acceptance_grid();
  tc.seed = kSeed;
  const auto result = ss::train_model(train, K, tc);
  const auto& tm = result.trained;
  const auto report = ss::evaluate_grades(ss::grades_of(test), tm.predict_grades(test), K);
  std::printf("       held-out QWK %.4f r %.4f MSE %.4f (n=%d)\n", report.qwk,
              report.pearson_r, report.mse, report.n);
  c.expect(report.qwk >= 0.7, "held-out QWK " + std::to_string(report.qwk));

  const auto background = tm.standardized(train);
  const auto col = m.column_index("speaking_rate");
  c.expect(col.has_value(), "speaking_rate column");
  if (col) {
    const auto curve = ss::pdp(
        [&](std::span<const double> x) { return tm.model.predict(x); }, background, *col,
        "speaking_rate");
    const double lo = curve.grid.front(), hi = curve.grid.back();
    const double a = lo + 0.1 * (hi - lo), b = hi - 0.1 * (hi - lo);
    int drops = 0;
    double prev = -INFINITY;
    for (std::size_t k = 0; k < curve.grid.size(); ++k) {
      if (curve.grid[k] < a || curve.grid[k] > b) continue;
      drops += curve.mean_prediction[k] < prev;
      prev = curve.mean_prediction[k];
    }
    c.expect(drops == 0, "speaking_rate PDP decreases " + std::to_string(drops) + " times");
  }

  const auto* ens = tm.model.ensemble();
  c.expect(ens != nullptr, "GBT model is a tree ensemble");
  if (ens) {
    const auto summary = ss::shap_summary(ss::shap_matrix(*ens, tm.standardized(test)));
    bool found = false;
    std::string top;
    for (std::size_t k = 0; k < std::min<std::size_t>(3, summary.ranking.size()); ++k) {
      top += summary.ranking[k].first + " ";
      found = found || generating_features().count(summary.ranking[k].first);
    }
    std::printf("       SHAP top 3: %s\n", top.c_str());
    c.expect(found, "no generating feature in SHAP top 3: " + top);
  }

  ss::AblationConfig ac;
  ac.grid = acceptance_grid();
  ac.seed = kSeed;
  const auto add = ss::ablation_additive(m, ac);
  double jump = -1.0;
  for (std::size_t k = 0; k < add.rows.size(); ++k) {
    std::printf("       additive %-22s QWK %.4f\n", add.rows[k].configuration.c_str(),
                add.rows[k].metrics.qwk);
    const auto& g = add.rows[k].groups;
    if (k > 0 && !g.empty() && g.back() == "FF") {
      jump = add.rows[k].metrics.qwk - add.rows[k - 1].metrics.qwk;
    }
  }
  c.expect(jump >= 0.2, "QWK jump at +FF " + std::to_string(jump));

  const auto loo = ss::ablation_leave_one_out(m, ac);
  double drop = 0.0;
  bool seen = false;
  for (const auto& row : loo.rows) {
    std::printf("       leave-one-out %-10s QWK %.4f (%+.1f%%)\n", row.configuration.c_str(),
                row.metrics.qwk, row.pct_change);
    if (row.configuration == "-FF") {
      drop = row.pct_change;
      seen = true;
    }
  }
  c.expect(seen && drop <= -10.0, "leave-one-out FF change " + std::to_string(drop) + "%");
}

std::string pipeline_fingerprint(int threads, std::string* features) {
  const auto p = build_pipeline(300, threads);
  *features = p.matrix.to_csv();
  ss::BenchmarkConfig bc;
  bc.models = {ss::ModelFamily::kLinear, ss::ModelFamily::kForest, ss::ModelFamily::kGbt};
  bc.grids[ss::ModelFamily::kGbt] = {{"max_depth", {2}}, {"n_stages", {50}}};
  bc.grids[ss::ModelFamily::kForest] = {{"n_trees", {30}}, {"max_depth", {4}}};
  bc.seed = kSeed;
  bc.threads = threads;
  const auto report = ss::run_benchmark(p.matrix, bc);
  std::string out = report.to_json().dump() + report.to_csv();
  for (const auto& cell : report.cells) out += cell.result.trained.to_json().dump();
  ss::AblationConfig ac;
  ac.grid = {{"max_depth", {2}}, {"n_stages", {50}}};
  ac.seed = kSeed;
  ac.threads = threads;
  out += ss::ablation_leave_one_out(p.matrix, ac).to_json().dump();
  return out;
}

void criterion_determinism(Checks& c) {
  std::string f1, f8;
  const auto r1 = pipeline_fingerprint(1, &f1);
  const auto r8 = pipeline_fingerprint(8, &f8);
  c.expect(!f1.empty() && f1 == f8, "feature CSV differs between 1 and 8 threads");
  c.expect(!r1.empty() && r1 == r8, "models or reports differ between 1 and 8 threads");
}

void criterion_formulations(Checks& c) {
  if (g_pipeline.matrix.rows() == 0) g_pipeline = build_pipeline(800, 1);
  ss::BenchmarkConfig bc;
  bc.models = {ss::ModelFamily::kGbt};
  bc.grids[ss::ModelFamily::kGbt] = acceptance_grid();
  bc.length_baseline = false;
  bc.seed = kSeed;
  const auto report = ss::run_benchmark(g_pipeline.matrix, bc);
  std::map<std::string, double> by_formulation;
  std::printf("       %-8s %-6s %-15s %8s %8s %8s\n", "prompt", "model", "formulation", "QWK",
              "r", "MSE");
  for (const auto& row : report.rows) {
    std::printf("       %-8s %-6s %-15s %8.4f %8.4f %8.4f\n", row.prompt.c_str(),
                row.model.c_str(), row.formulation.c_str(), row.metrics.qwk,
                row.metrics.pearson_r, row.metrics.mse);
    by_formulation[row.formulation] = row.metrics.qwk;
  }
  c.expect(by_formulation.count("regression") && by_formulation.count("classification"),
           "both formulations reported");
  c.expect(by_formulation["regression"] >= by_formulation["classification"] - 0.05,
           "regression QWK below classification QWK - 0.05");
}

}  // namespace

int main() {
  run(1, "metric oracles", 1, criterion_metrics);
  run(2, "QWK independence", 1, criterion_independence);
  run(3, "feature oracles", 1, criterion_features);
  run(4, "DSP oracles", 30, criterion_dsp);
  run(5, "SHAP correctness", 120, criterion_shap);
  run(6, "PDP correctness", 10, criterion_pdp);
  run(7, "learner properties", 60, criterion_learner);
  run(8, "end-to-end synthetic pipeline", 300, criterion_end_to_end);
  run(9, "determinism across thread counts", 300, criterion_determinism);
  run(10, "regression vs. classification", 300, criterion_formulations);
  std::printf("%d of 10 criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
