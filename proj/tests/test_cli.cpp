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


#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "speechscore/common.hpp"
#include "fixtures.hpp"
#include "json.hpp"
#include "speechscore/feature_matrix.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Run cli(const std::string& args, const fs::path& dir) {
  const auto out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = std::string(SPEECHSCORE_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_CASE("subcommand help lists flags and defaults") {
  const auto dir = fixtures::scratch_dir("cli_help");
  const std::vector<std::pair<std::string, std::vector<std::string>>> expected = {
      {"extract", {"--corpus", "--groups", "--split", "--min-df", "--fmin", "--out"}},
      {"train", {"--features", "--model", "--task", "--grid", "--folds"}},
      {"evaluate", {"--features", "--model", "--predictions", "--split"}},
      {"explain", {"--model", "--feature", "--grid-points", "--top"}},
      {"ablate", {"--features", "--mode", "--order", "--folds"}},
      {"synth", {"--n", "--grade-levels", "--score-function", "--noise"}},
      {"report", {"--features", "--models", "--formulations", "--grids"}}};
  for (const auto& [sub, flags] : expected) {
    const auto r = cli("--seed 1 " + sub + " --help", dir);
    CHECK(r.code == 0);
    for (const auto& f : flags) CHECK_MESSAGE(r.out.find(f) != std::string::npos, sub << " " << f);
  }
  const auto synth = cli("--seed 1 synth --help", dir).out;
  CHECK(synth.find("500") != std::string::npos);
  const auto train = cli("--seed 1 train --help", dir).out;
  CHECK(train.find("gbt") != std::string::npos);
}

TEST_CASE("errors come back as json with a nonzero exit") {
  const auto dir = fixtures::scratch_dir("cli_err");
  const auto usage = cli("synth --out " + (dir / "x").string(), dir);
  CHECK(usage.code == 2);
  CHECK(nlohmann::json::parse(usage.err)["error"] == "usage");

  const auto missing =
      cli("--seed 1 train --features " + (dir / "nope.csv").string() + " --out " + dir.string(), dir);
  CHECK(missing.code == 1);
  const auto j = nlohmann::json::parse(missing.err);
  CHECK(j.contains("error"));
  CHECK(j.contains("message"));
}

TEST_CASE("synth, extract, train, evaluate and explain end to end") {
  const auto dir = fixtures::scratch_dir("cli_e2e");
  const auto corpus = dir / "corpus";
  REQUIRE(cli("--seed 5 synth --n 60 --no-audio --mean-words 60 --out " + corpus.string(), dir).code == 0);
  REQUIRE(fs::exists(corpus / "manifest.txt"));

  {
    std::ifstream in(corpus / "manifest.txt");
    std::ofstream out(corpus / "three.txt");
    std::string line;
    for (int k = 0; k < 3 && std::getline(in, line); ++k) out << line << '\n';
  }
  const auto small = dir / "small";
  const auto ex3 = cli("--seed 5 extract --corpus " + (corpus / "three.txt").string() +
                           " --groups FF,SPF,GVF --no-split --out " + small.string(),
                       dir);
  REQUIRE_MESSAGE(ex3.code == 0, ex3.err);
  CHECK(speechscore::FeatureMatrix::read_csv(small / "features.csv").rows() == 3);

  const auto feats = dir / "feats";
  const auto ex = cli("--seed 5 extract --corpus " + (corpus / "manifest.txt").string() +
                          " --groups CF,FF,SPF,GVF --out " + feats.string(),
                      dir);
  REQUIRE_MESSAGE(ex.code == 0, ex.err);
  const auto csv = feats / "features.csv";
  const auto m = speechscore::FeatureMatrix::read_csv(csv);
  CHECK(m.rows() == 60);

  {
    std::ofstream p(dir / "gold.csv");
    p << "response_id,grade\n";
    for (const auto& meta : m.meta()) p << meta.response_id << ',' << meta.grade << '\n';
  }
  const auto ev = cli("--seed 5 evaluate --features " + csv.string() + " --predictions " +
                          (dir / "gold.csv").string() + " --split all --out " + (dir / "ev").string(),
                      dir);
  REQUIRE_MESSAGE(ev.code == 0, ev.err);
  const auto metrics = nlohmann::json::parse(slurp(dir / "ev" / "metrics.json"));
  CHECK(metrics["qwk"].get<double>() == doctest::Approx(1.0));

  {
    std::ofstream g(dir / "grid.json");
    g << R"({"max_depth": [2], "n_stages": [30]})";
  }
  const auto model_dir = dir / "model";
  const auto tr = cli("--seed 5 train --features " + csv.string() + " --grid " +
                          (dir / "grid.json").string() + " --folds 3 --out " + model_dir.string(),
                      dir);
  REQUIRE_MESSAGE(tr.code == 0, tr.err);
  REQUIRE(fs::exists(model_dir / "model.json"));

  const auto xp_dir = dir / "pdp";
  const auto xp = cli("--seed 5 explain pdp --model " + (model_dir / "model.json").string() +
                          " --features " + csv.string() + " --feature speaking_rate --out " +
                          xp_dir.string(),
                      dir);
  REQUIRE_MESSAGE(xp.code == 0, xp.err);
  int n_csv = 0, n_svg = 0;
  for (const auto& e : fs::directory_iterator(xp_dir)) {
    n_csv += e.path().extension() == ".csv";
    n_svg += e.path().extension() == ".svg";
  }
  CHECK(n_csv == 1);
  CHECK(n_svg == 1);
}
