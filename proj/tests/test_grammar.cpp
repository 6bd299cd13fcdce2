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


#include <random>

#include "doctest.h"
#include "speechscore/common.hpp"
#include "fixtures.hpp"
#include "speechscore/grammar.hpp"

using namespace speechscore;
using fixtures::tokens;

namespace {

LexicalResources lexicon() {
  LexicalResources r;
  r.filled_pauses = default_filled_pauses();
  r.stopwords = {"the", "a", "she", "he", "and"};
  r.frequency_rank = {{"the", 1}, {"cat", 300}, {"run", 120}, {"saw", 400},
                      {"ubiquitous", 9000}, {"elucidate", 12000}};
  r.complexity_avg = {{"cat", 2.0}, {"run", 3.0}, {"the", 1.0}};
  r.complexity_mode = {{"cat", 1.0}, {"run", 4.0}, {"the", 1.0}};
  return r;
}

}  // namespace

TEST_CASE("type-token ratio and number of different words") {
  const auto t = tokens("the cat saw the cat", {"DET", "NOUN", "VERB", "DET", "NOUN"});
  const auto fs = lexical_features(t, lexicon(), 1);
  CHECK(fs.at("ttr") == doctest::Approx(0.6));
  CHECK(fs.at("ndw") == 3.0);
  // Lexical density: cat, saw, cat of five words.
  CHECK(fs.at("ld") == doctest::Approx(3.0 / 5.0));
}

TEST_CASE("fifty distinct words saturate the diversity measures") {
  std::string text;
  std::vector<std::string> tags;
  for (int i = 0; i < 50; ++i) {
    text += "w" + std::string(1, char('a' + i % 26)) + std::string(1, char('a' + i / 26)) + " ";
    tags.push_back("NOUN");
  }
  const auto fs = lexical_features(tokens(text, tags), lexicon(), 1);
  CHECK(fs.at("ndwz") == 50.0);
  CHECK(fs.at("ttr") == 1.0);
  CHECK(fs.at("ndwerz") == doctest::Approx(50.0));
  CHECK(fs.at("ndwesz") == doctest::Approx(50.0));
}

TEST_CASE("frequent verbs are not sophisticated") {
  const auto fs = lexical_features(tokens("run run", {"VERB", "VERB"}), lexicon(), 1);
  CHECK(fs.at("vs1") == 0.0);
  CHECK(fs.at("vs2") == 0.0);
}

TEST_CASE("sophistication counts rare words") {
  const auto t = tokens("elucidate elucidate ubiquitous cat",
                        {"VERB", "VERB", "ADJ", "NOUN"});
  const auto p = lexical_profile(t, lexicon());
  CHECK(p.sophisticated_verb_types == 1);
  CHECK(p.verb_tokens == 2);
  const auto fs = lexical_features(t, lexicon(), 1);
  CHECK(fs.at("vs1") == doctest::Approx(1.0 / 2.0));
  CHECK(fs.at("vs2") == doctest::Approx(1.0 / 2.0));
  CHECK(fs.at("ls1") == doctest::Approx(3.0 / 4.0));
  CHECK(fs.at("ls2") == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("no verbs flags the verb measures") {
  const auto fs = lexical_features(tokens("the cat", {"DET", "NOUN"}), lexicon(), 1);
  CHECK(fs.at("vs1") == 0.0);
  CHECK_FALSE(fs.flags.empty());
  CHECK_THROWS_AS(lexical_features(std::vector<TokenAnnotation>{}, lexicon(), 1), Error);
}

TEST_CASE("lexical diversity switch uses lexical types") {
  GrammarConfig cfg;
  cfg.ld_as_type_ratio = true;
  const auto t = tokens("the cat saw the cat", {"DET", "NOUN", "VERB", "DET", "NOUN"});
  CHECK(lexical_features(t, lexicon(), 1, cfg).at("ld") == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("syntactic ratios") {
  UnitCounts u;
  u.W = 100;
  u.S = 5;
  u.C = 12;
  u.T = 8;
  u.DC = 4;
  u.VP = 16;
  u.CT = 2;
  u.CP = 3;
  u.CN = 6;
  const auto fs = syntactic_features(u);
  REQUIRE(fs.values.size() == 13);
  CHECK(fs.at("MLS") == doctest::Approx(20.0));
  CHECK(fs.at("C/T") == doctest::Approx(1.5));
  CHECK(fs.at("DC/C") == doctest::Approx(1.0 / 3.0));
  CHECK(fs.at("DC/T") == doctest::Approx(0.5));
  CHECK(fs.at("VP/T") == doctest::Approx(2.0));
  CHECK(fs.at("T/S") == doctest::Approx(8.0 / 5.0));
  CHECK(fs.at("CP/C") == doctest::Approx(0.25));
  CHECK(fs.at("CN/T") == doctest::Approx(0.75));
}

TEST_CASE("zero T-units zero the per-T ratios") {
  UnitCounts u;
  u.W = 10;
  u.S = 1;
  const auto fs = syntactic_features(u);
  CHECK(fs.at("MLT") == 0.0);
  CHECK(fs.at("C/T") == 0.0);
  CHECK_FALSE(fs.flags.empty());
}

TEST_CASE("complexity totals and averages") {
  const auto fs =
      count_and_complexity_features(tokens("cat run", {"NOUN", "VERB"}), lexicon(), {});
  CHECK(fs.at("total_text_complexity_no_sw_mAvg") == doctest::Approx(5.0));
  CHECK(fs.at("average_word_complexity_no_sw_mAvg") == doctest::Approx(2.5));
  CHECK(fs.at("total_text_complexity_no_sw_mMod") == doctest::Approx(5.0));
  CHECK(fs.at("total_nouns") == 1.0);
  CHECK(fs.at("total_verbs") == 1.0);
  const auto with_sw = count_and_complexity_features(
      tokens("the cat run", {"DET", "NOUN", "VERB"}), lexicon(), {});
  CHECK(with_sw.at("total_text_complexity_mAvg") == doctest::Approx(6.0));
  CHECK(with_sw.at("average_word_complexity_mAvg") == doctest::Approx(2.0));
  CHECK(with_sw.at("total_text_complexity_no_sw_mAvg") == doctest::Approx(5.0));
}

TEST_CASE("identical lexicon columns give identical variants") {
  auto res = lexicon();
  res.complexity_mode = res.complexity_avg;
  const auto fs = count_and_complexity_features(
      tokens("the cat run cat", {"DET", "NOUN", "VERB", "NOUN"}), res, {});
  for (const char* base : {"total_text_complexity_no_sw", "average_word_complexity_no_sw",
                           "total_text_complexity", "average_word_complexity"}) {
    CHECK(fs.at(std::string(base) + "_mAvg") == fs.at(std::string(base) + "_mMod"));
  }
}

TEST_CASE("all-stopword response flags the content variants") {
  const auto fs = count_and_complexity_features(tokens("the the", {"DET", "DET"}), lexicon(), {});
  CHECK(fs.has_flag("all_stopwords"));
  CHECK(fs.at("total_text_complexity_no_sw_mAvg") == 0.0);
  CHECK(fs.at("total_text_complexity_mAvg") == doctest::Approx(2.0));
}

TEST_CASE("heuristic units of two simple sentences") {
  const auto t = tokens("the dog barks . the cat runs .",
                        {"DET", "NOUN", "VERB", "PUNCT", "DET", "NOUN", "VERB", "PUNCT"});
  const auto u = heuristic_syntax(t, lexicon());
  CHECK(u.S == 2);
  CHECK(u.C == 2);
  CHECK(u.T == 2);
  CHECK(u.DC == 0);
  CHECK(u.provenance == Provenance::kHeuristic);
}

TEST_CASE("clause-initial conjunction starts a T-unit") {
  const auto u = heuristic_syntax(tokens("she runs and he walks", {"PRON", "VERB", "CONJ", "PRON", "VERB"}),
                                  lexicon());
  CHECK(u.T == 2);
  CHECK(u.CP >= 0);
  CHECK(u.S == 1);
}

TEST_CASE("subordinate clause and auxiliary chains") {
  const auto u = heuristic_syntax(
      tokens("she will leave because it is raining .",
             {"PRON", "AUX", "VERB", "CONJ", "PRON", "AUX", "VERB", "PUNCT"}),
      lexicon());
  CHECK(u.C == 2);
  CHECK(u.VP == 2);
  CHECK(u.DC == 1);
  CHECK(u.CT == 1);
}

TEST_CASE("no verbs means no clauses") {
  const auto u = heuristic_syntax(tokens("big red dog", {"ADJ", "ADJ", "NOUN"}), lexicon());
  CHECK(u.C == 0);
  CHECK(u.CN == 1);
}

TEST_CASE("annotated spans take precedence") {
  auto r = fixtures::response({fixtures::word("dogs", 0.0, 0.3, {"D", "AO1", "G", "Z"}),
                               fixtures::word("bark", 0.4, 0.7, {"B", "AA1", "R", "K"})});
  r.tokens[1].pos = Pos::kVerb;
  SyntaxSpans s;
  s.provenance = Provenance::kAnnotated;
  s.sentences = {{0, 2}};
  s.t_units = {{0, 2}};
  s.clauses = {{0, 1}, {1, 2}, {0, 2}};
  r.syntax = s;
  const auto u = unit_counts(r, lexicon());
  CHECK(u.provenance == Provenance::kAnnotated);
  CHECK(u.C == 3);
  r.syntax.reset();
  CHECK(unit_counts(r, lexicon()).provenance == Provenance::kHeuristic);
}

TEST_CASE("lexical invariants on random token streams") {
  std::mt19937_64 rng(12);
  const char* words[] = {"the", "cat", "run", "saw", "ubiquitous", "elucidate", "dog", "a"};
  const char* tags[] = {"DET", "NOUN", "VERB", "VERB", "ADJ", "VERB", "NOUN", "DET"};
  for (int trial = 0; trial < 40; ++trial) {
    std::string text;
    std::vector<std::string> tg;
    const int n = 1 + static_cast<int>(rng() % 120);
    for (int i = 0; i < n; ++i) {
      const auto k = rng() % 8;
      text += std::string(words[k]) + " ";
      tg.push_back(tags[k]);
    }
    const auto t = tokens(text, tg);
    const auto fs = lexical_features(t, lexicon(), 77);
    CHECK(fs.at("ttr") > 0.0);
    CHECK(fs.at("ttr") <= 1.0);
    CHECK(fs.at("ndwz") <= std::min(50, n));
    CHECK(fs.at("ndwerz") >= 1.0);
    CHECK(fs.at("ndwerz") <= 50.0);
    CHECK(fs.at("ndwesz") >= 1.0);
    CHECK(fs.at("ndwesz") <= 50.0);
    CHECK(fs.at("ls1") <= 1.0);
    CHECK(fs.at("ls2") <= 1.0);
    if (fs.at("vs1") > 0.0) CHECK(fs.at("vs2") >= fs.at("vs1"));
    const auto again = lexical_features(t, lexicon(), 77);
    CHECK(again.at("ndwerz") == fs.at("ndwerz"));
    CHECK(again.at("ndwesz") == fs.at("ndwesz"));
    const auto p = lexical_profile(t, lexicon());
    CHECK(p.word_types <= p.word_tokens);
    CHECK(p.lexical_types <= p.lexical_tokens);
    CHECK(p.sophisticated_lexical_tokens <= p.lexical_tokens);
    CHECK(p.sophisticated_verb_types <= p.verb_types);
  }
}

TEST_CASE("grammar features follow the fixed order") {
  auto r = fixtures::response({fixtures::word("cat", 0.0, 0.3, {"K", "AE1", "T"})});
  const auto fs = grammar_features(r, lexicon(), 1);
  REQUIRE(fs.values.size() == grammar_feature_names().size());
  for (std::size_t i = 0; i < fs.values.size(); ++i) {
    CHECK(fs.values[i].first == grammar_feature_names()[i]);
  }
}
