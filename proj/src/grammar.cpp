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

#include "speechscore/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <set>

namespace speechscore {

namespace {

const std::set<std::string>& coordinators() {
  static const std::set<std::string> s = {"and", "but", "or", "so", "yet", "nor"};
  return s;
}

const std::set<std::string>& subordinators() {
  static const std::set<std::string> s = {
      "because", "if",    "when",   "although", "though", "while", "since",
      "unless",  "whereas", "whether", "after", "before", "until", "that",
      "which",   "who",   "whom",   "whose",    "where"};
  return s;
}

bool has_letter(const std::string& s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isalpha(c); });
}

bool is_sentence_end(const TokenAnnotation& t) {
  return t.pos == Pos::kPunct &&
         (t.token == "." || t.token == "!" || t.token == "?");
}

bool is_verbal(const TokenAnnotation& t) {
  return t.pos == Pos::kVerb || t.pos == Pos::kAux;
}

bool sophisticated(const std::string& w, const LexicalResources& res, int k) {
  const auto it = res.frequency_rank.find(w);
  return it == res.frequency_rank.end() || it->second > k;
}

bool is_stop(const TokenAnnotation& t, const LexicalResources& res) {
  return t.is_stopword || res.stopwords.count(t.token) > 0;
}

int distinct(std::span<const std::string> words) {
  return static_cast<int>(std::set<std::string>(words.begin(), words.end()).size());
}

double ratio(double num, double den, bool& degenerate) {
  if (den == 0.0) {
    degenerate = true;
    return 0.0;
  }
  return num / den;
}

// Verb chains within one sentence: maximal runs of VERB/AUX, allowing ADV
// between members ("is not going").
struct Chain {
  std::size_t begin = 0;  // index of first verbal token
  std::size_t end = 0;    // one past last verbal token
  bool finite = true;
};

std::vector<Chain> find_chains(std::span<const TokenAnnotation> sent) {
  std::vector<Chain> chains;
  std::size_t i = 0;
  while (i < sent.size()) {
    if (!is_verbal(sent[i])) {
      ++i;
      continue;
    }
    Chain c;
    c.begin = i;
    std::size_t last = i;
    std::size_t j = i + 1;
    while (j < sent.size()) {
      if (is_verbal(sent[j])) {
        last = j++;
      } else if (sent[j].pos == Pos::kAdv) {
        ++j;
      } else {
        break;
      }
    }
    c.end = last + 1;
    c.finite = !(i > 0 && sent[i - 1].token == "to");
    chains.push_back(c);
    i = c.end;
  }
  return chains;
}

}  // namespace

const std::vector<std::string>& grammar_feature_names() {
  static const std::vector<std::string> names = {
      "ld", "ls1", "ls2", "vs1", "vs2", "ndw", "ndwz", "ndwerz", "ndwesz", "ttr",
      "MLS", "MLT", "MLC", "C/T", "VP/T", "DC/C", "DC/T", "T/S", "CT/T", "CP/T",
      "CP/C", "CN/T", "CN/C",
      "total_adjectives", "total_adverbs", "total_nouns", "total_verbs",
      "total_pronoun", "total_conjunctions", "total_determiners",
      "total_text_complexity_no_sw_mAvg", "average_word_complexity_no_sw_mAvg",
      "total_text_complexity_mAvg", "average_word_complexity_mAvg",
      "total_text_complexity_no_sw_mMod", "average_word_complexity_no_sw_mMod",
      "total_text_complexity_mMod", "average_word_complexity_mMod",
      "average_syllables_in_words", "W", "VP", "C", "T", "DC", "CT", "CP", "CN"};
  return names;
}

std::vector<const TokenAnnotation*> word_tokens(std::span<const TokenAnnotation> tokens,
                                                const LexicalResources& resources) {
  std::vector<const TokenAnnotation*> out;
  for (const auto& t : tokens) {
    if (t.pos == Pos::kPunct || !has_letter(t.token)) continue;
    if (resources.is_filled_pause(t.token)) continue;
    out.push_back(&t);
  }
  return out;
}

LexicalProfile lexical_profile(std::span<const TokenAnnotation> tokens,
                               const LexicalResources& resources,
                               const GrammarConfig& config) {
  LexicalProfile p;
  std::set<std::string> types, lex_types, soph_lex_types, soph_types, verb_types,
      soph_verb_types;
  const int k = config.sophistication_rank;
  for (const TokenAnnotation* t : word_tokens(tokens, resources)) {
    ++p.word_tokens;
    types.insert(t->token);
    const bool soph = sophisticated(t->token, resources, k);
    if (soph) soph_types.insert(t->token);
    const bool lexical = t->pos == Pos::kNoun || t->pos == Pos::kVerb ||
                         t->pos == Pos::kAdj || t->pos == Pos::kAdv;
    if (lexical) {
      ++p.lexical_tokens;
      lex_types.insert(t->token);
      if (soph) {
        ++p.sophisticated_lexical_tokens;
        soph_lex_types.insert(t->token);
      }
    }
    if (t->pos == Pos::kVerb) {
      ++p.verb_tokens;
      verb_types.insert(t->token);
      if (soph) soph_verb_types.insert(t->token);
    }
  }
  p.word_types = static_cast<int>(types.size());
  p.lexical_types = static_cast<int>(lex_types.size());
  p.sophisticated_lexical_types = static_cast<int>(soph_lex_types.size());
  p.sophisticated_word_types = static_cast<int>(soph_types.size());
  p.verb_types = static_cast<int>(verb_types.size());
  p.sophisticated_verb_types = static_cast<int>(soph_verb_types.size());
  return p;
}

FeatureSet lexical_features(std::span<const TokenAnnotation> tokens,
                            const LexicalResources& resources, std::uint64_t seed,
                            const GrammarConfig& config) {
  std::vector<std::string> words;
  for (const TokenAnnotation* t : word_tokens(tokens, resources)) words.push_back(t->token);
  if (words.empty()) {
    throw Error(ErrorKind::kEmptyResponse, "lexical features need at least one word token");
  }
  const LexicalProfile p = lexical_profile(tokens, resources, config);
  FeatureSet fs;
  bool degenerate = false;
  if (config.ld_as_type_ratio) {
    fs.add("ld", ratio(p.lexical_types, p.lexical_tokens, degenerate));
  } else {
    fs.add("ld", ratio(p.lexical_tokens, p.word_tokens, degenerate));
  }
  fs.add("ls1", ratio(p.sophisticated_lexical_tokens, p.lexical_tokens, degenerate));
  fs.add("ls2", ratio(p.sophisticated_word_types, p.word_types, degenerate));
  if (degenerate) fs.flag("no_lexical_tokens");
  if (p.verb_tokens == 0) {
    fs.flag("no_verbs");
    fs.add("vs1", 0.0);
    fs.add("vs2", 0.0);
  } else {
    const double sv = p.sophisticated_verb_types;
    fs.add("vs1", sv / p.verb_tokens);
    fs.add("vs2", sv * sv / p.verb_tokens);
  }
  fs.add("ndw", p.word_types);

  const std::size_t n = words.size();
  const std::size_t window = static_cast<std::size_t>(config.ndw_window);
  if (n < window) fs.flag("ndw_short_response");
  const std::size_t take = std::min(n, window);
  fs.add("ndwz", distinct(std::span<const std::string>(words.data(), take)));

  std::mt19937_64 rng(seed);
  double random_sum = 0.0, sequence_sum = 0.0;
  std::vector<std::size_t> idx(n);
  std::vector<std::string> sample(take);
  for (int s = 0; s < config.ndw_samples; ++s) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t k = 0; k < take; ++k) sample[k] = words[idx[k]];
    random_sum += distinct(sample);
  }
  std::uniform_int_distribution<std::size_t> start_dist(0, n - take);
  for (int s = 0; s < config.ndw_samples; ++s) {
    const std::size_t start = start_dist(rng);
    sequence_sum += distinct(std::span<const std::string>(words.data() + start, take));
  }
  fs.add("ndwerz", random_sum / config.ndw_samples);
  fs.add("ndwesz", sequence_sum / config.ndw_samples);
  fs.add("ttr", static_cast<double>(p.word_types) / p.word_tokens);
  return fs;
}

FeatureSet syntactic_features(const UnitCounts& u) {
  FeatureSet fs;
  bool degenerate = false;
  fs.add("MLS", ratio(u.W, u.S, degenerate));
  fs.add("MLT", ratio(u.W, u.T, degenerate));
  fs.add("MLC", ratio(u.W, u.C, degenerate));
  fs.add("C/T", ratio(u.C, u.T, degenerate));
  fs.add("VP/T", ratio(u.VP, u.T, degenerate));
  fs.add("DC/C", ratio(u.DC, u.C, degenerate));
  fs.add("DC/T", ratio(u.DC, u.T, degenerate));
  fs.add("T/S", ratio(u.T, u.S, degenerate));
  fs.add("CT/T", ratio(u.CT, u.T, degenerate));
  fs.add("CP/T", ratio(u.CP, u.T, degenerate));
  fs.add("CP/C", ratio(u.CP, u.C, degenerate));
  fs.add("CN/T", ratio(u.CN, u.T, degenerate));
  fs.add("CN/C", ratio(u.CN, u.C, degenerate));
  if (degenerate) fs.flag("syntax_ratio_degenerate");
  if (u.provenance == Provenance::kHeuristic) fs.flag("syntax_heuristic");
  return fs;
}

UnitCounts heuristic_syntax(std::span<const TokenAnnotation> all_tokens,
                            const LexicalResources& resources) {
  std::vector<TokenAnnotation> tokens;
  for (const auto& t : all_tokens) {
    if (!resources.is_filled_pause(t.token)) tokens.push_back(t);
  }
  UnitCounts u;
  u.provenance = Provenance::kHeuristic;
  u.W = static_cast<int>(word_tokens(all_tokens, resources).size());

  // Sentences: runs between sentence-final punctuation holding a word.
  std::vector<std::span<const TokenAnnotation>> sentences;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= tokens.size(); ++i) {
    if (i == tokens.size() || is_sentence_end(tokens[i])) {
      std::span<const TokenAnnotation> sent(tokens.data() + begin, i - begin);
      if (std::any_of(sent.begin(), sent.end(),
                      [](const auto& t) { return t.pos != Pos::kPunct; })) {
        sentences.push_back(sent);
      }
      begin = i + 1;
    }
  }
  u.S = static_cast<int>(sentences.size());
  if (u.W > 0) u.S = std::max(u.S, 1);

  for (const auto& sent : sentences) {
    const auto chains = find_chains(sent);
    u.VP += static_cast<int>(chains.size());
    std::vector<std::size_t> finite_starts;
    for (const auto& c : chains) {
      if (c.finite) finite_starts.push_back(c.begin);
    }
    u.C += static_cast<int>(finite_starts.size());

    // T-unit boundaries at clause-initial coordinating conjunctions.
    std::vector<std::size_t> boundaries;
    std::size_t segment_start = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) {
      if (sent[i].pos != Pos::kConj || !coordinators().count(sent[i].token)) continue;
      const bool verb_before = std::any_of(
          finite_starts.begin(), finite_starts.end(),
          [&](std::size_t s) { return s >= segment_start && s < i; });
      if (!verb_before) continue;
      std::size_t next_stop = sent.size();
      for (std::size_t j = i + 1; j < sent.size(); ++j) {
        if (sent[j].pos == Pos::kPunct ||
            (sent[j].pos == Pos::kConj && coordinators().count(sent[j].token))) {
          next_stop = j;
          break;
        }
      }
      const bool subject_then_verb = std::any_of(
          finite_starts.begin(), finite_starts.end(),
          [&](std::size_t s) { return s > i + 1 && s < next_stop; });
      if (subject_then_verb) {
        boundaries.push_back(i);
        segment_start = i;
      }
    }
    u.T += 1 + static_cast<int>(boundaries.size());

    // Dependent clauses: a subordinating marker followed by a finite chain
    // before the next punctuation, boundary or marker.
    std::vector<std::size_t> dc_positions;
    for (std::size_t i = 0; i < sent.size(); ++i) {
      if (!subordinators().count(sent[i].token)) continue;
      std::size_t stop = sent.size();
      for (std::size_t j = i + 1; j < sent.size(); ++j) {
        if (sent[j].pos == Pos::kPunct || subordinators().count(sent[j].token) ||
            std::find(boundaries.begin(), boundaries.end(), j) != boundaries.end()) {
          stop = j;
          break;
        }
      }
      const bool has_verb = std::any_of(
          finite_starts.begin(), finite_starts.end(),
          [&](std::size_t s) { return s > i && s < stop; });
      if (has_verb) dc_positions.push_back(i);
    }
    u.DC += static_cast<int>(dc_positions.size());
    std::vector<std::size_t> edges = {0};
    edges.insert(edges.end(), boundaries.begin(), boundaries.end());
    edges.push_back(sent.size());
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      const bool complex = std::any_of(
          dc_positions.begin(), dc_positions.end(),
          [&](std::size_t p) { return p >= edges[k] && p < edges[k + 1]; });
      u.CT += complex;
    }

    for (std::size_t i = 1; i + 1 < sent.size(); ++i) {
      if (sent[i].pos == Pos::kConj && sent[i - 1].pos != Pos::kPunct &&
          sent[i - 1].pos == sent[i + 1].pos) {
        ++u.CP;
      }
    }
    for (std::size_t i = 0; i < sent.size(); ++i) {
      if (sent[i].pos != Pos::kNoun) continue;
      const bool adj_before = i > 0 && sent[i - 1].pos == Pos::kAdj;
      const bool prep_after = i + 1 < sent.size() && sent[i + 1].pos == Pos::kPrep;
      u.CN += adj_before || prep_after;
    }
  }
  u.DC = std::min(u.DC, u.C);
  return u;
}

UnitCounts unit_counts(const AlignedResponse& response, const LexicalResources& resources) {
  if (!response.syntax || response.syntax->provenance != Provenance::kAnnotated) {
    return heuristic_syntax(response.tokens, resources);
  }
  const SyntaxSpans& s = *response.syntax;
  UnitCounts u;
  u.provenance = Provenance::kAnnotated;
  u.W = static_cast<int>(word_tokens(response.tokens, resources).size());
  u.S = static_cast<int>(s.sentences.size());
  u.VP = static_cast<int>(s.verb_phrases.size());
  u.C = static_cast<int>(s.clauses.size());
  u.T = static_cast<int>(s.t_units.size());
  u.DC = static_cast<int>(s.dependent_clauses.size());
  u.CT = static_cast<int>(s.complex_t_units.size());
  u.CP = static_cast<int>(s.coordinate_phrases.size());
  u.CN = static_cast<int>(s.complex_nominals.size());
  return u;
}

FeatureSet count_and_complexity_features(std::span<const TokenAnnotation> tokens,
                                         const LexicalResources& resources,
                                         const UnitCounts& counts) {
  FeatureSet fs;
  auto pos_total = [&](Pos pos) {
    return static_cast<double>(std::count_if(
        tokens.begin(), tokens.end(), [&](const auto& t) { return t.pos == pos; }));
  };
  fs.add("total_adjectives", pos_total(Pos::kAdj));
  fs.add("total_adverbs", pos_total(Pos::kAdv));
  fs.add("total_nouns", pos_total(Pos::kNoun));
  fs.add("total_verbs", pos_total(Pos::kVerb));
  fs.add("total_pronoun", pos_total(Pos::kPron));
  fs.add("total_conjunctions", pos_total(Pos::kConj));
  fs.add("total_determiners", pos_total(Pos::kDet));

  const auto words = word_tokens(tokens, resources);
  struct Variant {
    const char* suffix;
    const std::unordered_map<std::string, double>* lexicon;
  };
  const Variant variants[] = {{"mAvg", &resources.complexity_avg},
                              {"mMod", &resources.complexity_mode}};
  for (const auto& v : variants) {
    for (bool drop_stop : {true, false}) {
      double total = 0.0;
      int matched = 0;
      for (const TokenAnnotation* t : words) {
        if (drop_stop && is_stop(*t, resources)) continue;
        const auto it = v.lexicon->find(t->token);
        if (it == v.lexicon->end()) continue;
        total += it->second;
        ++matched;
      }
      const std::string infix = drop_stop ? "_no_sw_" : "_";
      if (matched == 0) fs.flag("complexity_unmatched" + infix + v.suffix);
      fs.add("total_text_complexity" + infix + v.suffix, total);
      fs.add("average_word_complexity" + infix + v.suffix,
             matched > 0 ? total / matched : 0.0);
    }
  }

  double syllables = 0.0;
  int content = 0;
  for (const TokenAnnotation* t : words) {
    if (is_stop(*t, resources)) continue;
    syllables += t->syllable_count;
    ++content;
  }
  if (content == 0) fs.flag("all_stopwords");
  fs.add("average_syllables_in_words", content > 0 ? syllables / content : 0.0);

  fs.add("W", counts.W);
  fs.add("VP", counts.VP);
  fs.add("C", counts.C);
  fs.add("T", counts.T);
  fs.add("DC", counts.DC);
  fs.add("CT", counts.CT);
  fs.add("CP", counts.CP);
  fs.add("CN", counts.CN);
  return fs;
}

FeatureSet grammar_features(const AlignedResponse& response,
                            const LexicalResources& resources, std::uint64_t seed,
                            const GrammarConfig& config) {
  FeatureSet fs = lexical_features(response.tokens, resources, seed, config);
  const UnitCounts counts = unit_counts(response, resources);
  fs.append(syntactic_features(counts));
  fs.append(count_and_complexity_features(response.tokens, resources, counts));
  return fs;
}

}  // namespace speechscore
