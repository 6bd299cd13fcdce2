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

// Grammar and vocabulary: lexical diversity/sophistication, syntactic
// complexity ratios, POS counts and lexicon-based text complexity.

#ifndef SPEECHSCORE_GRAMMAR_HPP_
#define SPEECHSCORE_GRAMMAR_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "speechscore/common.hpp"
#include "speechscore/corpus.hpp"

namespace speechscore {

struct GrammarConfig {
  int sophistication_rank = 2000;  // rank > K is sophisticated
  int ndw_window = 50;
  int ndw_samples = 10;
  // false: ld = lexical tokens / word tokens (density).
  // true:  ld = lexical types / lexical tokens (diversity).
  bool ld_as_type_ratio = false;
};

struct LexicalProfile {
  int word_tokens = 0, word_types = 0;
  int lexical_tokens = 0, lexical_types = 0;
  int sophisticated_lexical_tokens = 0, sophisticated_lexical_types = 0;
  int sophisticated_word_types = 0;
  int verb_tokens = 0, verb_types = 0, sophisticated_verb_types = 0;
};

struct UnitCounts {
  int W = 0, S = 0, VP = 0, C = 0, T = 0, DC = 0, CT = 0, CP = 0, CN = 0;
  Provenance provenance = Provenance::kHeuristic;
};

// Word tokens: non-punctuation, non-filler tokens containing a letter.
std::vector<const TokenAnnotation*> word_tokens(std::span<const TokenAnnotation> tokens,
                                                const LexicalResources& resources);

LexicalProfile lexical_profile(std::span<const TokenAnnotation> tokens,
                               const LexicalResources& resources,
                               const GrammarConfig& config = {});

// ld, ls1, ls2, vs1, vs2, ndw, ndwz, ndwerz, ndwesz, ttr. The seed drives the
// random-sample NDW variants.
FeatureSet lexical_features(std::span<const TokenAnnotation> tokens,
                            const LexicalResources& resources, std::uint64_t seed,
                            const GrammarConfig& config = {});

// MLS, MLT, MLC, C/T, VP/T, DC/C, DC/T, T/S, CT/T, CP/T, CP/C, CN/T, CN/C.
FeatureSet syntactic_features(const UnitCounts& counts);

// Rule-based unit counts from POS tags; an approximation used only when a
// response carries no annotated syntax.
UnitCounts heuristic_syntax(std::span<const TokenAnnotation> tokens,
                            const LexicalResources& resources);

// Annotated spans win over the heuristic.
UnitCounts unit_counts(const AlignedResponse& response, const LexicalResources& resources);

// POS totals, eight lexicon complexity variants, average_syllables_in_words
// and the unit totals W, VP, C, T, DC, CT, CP, CN.
FeatureSet count_and_complexity_features(std::span<const TokenAnnotation> tokens,
                                         const LexicalResources& resources,
                                         const UnitCounts& counts);

FeatureSet grammar_features(const AlignedResponse& response,
                            const LexicalResources& resources, std::uint64_t seed,
                            const GrammarConfig& config = {});

const std::vector<std::string>& grammar_feature_names();

}  // namespace speechscore

#endif  // SPEECHSCORE_GRAMMAR_HPP_
