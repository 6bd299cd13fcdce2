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

// Corpus-wide feature extraction into a group-tagged FeatureMatrix.

#ifndef SPEECHSCORE_EXTRACT_HPP_
#define SPEECHSCORE_EXTRACT_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "speechscore/acoustic.hpp"
#include "speechscore/content.hpp"
#include "speechscore/corpus.hpp"
#include "speechscore/feature_matrix.hpp"
#include "speechscore/grammar.hpp"
#include "speechscore/prosody.hpp"

namespace speechscore {

// CF content, FF fluency, SPF suprasegmental pronunciation, GVF grammar and
// vocabulary, AF acoustic.
enum class FeatureGroup { kCF, kFF, kSPF, kGVF, kAF };

std::string_view group_name(FeatureGroup group);
// Throws kInvalidArgument naming the group on an unknown tag.
FeatureGroup parse_group(std::string_view name);
const std::vector<FeatureGroup>& all_groups();
// Group tag of a feature column name.
FeatureGroup group_of_feature(const std::string& name);

struct ExtractConfig {
  std::vector<FeatureGroup> groups = all_groups();
  ProsodyConfig prosody;
  GrammarConfig grammar;
  PitchConfig pitch;
  int tfidf_min_df = 2;
  int tfidf_max_terms = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ExtractResult {
  FeatureMatrix matrix;
  std::map<std::string, TfidfVocabulary> vocabularies;  // per prompt
  std::vector<std::vector<std::string>> row_flags;      // parallel to rows
  std::vector<std::pair<std::string, std::string>> failures;  // id, reason
};

// TF-IDF vocabularies are fitted per prompt on the training split only (on
// every response of the prompt when `splits` is null). Responses whose
// features cannot be computed are reported in `failures` and left out.
// Requesting AF for a response with no audio is an error.
ExtractResult extract_features(const std::vector<AlignedResponse>& corpus,
                               const LexicalResources& resources,
                               const SplitAssignment* splits, const ExtractConfig& config);

// Per-response features of the non-content groups, in group order.
FeatureSet response_features(const AlignedResponse& response,
                             const LexicalResources& resources,
                             const ExtractConfig& config);

}  // namespace speechscore

#endif  // SPEECHSCORE_EXTRACT_HPP_
