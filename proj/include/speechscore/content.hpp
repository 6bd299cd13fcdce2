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

// Response-based content features: TF-IDF vectors over transcripts, fitted
// per prompt on the training split.

#ifndef SPEECHSCORE_CONTENT_HPP_
#define SPEECHSCORE_CONTENT_HPP_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "speechscore/common.hpp"

namespace speechscore {

// Lowercase; any non-alphanumeric character separates tokens.
std::vector<std::string> tokenize(std::string_view text);

struct TfidfVocabulary {
  std::vector<std::string> terms;  // sorted
  std::map<std::string, int> document_frequency;
  int n_documents = 0;
  std::map<std::string, double> idf;

  std::string feature_name(const std::string& term) const { return "tfidf:" + term; }
  std::vector<std::string> feature_names() const;

  // term<TAB>df<TAB>idf lines, in term order.
  void write_tsv(const std::filesystem::path& path) const;
  std::string to_tsv() const;
  static TfidfVocabulary read_tsv(const std::filesystem::path& path);
};

// Terms with df < min_df are dropped; beyond max_terms, the highest-df terms
// win (ties lexicographic). idf(t) = ln((1 + N) / (1 + df(t))) + 1.
TfidfVocabulary fit_vocabulary(std::span<const std::string> transcripts,
                               int min_df = 2, int max_terms = 1000);

// Raw term counts times idf, L2-normalized; one value per vocabulary term in
// vocabulary order. An all-OOV transcript yields zeros and the flag
// "tfidf_empty".
FeatureSet vectorize(const TfidfVocabulary& vocabulary, std::string_view transcript);

}  // namespace speechscore

#endif  // SPEECHSCORE_CONTENT_HPP_
