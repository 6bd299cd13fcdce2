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

#include "speechscore/content.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "speechscore/feature_matrix.hpp"

namespace speechscore {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      cur += static_cast<char>(std::tolower(u));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<std::string> TfidfVocabulary::feature_names() const {
  std::vector<std::string> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(feature_name(t));
  return out;
}

std::string TfidfVocabulary::to_tsv() const {
  std::ostringstream out;
  for (const auto& t : terms) {
    out << t << '\t' << document_frequency.at(t) << '\t' << format_double(idf.at(t))
        << '\n';
  }
  return out.str();
}

void TfidfVocabulary::write_tsv(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << "# n_documents\t" << n_documents << '\n' << to_tsv();
}

TfidfVocabulary TfidfVocabulary::read_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  TfidfVocabulary v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string term;
    std::getline(ss, term, '\t');
    if (term == "# n_documents") {
      ss >> v.n_documents;
      continue;
    }
    int df = 0;
    double idf = 0.0;
    if (!(ss >> df >> idf)) throw Error(ErrorKind::kParse, "bad vocabulary line: " + line);
    v.terms.push_back(term);
    v.document_frequency[term] = df;
    v.idf[term] = idf;
  }
  std::sort(v.terms.begin(), v.terms.end());
  return v;
}

TfidfVocabulary fit_vocabulary(std::span<const std::string> transcripts, int min_df,
                               int max_terms) {
  std::map<std::string, int> df;
  bool any_tokens = false;
  for (const auto& doc : transcripts) {
    const auto toks = tokenize(doc);
    any_tokens = any_tokens || !toks.empty();
    for (const auto& t : std::set<std::string>(toks.begin(), toks.end())) ++df[t];
  }
  if (!any_tokens) {
    throw Error(ErrorKind::kPrecondition, "cannot fit vocabulary: all transcripts empty");
  }
  std::vector<std::pair<std::string, int>> kept;
  for (const auto& [t, n] : df) {
    if (n >= min_df) kept.emplace_back(t, n);
  }
  if (max_terms >= 0 && kept.size() > static_cast<std::size_t>(max_terms)) {
    std::stable_sort(kept.begin(), kept.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    kept.resize(static_cast<std::size_t>(max_terms));
  }
  TfidfVocabulary v;
  v.n_documents = static_cast<int>(transcripts.size());
  for (const auto& [t, n] : kept) {
    v.terms.push_back(t);
    v.document_frequency[t] = n;
    v.idf[t] = std::log((1.0 + v.n_documents) / (1.0 + n)) + 1.0;
  }
  std::sort(v.terms.begin(), v.terms.end());
  return v;
}

FeatureSet vectorize(const TfidfVocabulary& vocabulary, std::string_view transcript) {
  std::map<std::string, int> tf;
  for (const auto& t : tokenize(transcript)) {
    if (vocabulary.idf.count(t)) ++tf[t];
  }
  std::vector<double> values(vocabulary.terms.size(), 0.0);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < vocabulary.terms.size(); ++i) {
    const auto it = tf.find(vocabulary.terms[i]);
    if (it == tf.end()) continue;
    values[i] = it->second * vocabulary.idf.at(vocabulary.terms[i]);
    norm2 += values[i] * values[i];
  }
  FeatureSet fs;
  if (norm2 > 0.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : values) x *= inv;
  } else {
    fs.flag("tfidf_empty");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    fs.add(vocabulary.feature_name(vocabulary.terms[i]), values[i]);
  }
  return fs;
}

}  // namespace speechscore
