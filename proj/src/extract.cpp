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

#include "speechscore/extract.hpp"

#include <algorithm>
#include <set>

#include "speechscore/fluency.hpp"

namespace speechscore {

namespace {

bool wants(const ExtractConfig& c, FeatureGroup g) {
  return std::find(c.groups.begin(), c.groups.end(), g) != c.groups.end();
}

const std::set<std::string>& names_in(FeatureGroup g) {
  static const std::map<FeatureGroup, std::set<std::string>> table = [] {
    std::map<FeatureGroup, std::set<std::string>> t;
    auto fill = [&](FeatureGroup g, const std::vector<std::string>& v) {
      t[g] = std::set<std::string>(v.begin(), v.end());
    };
    fill(FeatureGroup::kFF, fluency_feature_names());
    fill(FeatureGroup::kSPF, prosody_feature_names());
    fill(FeatureGroup::kGVF, grammar_feature_names());
    fill(FeatureGroup::kAF, acoustic_feature_names());
    t[FeatureGroup::kCF];
    return t;
  }();
  return table.at(g);
}

}  // namespace

std::string_view group_name(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::kCF: return "CF";
    case FeatureGroup::kFF: return "FF";
    case FeatureGroup::kSPF: return "SPF";
    case FeatureGroup::kGVF: return "GVF";
    case FeatureGroup::kAF: return "AF";
  }
  return "?";
}

FeatureGroup parse_group(std::string_view name) {
  for (FeatureGroup g : all_groups()) {
    if (group_name(g) == name) return g;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown feature group: " + std::string(name));
}

const std::vector<FeatureGroup>& all_groups() {
  static const std::vector<FeatureGroup> g = {FeatureGroup::kCF, FeatureGroup::kFF,
                                              FeatureGroup::kSPF, FeatureGroup::kGVF,
                                              FeatureGroup::kAF};
  return g;
}

FeatureGroup group_of_feature(const std::string& name) {
  if (name.rfind("tfidf:", 0) == 0) return FeatureGroup::kCF;
  for (FeatureGroup g : {FeatureGroup::kFF, FeatureGroup::kSPF, FeatureGroup::kGVF,
                         FeatureGroup::kAF}) {
    if (names_in(g).count(name)) return g;
  }
  throw Error(ErrorKind::kInvalidArgument, "feature '" + name + "' belongs to no group");
}

FeatureSet response_features(const AlignedResponse& r, const LexicalResources& resources,
                             const ExtractConfig& config) {
  FeatureSet fs;
  if (wants(config, FeatureGroup::kFF)) fs.append(fluency_features(r, resources));
  if (wants(config, FeatureGroup::kSPF)) fs.append(prosody_features(r, config.prosody));
  if (wants(config, FeatureGroup::kGVF)) {
    fs.append(grammar_features(r, resources, derive_seed(config.seed, hash_string(r.response_id)),
                               config.grammar));
  }
  if (wants(config, FeatureGroup::kAF)) {
    std::shared_ptr<const AudioBuffer> audio = r.audio;
    if (!audio) {
      if (!r.audio_path) {
        throw Error(ErrorKind::kIo, "acoustic features requested but response " +
                                        r.response_id + " has no audio");
      }
      audio = std::make_shared<AudioBuffer>(read_wav(*r.audio_path));
    }
    fs.append(acoustic_features(*audio, pitch_track(*audio, config.pitch), config.pitch));
  }
  return fs;
}

ExtractResult extract_features(const std::vector<AlignedResponse>& corpus,
                               const LexicalResources& resources,
                               const SplitAssignment* splits, const ExtractConfig& config) {
  ExtractResult out;
  const bool content = wants(config, FeatureGroup::kCF);

  // Per-prompt vocabularies from the training split.
  std::map<std::string, std::vector<std::string>> train_docs;
  for (const auto& r : corpus) {
    const bool train = !splits || splits->split_of(r.response_id) == Split::kTrain;
    if (train) train_docs[r.prompt_id].push_back(r.transcript);
  }
  std::set<std::string> cf_columns;
  if (content) {
    for (const auto& [prompt, docs] : train_docs) {
      auto v = fit_vocabulary(docs, config.tfidf_min_df, config.tfidf_max_terms);
      for (const auto& n : v.feature_names()) cf_columns.insert(n);
      out.vocabularies.emplace(prompt, std::move(v));
    }
  }

  std::vector<FeatureSet> sets(corpus.size());
  std::vector<std::string> errors(corpus.size());
  std::vector<char> fatal(corpus.size(), 0);
  parallel_for(corpus.size(), config.threads, [&](std::size_t i) {
    try {
      sets[i] = response_features(corpus[i], resources, config);
    } catch (const Error& e) {
      errors[i] = e.what();
      fatal[i] = e.kind() == ErrorKind::kIo;
    }
  });
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (fatal[i]) throw Error(ErrorKind::kIo, errors[i]);
  }

  std::vector<std::string> names, groups;
  for (FeatureGroup g : all_groups()) {
    if (!wants(config, g)) continue;
    std::vector<std::string> cols;
    switch (g) {
      case FeatureGroup::kCF: cols.assign(cf_columns.begin(), cf_columns.end()); break;
      case FeatureGroup::kFF: cols = fluency_feature_names(); break;
      case FeatureGroup::kSPF: cols = prosody_feature_names(); break;
      case FeatureGroup::kGVF: cols = grammar_feature_names(); break;
      case FeatureGroup::kAF: cols = acoustic_feature_names(); break;
    }
    for (auto& c : cols) {
      names.push_back(std::move(c));
      groups.emplace_back(group_name(g));
    }
  }
  out.matrix = FeatureMatrix(names, groups);
  std::map<std::string, std::size_t> col;
  for (std::size_t c = 0; c < names.size(); ++c) col[names[c]] = c;

  std::vector<double> row(names.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const AlignedResponse& r = corpus[i];
    if (!errors[i].empty()) {
      out.failures.emplace_back(r.response_id, errors[i]);
      continue;
    }
    std::fill(row.begin(), row.end(), 0.0);
    std::vector<std::string> flags = sets[i].flags;
    for (const auto& [name, v] : sets[i].values) row[col.at(name)] = v;
    if (content) {
      const auto it = out.vocabularies.find(r.prompt_id);
      if (it == out.vocabularies.end()) {
        flags.push_back("tfidf_no_vocabulary");
      } else {
        const FeatureSet cf = vectorize(it->second, r.transcript);
        for (const auto& [name, v] : cf.values) row[col.at(name)] = v;
        flags.insert(flags.end(), cf.flags.begin(), cf.flags.end());
      }
    }
    RowMeta meta;
    meta.response_id = r.response_id;
    meta.prompt_id = r.prompt_id;
    if (splits) {
      if (const auto s = splits->split_of(r.response_id)) meta.split = std::string(split_name(*s));
    }
    meta.grade = r.grade ? r.grade->ordinal() : -1;
    meta.second_grade = r.second_grade ? r.second_grade->ordinal() : -1;
    out.matrix.add_row(std::move(meta), row);
    out.row_flags.push_back(std::move(flags));
  }
  return out;
}

}  // namespace speechscore
