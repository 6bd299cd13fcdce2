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

// Data model for time-aligned spoken responses and the lexical resources the
// feature extractors consume. Alignment files are produced upstream by an ASR
// + forced-alignment stage; this module validates and loads them.

#ifndef SPEECHSCORE_CORPUS_HPP_
#define SPEECHSCORE_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"

namespace speechscore {

enum class PhonemeClass { kVowel, kConsonant, kSilence };
// ARPAbet alignments carry only these three levels.
enum class Stress { kNone = 0, kPrimary = 1, kSecondary = 2 };

struct AlignedPhoneme {
  std::string label;
  PhonemeClass klass = PhonemeClass::kConsonant;
  Stress stress = Stress::kNone;
  double start = 0.0;
  double end = 0.0;

  double duration() const { return end - start; }
};

struct AlignedWord {
  std::string text;
  double start = 0.0;
  double end = 0.0;
  std::vector<AlignedPhoneme> phonemes;

  double duration() const { return end - start; }
};

enum class Pos {
  kNoun, kVerb, kAux, kAdj, kAdv, kPron, kDet, kConj, kPrep, kNum, kIntj,
  kPunct, kOther
};

std::string_view pos_name(Pos pos);
// Accepts the coarse tag names ("NOUN", "VERB", ...); unknown tags map to
// kOther.
Pos parse_pos(std::string_view tag);

struct TokenAnnotation {
  std::string token;
  Pos pos = Pos::kOther;
  bool is_stopword = false;
  int syllable_count = 0;
};

using TokenRange = std::pair<int, int>;  // [begin, end) token indices

enum class Provenance { kAnnotated, kHeuristic };

struct SyntaxSpans {
  std::vector<TokenRange> sentences, t_units, clauses, dependent_clauses,
      complex_t_units, coordinate_phrases, complex_nominals, verb_phrases;
  Provenance provenance = Provenance::kHeuristic;
};

enum class GradeLabel { kA2 = 0, kLB1 = 1, kHB1 = 2, kLB2 = 3, kHB2 = 4 };
inline constexpr int kMaxGradeLevels = 5;

struct Grade {
  GradeLabel label = GradeLabel::kA2;
  int ordinal() const { return static_cast<int>(label); }
  std::string_view name() const;

  static Grade from_ordinal(int ordinal);
  // Throws kParse on anything outside {A2, LB1, HB1, LB2, HB2}.
  static Grade parse(std::string_view label);
};

// Mono samples in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  double sample_rate = 16000.0;

  double duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

struct AlignedResponse {
  std::string response_id;
  std::string prompt_id;
  std::vector<AlignedWord> words;
  // Parallel to words, plus optional PUNCT tokens that carry no timing.
  std::vector<TokenAnnotation> tokens;
  std::optional<SyntaxSpans> syntax;  // present only when annotated
  std::string transcript;
  std::optional<std::filesystem::path> audio_path;
  // In-memory audio, used by the synthetic generator instead of a file.
  std::shared_ptr<const AudioBuffer> audio;
  std::optional<Grade> grade;
  std::optional<Grade> second_grade;  // second rater, when available

  double total_duration() const;
};

// Returns an empty string when valid, otherwise the first violated invariant.
std::string validate_response(const AlignedResponse& response);

AlignedResponse parse_response(const nlohmann::json& doc,
                               const std::filesystem::path& base_dir = {});
nlohmann::json response_to_json(const AlignedResponse& response);

struct LoadReport {
  std::vector<AlignedResponse> responses;
  std::vector<std::pair<std::string, std::string>> rejects;  // path, reason
  std::vector<std::string> warnings;
};

// `path` is a manifest (one alignment path per line, relative to the
// manifest's directory) or a directory of *.json files. Missing files are
// fatal; invariant violations reject the single response. Responses come
// back sorted by (prompt_id, response_id).
LoadReport load_corpus(const std::filesystem::path& path, int threads = 1);

struct LexicalResources {
  std::unordered_map<std::string, int> frequency_rank;
  std::unordered_map<std::string, double> complexity_avg;
  std::unordered_map<std::string, double> complexity_mode;
  std::unordered_set<std::string> stopwords;
  std::unordered_set<std::string> filled_pauses;

  bool is_filled_pause(const std::string& w) const {
    return filled_pauses.count(w) > 0;
  }
};

std::unordered_set<std::string> default_filled_pauses();

// Reads frequency.tsv, complexity.tsv, stopwords.txt and filled_pauses.txt
// from `dir`. A missing filled_pauses.txt falls back to the defaults.
LexicalResources load_resources(const std::filesystem::path& dir);
void write_resources(const LexicalResources& resources,
                     const std::filesystem::path& dir);

enum class Split { kTrain, kValid, kTest };
std::string_view split_name(Split split);

struct SplitAssignment {
  std::set<std::string> train, valid, test;
  std::array<double, 3> ratios{0.70, 0.10, 0.20};
  std::uint64_t seed = 0;

  std::optional<Split> split_of(const std::string& id) const;
};

// Largest-remainder allocation per grade followed by seeded shuffling.
SplitAssignment stratified_split(const std::vector<AlignedResponse>& corpus,
                                 std::array<double, 3> ratios,
                                 std::uint64_t seed);

}  // namespace speechscore

#endif  // SPEECHSCORE_CORPUS_HPP_
