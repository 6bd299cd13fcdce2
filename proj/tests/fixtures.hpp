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


// Small builders shared by the unit and acceptance tests.

#ifndef SPEECHSCORE_TESTS_FIXTURES_HPP_
#define SPEECHSCORE_TESTS_FIXTURES_HPP_

#include <cctype>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "speechscore/corpus.hpp"

namespace fixtures {

using speechscore::AlignedPhoneme;
using speechscore::AlignedResponse;
using speechscore::AlignedWord;
using speechscore::AudioBuffer;
using speechscore::PhonemeClass;
using speechscore::Pos;
using speechscore::Stress;
using speechscore::TokenAnnotation;

// ARPAbet label: vowels start with a vowel letter and carry a stress digit;
// "sil" and "sp" are silences.
inline AlignedPhoneme phone(const std::string& label, double start, double end) {
  AlignedPhoneme p;
  p.label = label;
  p.start = start;
  p.end = end;
  if (label == "sil" || label == "sp") {
    p.klass = PhonemeClass::kSilence;
  } else if (std::string("AEIOU").find(label[0]) != std::string::npos) {
    p.klass = PhonemeClass::kVowel;
    const char d = label.back();
    if (d == '1') p.stress = Stress::kPrimary;
    if (d == '2') p.stress = Stress::kSecondary;
  } else {
    p.klass = PhonemeClass::kConsonant;
  }
  return p;
}

// Phonemes of equal length spanning [start, end].
inline AlignedWord word(const std::string& text, double start, double end,
                        const std::vector<std::string>& labels = {}) {
  AlignedWord w;
  w.text = text;
  w.start = start;
  w.end = end;
  const double step = labels.empty() ? 0.0 : (end - start) / labels.size();
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const double b = start + step * k;
    w.phonemes.push_back(phone(labels[k], b, k + 1 == labels.size() ? end : b + step));
  }
  return w;
}

inline AlignedResponse response(std::vector<AlignedWord> words, const std::string& id = "r1",
                                const std::string& prompt = "P1") {
  AlignedResponse r;
  r.response_id = id;
  r.prompt_id = prompt;
  std::string transcript;
  for (const auto& w : words) {
    TokenAnnotation t;
    t.token = w.text;
    t.pos = Pos::kNoun;
    t.syllable_count = 1;
    r.tokens.push_back(t);
    transcript += (transcript.empty() ? "" : " ") + w.text;
  }
  r.words = std::move(words);
  r.transcript = transcript;
  return r;
}

// Words from (text, start, end) triples, each with a single vowel phoneme.
inline AlignedResponse timeline(
    const std::vector<std::tuple<std::string, double, double>>& spans) {
  std::vector<AlignedWord> words;
  for (const auto& [t, s, e] : spans) words.push_back(word(t, s, e, {"AH1"}));
  return response(std::move(words));
}

// Whitespace tokens paired with coarse tags ("NOUN", "VERB", ...).
inline std::vector<TokenAnnotation> tokens(const std::string& text,
                                           const std::vector<std::string>& tags) {
  std::vector<TokenAnnotation> out;
  std::istringstream in(text);
  std::string tok;
  std::size_t i = 0;
  while (in >> tok) {
    TokenAnnotation t;
    t.token = tok;
    t.pos = i < tags.size() ? speechscore::parse_pos(tags[i]) : Pos::kOther;
    t.syllable_count = 1;
    out.push_back(t);
    ++i;
  }
  return out;
}

inline AudioBuffer sine(double freq, double seconds, double rate = 16000.0,
                        double amplitude = 0.5) {
  AudioBuffer a;
  a.sample_rate = rate;
  const auto n = static_cast<std::size_t>(seconds * rate);
  a.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.samples[i] = amplitude * std::sin(2.0 * std::numbers::pi * freq * i / rate);
  }
  return a;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("speechscore_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures

#endif  // SPEECHSCORE_TESTS_FIXTURES_HPP_
