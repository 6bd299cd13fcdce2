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

#include "speechscore/prosody.hpp"

#include <cmath>

#include "speechscore/fluency.hpp"

namespace speechscore {

namespace {

constexpr double kContiguityTolerance = 1e-6;  // seconds
constexpr double kPauseEpsilon = 1e-9;

std::vector<const AlignedPhoneme*> speech_phonemes(const AlignedResponse& r) {
  std::vector<const AlignedPhoneme*> out;
  for (const auto& w : r.words) {
    for (const auto& p : w.phonemes) {
      if (p.klass != PhonemeClass::kSilence) out.push_back(&p);
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& prosody_feature_names() {
  static const std::vector<std::string> names = {
      "StressedSyllPercent", "StressDistanceSyllMean", "StressDistanceSyllSD",
      "StressDistanceMean",  "StressDistanceSD",       "vowelPercentage",
      "consonantPercentage", "vowelDurationSD",        "consonantDurationSD",
      "syllableDurationSD",  "vowelSDNorm",            "consonantSDNorm",
      "syllableSDNorm",      "vowelPVI",               "consonantPVI",
      "syllablePVI",         "vowelPVINorm",           "consonantPVINorm",
      "syllablePVINorm"};
  return names;
}

std::vector<Syllable> syllabify(const AlignedResponse& response,
                                const ProsodyConfig& config) {
  std::vector<Syllable> out;
  std::vector<AlignedPhoneme> pending;  // consonants awaiting a nucleus
  const AlignedPhoneme* prev = nullptr;
  bool silence = false;
  for (const auto& w : response.words) {
    for (const auto& ph : w.phonemes) {
      const AlignedPhoneme* p = &ph;
      if (p->klass == PhonemeClass::kSilence) {
        silence = true;
        continue;
      }
      const bool pause =
          silence || (prev && p->start - prev->end >= kSilenceThreshold - kPauseEpsilon);
      if (pause && !out.empty() && !pending.empty()) {
        out.back().coda.insert(out.back().coda.end(), pending.begin(), pending.end());
        out.back().end = pending.back().end;
        pending.clear();
      }
      silence = false;
      prev = p;
      if (p->klass == PhonemeClass::kConsonant) {
        pending.push_back(*p);
        continue;
      }
      Syllable s;
      s.onset = std::move(pending);
      pending.clear();
      s.nucleus = *p;
      s.stressed = p->stress == Stress::kPrimary ||
                   (config.secondary_counts_as_stressed && p->stress == Stress::kSecondary);
      s.start = s.onset.empty() ? p->start : s.onset.front().start;
      s.end = p->end;
      out.push_back(std::move(s));
    }
  }
  if (out.empty()) {
    throw Error(ErrorKind::kNoNuclei,
                "response " + response.response_id + " has no vowel nuclei");
  }
  if (!pending.empty()) {
    out.back().coda = std::move(pending);
    out.back().end = out.back().coda.back().end;
  }
  return out;
}

FeatureSet stress_features(std::span<const Syllable> syllables) {
  if (syllables.empty()) {
    throw Error(ErrorKind::kPrecondition, "stress features need at least one syllable");
  }
  std::vector<std::size_t> stressed;
  for (std::size_t i = 0; i < syllables.size(); ++i) {
    if (syllables[i].stressed) stressed.push_back(i);
  }
  FeatureSet fs;
  fs.add("StressedSyllPercent",
         100.0 * static_cast<double>(stressed.size()) /
             static_cast<double>(syllables.size()));
  std::vector<double> syll_dist, time_dist;
  for (std::size_t k = 1; k < stressed.size(); ++k) {
    syll_dist.push_back(static_cast<double>(stressed[k] - stressed[k - 1]));
    time_dist.push_back(syllables[stressed[k]].nucleus.start -
                        syllables[stressed[k - 1]].nucleus.start);
  }
  if (stressed.size() < 2) fs.flag("stress_distance_degenerate");
  fs.add("StressDistanceSyllMean", mean(syll_dist));
  fs.add("StressDistanceSyllSD", mean_absolute_deviation(syll_dist));
  fs.add("StressDistanceMean", mean(time_dist));
  fs.add("StressDistanceSD", mean_absolute_deviation(time_dist));
  return fs;
}

IntervalSequence interval_sequence(const AlignedResponse& response,
                                   std::span<const Syllable> syllables) {
  IntervalSequence seq;
  const AlignedPhoneme* prev = nullptr;
  double run = 0.0;
  PhonemeClass run_class = PhonemeClass::kSilence;
  auto flush = [&] {
    if (run > 0.0) {
      (run_class == PhonemeClass::kVowel ? seq.vocalic : seq.consonantal)
          .push_back(run * 1000.0);
    }
    run = 0.0;
  };
  for (const auto& w : response.words) {
    for (const auto& p : w.phonemes) {
      if (p.klass == PhonemeClass::kSilence) {
        flush();
        prev = nullptr;
        continue;
      }
      const bool contiguous =
          prev && p.start - prev->end <= kContiguityTolerance;
      if (!contiguous || p.klass != run_class) {
        flush();
        run_class = p.klass;
      }
      run += p.duration();
      prev = &p;
    }
  }
  flush();
  for (const auto& s : syllables) {
    const double d = (s.end - s.start) * 1000.0;
    if (d > 0.0) seq.syllabic.push_back(d);
  }
  return seq;
}

double total_phonation_ms(const AlignedResponse& response) {
  double total = 0.0;
  for (const AlignedPhoneme* p : speech_phonemes(response)) total += p->duration();
  return total * 1000.0;
}

double raw_pvi(std::span<const double> d) {
  if (d.size() < 2) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < d.size(); ++k) s += std::abs(d[k] - d[k + 1]);
  return s / static_cast<double>(d.size() - 1);
}

double normalized_pvi(std::span<const double> d) {
  if (d.size() < 2) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < d.size(); ++k) {
    s += std::abs(d[k] - d[k + 1]) / ((d[k] + d[k + 1]) / 2.0);
  }
  return 100.0 * s / static_cast<double>(d.size() - 1);
}

FeatureSet interval_features(const IntervalSequence& intervals,
                             double total_phonation_ms) {
  struct Series {
    const char* prefix;
    const std::vector<double>* d;
  };
  const Series series[] = {{"vowel", &intervals.vocalic},
                           {"consonant", &intervals.consonantal},
                           {"syllable", &intervals.syllabic}};
  for (const auto& s : series) {
    for (double v : *s.d) {
      if (!(v > 0.0)) {
        throw Error(ErrorKind::kInvalidArgument,
                    std::string("non-positive ") + s.prefix + " interval duration");
      }
    }
  }
  FeatureSet fs;
  auto sum = [](const std::vector<double>& v) {
    double t = 0.0;
    for (double x : v) t += x;
    return t;
  };
  if (total_phonation_ms > 0.0) {
    fs.add("vowelPercentage", 100.0 * sum(intervals.vocalic) / total_phonation_ms);
    fs.add("consonantPercentage", 100.0 * sum(intervals.consonantal) / total_phonation_ms);
  } else {
    fs.flag("no_phonation");
    fs.add("vowelPercentage", 0.0);
    fs.add("consonantPercentage", 0.0);
  }
  for (const auto& s : series) {
    if (s.d->empty()) fs.flag(std::string(s.prefix) + "_intervals_empty");
    fs.add(std::string(s.prefix) + "DurationSD", population_sd(*s.d));
  }
  for (const auto& s : series) {
    const double m = mean(*s.d);
    fs.add(std::string(s.prefix) + "SDNorm", m > 0.0 ? population_sd(*s.d) / m : 0.0);
  }
  for (const auto& s : series) {
    if (s.d->size() < 2) fs.flag(std::string(s.prefix) + "_pvi_degenerate");
    fs.add(std::string(s.prefix) + "PVI", raw_pvi(*s.d));
  }
  for (const auto& s : series) {
    fs.add(std::string(s.prefix) + "PVINorm", normalized_pvi(*s.d));
  }
  return fs;
}

FeatureSet prosody_features(const AlignedResponse& response,
                            const ProsodyConfig& config) {
  const auto syllables = syllabify(response, config);
  FeatureSet fs = stress_features(syllables);
  fs.append(interval_features(interval_sequence(response, syllables),
                              total_phonation_ms(response)));
  return fs;
}

}  // namespace speechscore
