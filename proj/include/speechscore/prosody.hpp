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

// Suprasegmental pronunciation: stress placement and rhythm (interval
// durations, pairwise variability).

#ifndef SPEECHSCORE_PROSODY_HPP_
#define SPEECHSCORE_PROSODY_HPP_

#include <span>
#include <string>
#include <vector>

#include "speechscore/common.hpp"
#include "speechscore/corpus.hpp"

namespace speechscore {

struct Syllable {
  std::vector<AlignedPhoneme> onset;
  AlignedPhoneme nucleus;
  std::vector<AlignedPhoneme> coda;
  double start = 0.0;
  double end = 0.0;
  bool stressed = false;
};

struct ProsodyConfig {
  // Primary stress always counts; secondary only when enabled.
  bool secondary_counts_as_stressed = false;
};

// One syllable per vowel over the whole response. Consonants between two
// nuclei all join the later syllable's onset unless a pause separates them
// (a silence phoneme or a gap of at least kSilenceThreshold); consonants
// before a pause close the previous syllable as coda. Consonants after the
// last nucleus form its coda. Throws kNoNuclei when there is no vowel.
std::vector<Syllable> syllabify(const AlignedResponse& response,
                                const ProsodyConfig& config = {});

// StressedSyllPercent, StressDistanceSyllMean, StressDistanceSyllSD,
// StressDistanceMean, StressDistanceSD. The SD variants are mean absolute
// deviations.
FeatureSet stress_features(std::span<const Syllable> syllables);

// Durations in milliseconds.
struct IntervalSequence {
  std::vector<double> vocalic;
  std::vector<double> consonantal;
  std::vector<double> syllabic;
};

// Vocalic/consonantal intervals are maximal runs of same-class phonemes; a
// silence phoneme or a pause between words ends a run.
IntervalSequence interval_sequence(const AlignedResponse& response,
                                   std::span<const Syllable> syllables);

// Total vowel + consonant duration in ms (silence excluded).
double total_phonation_ms(const AlignedResponse& response);

double raw_pvi(std::span<const double> durations);
double normalized_pvi(std::span<const double> durations);

// vowelPercentage, consonantPercentage, then for each of vowel, consonant,
// syllable: DurationSD, SDNorm, PVI, PVINorm. Throws on a non-positive
// duration.
FeatureSet interval_features(const IntervalSequence& intervals,
                             double total_phonation_ms);

// Convenience: syllabify + stress + intervals for one response.
FeatureSet prosody_features(const AlignedResponse& response,
                            const ProsodyConfig& config = {});

const std::vector<std::string>& prosody_feature_names();

}  // namespace speechscore

#endif  // SPEECHSCORE_PROSODY_HPP_
