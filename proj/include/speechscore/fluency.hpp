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

// Breakdown and speed fluency measures over the word timeline.

#ifndef SPEECHSCORE_FLUENCY_HPP_
#define SPEECHSCORE_FLUENCY_HPP_

#include <string>
#include <vector>

#include "speechscore/common.hpp"
#include "speechscore/corpus.hpp"

namespace speechscore {

// Inter-word gaps longer than this are silences; longer than the second are
// long silences. Both comparisons are strict.
inline constexpr double kSilenceThreshold = 0.145;
inline constexpr double kLongSilenceThreshold = 0.495;

struct Gap {
  double start = 0.0;
  double duration = 0.0;
};

struct SilenceProfile {
  std::vector<Gap> gaps;
  std::vector<Gap> silences;
  std::vector<Gap> long_silences;
  double response_time = 0.0;
  double articulation_time = 0.0;
};

// Leading and trailing silence never counts: only gaps between consecutive
// words. Throws kEmptyResponse for a response without words.
SilenceProfile silence_profile(const AlignedResponse& response);

// The ten fluency features, in this order:
//   filled_pause_rate, general_silence, mean_silence,
//   silence_absolute_deviation, SilenceRate1, SilenceRate2,
//   long_silence_deviation, speaking_rate, articulation_rate, longpfreq
// Filled pauses are excluded from the word counts behind the rates.
FeatureSet fluency_features(const AlignedResponse& response,
                            const LexicalResources& resources);

const std::vector<std::string>& fluency_feature_names();

}  // namespace speechscore

#endif  // SPEECHSCORE_FLUENCY_HPP_
