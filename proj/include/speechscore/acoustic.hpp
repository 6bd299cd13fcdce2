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

// Acoustic features from raw audio: frame-based pitch, energy, zero
// crossings, spectral centroid, jitter and shimmer.

#ifndef SPEECHSCORE_ACOUSTIC_HPP_
#define SPEECHSCORE_ACOUSTIC_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "speechscore/common.hpp"
#include "speechscore/corpus.hpp"

namespace speechscore {

// 16-bit PCM mono only; samples scaled by 1/32768.
AudioBuffer read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, const AudioBuffer& audio);

struct PitchConfig {
  double fmin = 75.0;     // Hz
  double fmax = 500.0;    // Hz
  double frame = 0.040;   // s
  double hop = 0.010;     // s
  double voicing_threshold = 0.5;
  double silence_rms = 1e-4;
};

struct PeriodTrack {
  std::vector<double> periods;     // seconds, voiced frames only
  std::vector<double> amplitudes;  // frame peak |sample|
};

// Normalized cross-correlation over the lag band [1/fmax, 1/fmin] with
// parabolic refinement of the chosen peak.
PeriodTrack pitch_track(const AudioBuffer& audio, const PitchConfig& config = {});

double zero_crossing_rate(std::span<const double> samples);

// mean |x_i - x_{i+1}| / mean(x).
double local_perturbation(std::span<const double> xs);
// mean over interior points of |x_i - mean(x_{i-h..i+h})| / mean(x), with
// window = 2h + 1 (3 for rap/apq3, 5 for ppq5/apq5).
double perturbation_quotient(std::span<const double> xs, int window);

FeatureSet acoustic_features(const AudioBuffer& audio, const PeriodTrack& track,
                             const PitchConfig& config = {});

const std::vector<std::string>& acoustic_feature_names();

}  // namespace speechscore

#endif  // SPEECHSCORE_ACOUSTIC_HPP_
