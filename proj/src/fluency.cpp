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

#include "speechscore/fluency.hpp"

namespace speechscore {

namespace {

// Timestamps are decimal seconds; 1.145 - 1.0 is not exactly 0.145 in binary.
constexpr double kTimestampEpsilon = 1e-9;

std::vector<double> durations(const std::vector<Gap>& gaps) {
  std::vector<double> out;
  out.reserve(gaps.size());
  for (const auto& g : gaps) out.push_back(g.duration);
  return out;
}

}  // namespace

const std::vector<std::string>& fluency_feature_names() {
  static const std::vector<std::string> names = {
      "filled_pause_rate", "general_silence",   "mean_silence",
      "silence_absolute_deviation", "SilenceRate1", "SilenceRate2",
      "long_silence_deviation", "speaking_rate", "articulation_rate",
      "longpfreq"};
  return names;
}

SilenceProfile silence_profile(const AlignedResponse& response) {
  if (response.words.empty()) {
    throw Error(ErrorKind::kEmptyResponse,
                "response " + response.response_id + " has no words");
  }
  SilenceProfile p;
  const auto& words = response.words;
  for (std::size_t i = 0; i < words.size(); ++i) {
    p.articulation_time += words[i].duration();
    if (i == 0) continue;
    const double gap = words[i].start - words[i - 1].end;
    if (gap <= 0.0) continue;
    Gap g{words[i - 1].end, gap};
    p.gaps.push_back(g);
    if (gap > kSilenceThreshold + kTimestampEpsilon) p.silences.push_back(g);
    if (gap > kLongSilenceThreshold + kTimestampEpsilon) p.long_silences.push_back(g);
  }
  p.response_time = words.back().end - words.front().start;
  return p;
}

FeatureSet fluency_features(const AlignedResponse& response,
                            const LexicalResources& resources) {
  const SilenceProfile profile = silence_profile(response);
  int fillers = 0;
  for (const auto& w : response.words) fillers += resources.is_filled_pause(w.text);
  const int content_words = static_cast<int>(response.words.size()) - fillers;

  FeatureSet fs;
  const double rt = profile.response_time;
  const double at = profile.articulation_time;
  fs.add("filled_pause_rate", rt > 0.0 ? fillers / rt : 0.0);

  const auto silences = durations(profile.silences);
  const auto long_silences = durations(profile.long_silences);
  const bool degenerate = content_words < 2;
  if (degenerate) fs.flag("fluency_degenerate");
  if (long_silences.empty()) fs.flag("no_long_silences");

  auto silence_stat = [&](double v) { return degenerate ? 0.0 : v; };
  const double n_sil = static_cast<double>(silences.size());
  fs.add("general_silence", silence_stat(n_sil));
  fs.add("mean_silence", silence_stat(mean(silences)));
  fs.add("silence_absolute_deviation", silence_stat(mean_absolute_deviation(silences)));
  fs.add("SilenceRate1", silence_stat(content_words > 0 ? n_sil / content_words : 0.0));
  fs.add("SilenceRate2", silence_stat(rt > 0.0 ? n_sil / rt : 0.0));
  fs.add("long_silence_deviation", silence_stat(mean_absolute_deviation(long_silences)));
  fs.add("speaking_rate", rt > 0.0 ? content_words / rt : 0.0);
  fs.add("articulation_rate", at > 0.0 ? content_words / at : 0.0);
  fs.add("longpfreq",
         silence_stat(content_words > 0
                          ? static_cast<double>(long_silences.size()) / content_words
                          : 0.0));
  return fs;
}

}  // namespace speechscore
