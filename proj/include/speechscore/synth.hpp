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

// Synthetic graded corpus: aligned word/phoneme timelines whose grades are a
// quantized noisy function of controlled latent traits.

#ifndef SPEECHSCORE_SYNTH_HPP_
#define SPEECHSCORE_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "speechscore/corpus.hpp"

namespace speechscore {

struct LexiconEntry {
  const char* word;
  Pos pos;
  int rank;
  double complexity_avg;
  double complexity_mode;
};

const std::vector<LexiconEntry>& bundled_lexicon();
// Frequency ranks and complexity scores from the bundled lexicon; function
// words are the stopwords.
LexicalResources bundled_resources();

// Which latent traits drive the score.
//   mixed:         pause frequency + vocabulary breadth + 1.5 long-pause control
//   speaking_rate: pause frequency only
//   fluency:       pause frequency + long-pause control + filler rate
//   length:        response length only
enum class ScoreFunction { kMixed, kSpeakingRate, kFluency, kLength };
std::string_view score_function_name(ScoreFunction f);
ScoreFunction parse_score_function(std::string_view name);

struct SynthSpec {
  int n = 500;
  int grade_levels = 3;
  std::uint64_t seed = 0;
  ScoreFunction score_function = ScoreFunction::kMixed;
  std::vector<double> grade_proportions;  // empty means uniform
  double score_noise = 0.2;
  int n_prompts = 1;
  int mean_words = 150;
  bool audio = true;
  double audio_seconds = 1.0;
  double audio_rate = 8000.0;
  bool second_rater = false;
  double rater_disagreement = 0.2;
};

struct SynthLatents {
  double rate = 0.0;           // higher: fewer pauses
  double pause_control = 0.0;  // higher: fewer long pauses
  double filler = 0.0;         // higher: fewer filled pauses (kept out of transcripts)
  double vocabulary = 0.0;     // higher: broader word pool
  double length = 0.0;         // higher: more words
  double articulation = 0.0;   // independent of every score function
  double score = 0.0;
};

struct SynthCorpus {
  std::vector<AlignedResponse> responses;
  std::vector<SynthLatents> latents;
};

// Throws kInvalidArgument when n < 50, grade_levels lies outside [2, 5] or
// the scores cannot be split into grade_levels bands.
SynthCorpus synth_corpus(const SynthSpec& spec);

// Writes responses/<id>.json, audio/<id>.wav, manifest.txt and resources/.
void write_synth_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir);

}  // namespace speechscore

#endif  // SPEECHSCORE_SYNTH_HPP_
