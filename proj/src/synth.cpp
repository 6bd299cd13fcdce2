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

#include "speechscore/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "speechscore/acoustic.hpp"
#include "speechscore/common.hpp"

namespace speechscore {

namespace {

namespace fs = std::filesystem;

bool is_function_pos(Pos p) {
  return p == Pos::kDet || p == Pos::kPron || p == Pos::kPrep || p == Pos::kConj ||
         p == Pos::kAux;
}

bool is_vowel_letter(const std::string& w, std::size_t i) {
  const char c = w[i];
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || (c == 'y' && i > 0);
}

std::string vowel_label(char c) {
  switch (c) {
    case 'a': return "AE";
    case 'e': return "EH";
    case 'i': return "IH";
    case 'o': return "AA";
    case 'u': return "AH";
    default: return "IY";
  }
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct WordPools {
  std::map<Pos, std::vector<std::string>> by_pos;
  std::vector<std::string> subordinators = {"because", "although", "when", "while", "if"};
  std::vector<std::string> coordinators = {"and", "but", "so"};
};

const WordPools& full_pools() {
  static const WordPools pools = [] {
    WordPools p;
    const std::set<std::string> subs = {"because", "although", "when", "while", "if"};
    for (const auto& e : bundled_lexicon()) {
      if (subs.count(e.word)) continue;
      p.by_pos[e.pos].push_back(e.word);
    }
    return p;
  }();
  return pools;
}

class ResponseBuilder {
 public:
  ResponseBuilder(std::mt19937_64& rng, const SynthLatents& z, double pool_fraction)
      : rng_(rng), z_(z) {
    const WordPools& full = full_pools();
    for (const auto& [pos, words] : full.by_pos) {
      std::vector<std::string> w = words;
      if (!is_function_pos(pos)) {
        std::shuffle(w.begin(), w.end(), rng_);
        const auto keep = std::max<std::size_t>(
            2, static_cast<std::size_t>(std::ceil(pool_fraction * static_cast<double>(w.size()))));
        w.resize(std::min(keep, w.size()));
      }
      pools_[pos] = std::move(w);
    }
    articulation_ = std::exp(-0.12 * z.articulation);
  }

  void build(int target_words, AlignedResponse& r) {
    while (content_words_ < target_words) sentence();
    finish(r);
  }

 private:
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }
  const std::string& pick(Pos pos) {
    const auto& v = pools_.at(pos);
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng_)];
  }
  const std::string& pick(const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng_)];
  }

  void word(const std::string& w, Pos pos) { tokens_.push_back({w, pos}); }

  void noun_phrase(bool allow_pronoun) {
    if (allow_pronoun && chance(0.4)) {
      word(pick(Pos::kPron), Pos::kPron);
      return;
    }
    word(pick(Pos::kDet), Pos::kDet);
    if (chance(0.4)) word(pick(Pos::kAdj), Pos::kAdj);
    word(pick(Pos::kNoun), Pos::kNoun);
  }

  void clause() {
    noun_phrase(true);
    if (chance(0.25)) word(pick(Pos::kAux), Pos::kAux);
    word(pick(Pos::kVerb), Pos::kVerb);
    noun_phrase(false);
    if (chance(0.3)) {
      word(pick(Pos::kPrep), Pos::kPrep);
      noun_phrase(false);
    }
    if (chance(0.25)) word(pick(Pos::kAdv), Pos::kAdv);
  }

  void sentence() {
    clause();
    const double u = uniform(0.0, 1.0);
    if (u < 0.3) {
      word(pick(full_pools().coordinators), Pos::kConj);
      clause();
    } else if (u < 0.55) {
      word(pick(full_pools().subordinators), Pos::kConj);
      clause();
    }
    tokens_.push_back({".", Pos::kPunct});
    content_words_ = 0;
    for (const auto& t : tokens_) content_words_ += t.second != Pos::kPunct;
  }

  AlignedWord timed_word(const std::string& w, Pos pos, double start, int& vowels) {
    AlignedWord aw;
    aw.text = w;
    aw.start = start;
    double t = start;
    const bool filler = pos == Pos::kIntj;
    std::vector<std::pair<std::string, PhonemeClass>> segs;
    for (std::size_t i = 0; i < w.size();) {
      if (is_vowel_letter(w, i)) {
        segs.emplace_back(vowel_label(w[i]), PhonemeClass::kVowel);
        while (i < w.size() && is_vowel_letter(w, i)) ++i;
      } else {
        segs.emplace_back(std::string(1, static_cast<char>(std::toupper(w[i]))),
                          PhonemeClass::kConsonant);
        ++i;
      }
    }
    int nsyl = 0;
    for (const auto& s : segs) nsyl += s.second == PhonemeClass::kVowel;
    int primary = -1, secondary = -1;
    if (!filler && !is_function_pos(pos) && nsyl > 0) {
      primary = static_cast<int>(hash_string(w) % static_cast<std::uint64_t>(std::min(nsyl, 2)));
      if (primary + 2 < nsyl) secondary = primary + 2;
    }
    int syl = 0;
    for (const auto& [label, klass] : segs) {
      AlignedPhoneme p;
      p.label = label;
      p.klass = klass;
      double d;
      if (klass == PhonemeClass::kVowel) {
        if (syl == primary) p.stress = Stress::kPrimary;
        if (syl == secondary) p.stress = Stress::kSecondary;
        d = 0.085 * articulation_ * uniform(0.8, 1.2) *
            (p.stress == Stress::kPrimary ? 1.3 : 1.0);
        ++syl;
      } else {
        d = 0.055 * articulation_ * uniform(0.8, 1.2);
      }
      p.start = t;
      p.end = t + d;
      t = p.end;
      aw.phonemes.push_back(std::move(p));
    }
    aw.end = t;
    vowels = nsyl;
    return aw;
  }

  void finish(AlignedResponse& r) {
    const double p_pause = logistic(-0.6 - 1.2 * z_.rate);
    const double p_long = logistic(-0.4 - 1.0 * z_.pause_control);
    const double p_filler = std::clamp(0.06 * std::exp(-0.9 * z_.filler), 0.0, 0.4);
    double t = 0.3;
    bool first = true;
    std::string transcript;
    auto emit = [&](const std::string& w, Pos pos) {
      if (!first) {
        if (chance(p_pause)) {
          t += chance(p_long) ? uniform(0.55, 1.4) : uniform(0.16, 0.45);
        } else {
          t += uniform(0.0, 0.05);
        }
      }
      first = false;
      int vowels = 0;
      r.words.push_back(timed_word(w, pos, t, vowels));
      t = r.words.back().end;
      TokenAnnotation tok;
      tok.token = w;
      tok.pos = pos;
      tok.is_stopword = is_function_pos(pos);
      tok.syllable_count = vowels;
      r.tokens.push_back(std::move(tok));
      if (pos != Pos::kIntj) transcript += (transcript.empty() ? "" : " ") + w;
    };
    for (const auto& [w, pos] : tokens_) {
      if (pos == Pos::kPunct) {
        TokenAnnotation tok;
        tok.token = w;
        tok.pos = Pos::kPunct;
        r.tokens.push_back(std::move(tok));
        transcript += " " + w;
        continue;
      }
      if (chance(p_filler)) emit(chance(0.5) ? "uh" : "um", Pos::kIntj);
      emit(w, pos);
    }
    r.transcript = transcript;
  }

  std::mt19937_64& rng_;
  SynthLatents z_;
  std::map<Pos, std::vector<std::string>> pools_;
  std::vector<std::pair<std::string, Pos>> tokens_;
  int content_words_ = 0;
  double articulation_ = 1.0;
};

std::shared_ptr<AudioBuffer> synth_tone(std::mt19937_64& rng, const SynthSpec& spec) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double f0 = 90.0 + 80.0 * u(rng);
  const double amp = 0.25 * (0.8 + 0.4 * u(rng));
  const double phase = 2.0 * M_PI * u(rng);
  auto audio = std::make_shared<AudioBuffer>();
  audio->sample_rate = spec.audio_rate;
  const auto n = static_cast<std::size_t>(std::lround(spec.audio_seconds * spec.audio_rate));
  audio->samples.resize(n);
  std::normal_distribution<double> noise(0.0, 0.002);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / spec.audio_rate;
    const double w = 2.0 * M_PI * f0 * t + phase;
    const double s = amp * (std::sin(w) + 0.4 * std::sin(2 * w) + 0.2 * std::sin(3 * w)) / 1.6;
    // Quantize like a 16-bit file so in-memory and on-disk audio agree.
    audio->samples[i] = std::round((s + noise(rng)) * 32768.0) / 32768.0;
  }
  return audio;
}

}  // namespace

LexicalResources bundled_resources() {
  LexicalResources r;
  for (const auto& e : bundled_lexicon()) {
    r.frequency_rank[e.word] = e.rank;
    r.complexity_avg[e.word] = e.complexity_avg;
    r.complexity_mode[e.word] = e.complexity_mode;
    if (is_function_pos(e.pos)) r.stopwords.insert(e.word);
  }
  r.filled_pauses = default_filled_pauses();
  return r;
}

std::string_view score_function_name(ScoreFunction f) {
  switch (f) {
    case ScoreFunction::kMixed: return "mixed";
    case ScoreFunction::kSpeakingRate: return "speaking_rate";
    case ScoreFunction::kFluency: return "fluency";
    case ScoreFunction::kLength: return "length";
  }
  return "?";
}

ScoreFunction parse_score_function(std::string_view name) {
  for (ScoreFunction f : {ScoreFunction::kMixed, ScoreFunction::kSpeakingRate,
                          ScoreFunction::kFluency, ScoreFunction::kLength}) {
    if (score_function_name(f) == name) return f;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown score function: " + std::string(name));
}

SynthCorpus synth_corpus(const SynthSpec& spec) {
  if (spec.n < 50) throw Error(ErrorKind::kInvalidArgument, "synthetic corpus needs n >= 50");
  if (spec.grade_levels < 2 || spec.grade_levels > kMaxGradeLevels) {
    throw Error(ErrorKind::kInvalidArgument, "grade_levels must lie in [2, 5]");
  }
  if (spec.n_prompts < 1) throw Error(ErrorKind::kInvalidArgument, "n_prompts must be >= 1");
  std::vector<double> props = spec.grade_proportions;
  if (props.empty()) props.assign(spec.grade_levels, 1.0 / spec.grade_levels);
  if (static_cast<int>(props.size()) != spec.grade_levels) {
    throw Error(ErrorKind::kInvalidArgument, "one grade proportion per level is required");
  }
  const double psum = std::accumulate(props.begin(), props.end(), 0.0);
  for (double& p : props) {
    if (!(p > 0.0)) throw Error(ErrorKind::kInvalidArgument, "grade proportions must be > 0");
    p /= psum;
  }

  SynthCorpus out;
  const auto n = static_cast<std::size_t>(spec.n);
  out.latents.resize(n);
  out.responses.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::mt19937_64 rng(derive_seed(spec.seed, i));
    std::normal_distribution<double> g(0.0, 1.0);
    SynthLatents& z = out.latents[i];
    z.rate = g(rng);
    z.pause_control = g(rng);
    z.filler = g(rng);
    z.vocabulary = g(rng);
    z.length = g(rng);
    z.articulation = g(rng);
    double s = 0.0;
    switch (spec.score_function) {
      case ScoreFunction::kMixed: s = z.rate + z.vocabulary + 1.5 * z.pause_control; break;
      case ScoreFunction::kSpeakingRate: s = z.rate; break;
      case ScoreFunction::kFluency: s = z.rate + z.pause_control + z.filler; break;
      case ScoreFunction::kLength: s = z.length; break;
    }
    z.score = s + spec.score_noise * g(rng);

    AlignedResponse& r = out.responses[i];
    const int prompt = static_cast<int>(i % static_cast<std::size_t>(spec.n_prompts)) + 1;
    r.prompt_id = "P" + std::to_string(prompt);
    char id[32];
    std::snprintf(id, sizeof id, "%s_r%05zu", r.prompt_id.c_str(), i);
    r.response_id = id;
    const double pool_fraction = std::clamp(0.05 + 0.15 * (z.vocabulary + 2.5), 0.05, 1.0);
    const int target = std::clamp(
        static_cast<int>(std::lround(spec.mean_words * std::exp(0.15 * z.length))), 20, 250);
    ResponseBuilder(rng, z, pool_fraction).build(target, r);
    if (spec.audio) r.audio = synth_tone(rng, spec);
  }

  // Empirical quantiles give the requested grade proportions.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.latents[a].score < out.latents[b].score;
  });
  std::set<double> distinct;
  for (const auto& z : out.latents) distinct.insert(z.score);
  if (distinct.size() < static_cast<std::size_t>(spec.grade_levels)) {
    throw Error(ErrorKind::kInvalidArgument,
                "scores have fewer distinct values than requested grade levels");
  }
  double cum = 0.0;
  std::size_t pos = 0;
  for (int g = 0; g < spec.grade_levels; ++g) {
    cum += props[g];
    const std::size_t end = g + 1 == spec.grade_levels
                                ? n
                                : static_cast<std::size_t>(std::lround(cum * static_cast<double>(n)));
    for (; pos < end; ++pos) out.responses[order[pos]].grade = Grade::from_ordinal(g);
  }

  if (spec.second_rater) {
    for (std::size_t i = 0; i < n; ++i) {
      std::mt19937_64 rng(derive_seed(spec.seed ^ 0x5eed5eedULL, i));
      std::uniform_real_distribution<double> u(0.0, 1.0);
      int g2 = out.responses[i].grade->ordinal();
      if (u(rng) < spec.rater_disagreement) {
        g2 += u(rng) < 0.5 ? -1 : 1;
        if (g2 < 0) g2 = 1;
        if (g2 >= spec.grade_levels) g2 = spec.grade_levels - 2;
      }
      out.responses[i].second_grade = Grade::from_ordinal(g2);
    }
  }
  return out;
}

void write_synth_corpus(const SynthCorpus& corpus, const fs::path& dir) {
  fs::create_directories(dir / "responses");
  std::ofstream manifest(dir / "manifest.txt", std::ios::binary);
  if (!manifest) throw Error(ErrorKind::kIo, "cannot write " + (dir / "manifest.txt").string());
  bool any_audio = false;
  for (const auto& r : corpus.responses) {
    AlignedResponse copy = r;
    if (r.audio) {
      if (!any_audio) fs::create_directories(dir / "audio");
      any_audio = true;
      write_wav(dir / "audio" / (r.response_id + ".wav"), *r.audio);
      copy.audio_path = fs::path("..") / "audio" / (r.response_id + ".wav");
    }
    const fs::path file = dir / "responses" / (r.response_id + ".json");
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + file.string());
    out << response_to_json(copy).dump(1) << '\n';
    manifest << "responses/" << r.response_id << ".json\n";
  }
  write_resources(bundled_resources(), dir / "resources");
}

}  // namespace speechscore
