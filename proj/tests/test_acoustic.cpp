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


#include <cstdint>
#include <fstream>
#include <random>

#include "doctest.h"
#include "speechscore/common.hpp"
#include "fixtures.hpp"
#include "speechscore/acoustic.hpp"

using namespace speechscore;
namespace fs = std::filesystem;

namespace {

void put16(std::ofstream& o, int v) {
  o.put(static_cast<char>(v & 0xff));
  o.put(static_cast<char>((v >> 8) & 0xff));
}

void put32(std::ofstream& o, std::uint32_t v) {
  put16(o, static_cast<int>(v & 0xffff));
  put16(o, static_cast<int>(v >> 16));
}

// Raw PCM writer independent of the library's.
void write_raw_wav(const fs::path& p, int channels, const std::vector<int>& samples,
                   int rate = 16000) {
  std::ofstream o(p, std::ios::binary);
  o.write("RIFF", 4);
  put32(o, 36 + 2 * samples.size());
  o.write("WAVEfmt ", 8);
  put32(o, 16);
  put16(o, 1);
  put16(o, channels);
  put32(o, rate);
  put32(o, rate * 2 * channels);
  put16(o, 2 * channels);
  put16(o, 16);
  o.write("data", 4);
  put32(o, 2 * samples.size());
  for (int s : samples) put16(o, s);
}

}  // namespace

TEST_CASE("full-scale square wave scales by 1/32768") {
  const auto dir = fixtures::scratch_dir("wav_square");
  std::vector<int> s;
  for (int i = 0; i < 1600; ++i) s.push_back((i / 80) % 2 ? -32768 : 32767);
  write_raw_wav(dir / "sq.wav", 1, s);
  const auto a = read_wav(dir / "sq.wav");
  REQUIRE(a.samples.size() == 1600);
  CHECK(a.sample_rate == 16000.0);
  CHECK(a.samples[0] == 32767.0 / 32768.0);
  CHECK(a.samples[80] == -1.0);
}

TEST_CASE("one second of silence reads as zeros") {
  const auto dir = fixtures::scratch_dir("wav_silence");
  write_raw_wav(dir / "z.wav", 1, std::vector<int>(16000, 0));
  const auto a = read_wav(dir / "z.wav");
  CHECK(a.samples.size() == 16000);
  CHECK(a.duration() == doctest::Approx(1.0));
}

TEST_CASE("malformed audio is rejected") {
  const auto dir = fixtures::scratch_dir("wav_bad");
  write_raw_wav(dir / "st.wav", 2, std::vector<int>(100, 0));
  CHECK_THROWS_AS(read_wav(dir / "st.wav"), Error);
  std::ofstream(dir / "trunc.wav", std::ios::binary).write("RIFF\0\0", 6);
  CHECK_THROWS_AS(read_wav(dir / "trunc.wav"), Error);
  CHECK_THROWS_AS(read_wav(dir / "none.wav"), Error);
}

TEST_CASE("wav write and read round trip") {
  const auto dir = fixtures::scratch_dir("wav_rt");
  const auto a = fixtures::sine(220.0, 0.1, 8000.0, 0.8);
  write_wav(dir / "a.wav", a);
  const auto b = read_wav(dir / "a.wav");
  REQUIRE(b.samples.size() == a.samples.size());
  CHECK(b.sample_rate == 8000.0);
  for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(std::abs(a.samples[i] - b.samples[i]) <= 1.0 / 32768.0);
}

TEST_CASE("pure tone period lies within one lag step") {
  const auto track = pitch_track(fixtures::sine(100.0, 1.0));
  REQUIRE(track.periods.size() > 80);
  for (double t : track.periods) CHECK(std::abs(t - 0.010) <= 1.0 / 16000.0);
  CHECK(track.amplitudes.size() == track.periods.size());
}

TEST_CASE("low-level white noise is mostly unvoiced") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 0.01);
  AudioBuffer a;
  a.samples.resize(16000);
  for (double& s : a.samples) s = g(rng);
  const PitchConfig cfg;
  const auto frames = 1 + (a.samples.size() - static_cast<std::size_t>(cfg.frame * 16000)) /
                              static_cast<std::size_t>(cfg.hop * 16000);
  const auto track = pitch_track(a, cfg);
  CHECK(static_cast<double>(track.periods.size()) <= 0.1 * static_cast<double>(frames));
}

TEST_CASE("audio shorter than a frame is an error") {
  CHECK_THROWS_AS(pitch_track(fixtures::sine(100.0, 0.02)), Error);
}

TEST_CASE("perturbation formulas") {
  std::vector<double> amps;
  for (int i = 0; i < 20; ++i) amps.push_back(i % 2 ? 1.0 : 0.5);
  CHECK(local_perturbation(amps) == doctest::Approx(0.5 / 0.75));
  const std::vector<double> flat(10, 0.01);
  CHECK(local_perturbation(flat) == 0.0);
  CHECK(perturbation_quotient(flat, 3) == 0.0);
  // Interior points of 1,2,4: |2 - 7/3| / (7/3).
  const std::vector<double> x = {1, 2, 4};
  CHECK(perturbation_quotient(x, 3) == doctest::Approx((1.0 / 3.0) / (7.0 / 3.0)));
}

TEST_CASE("zero crossing rate of an alternating signal is one") {
  const std::vector<double> s = {1, -1, 1, -1};
  CHECK(zero_crossing_rate(s) == doctest::Approx(1.0));
  const std::vector<double> t = {1, 1, -1, -1};
  CHECK(zero_crossing_rate(t) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("tone features: stable voice, derived variants, scale invariance") {
  const auto a = fixtures::sine(150.0, 1.0, 16000.0, 0.4);
  const auto f = acoustic_features(a, pitch_track(a));
  REQUIRE(f.values.size() == acoustic_feature_names().size());
  for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(f.values[i].first == acoustic_feature_names()[i]);
  CHECK(f.at("mean_pitch") == doctest::Approx(150.0).epsilon(0.01));
  CHECK(f.at("rapJitter") < 1e-3);
  CHECK(f.at("localShimmer") < 1e-3);
  CHECK(f.at("ddpJitter") == 3.0 * f.at("rapJitter"));
  CHECK(f.at("ddaShimmer") == 3.0 * f.at("apq3Shimmer"));
  CHECK(f.at("total_duration") == doctest::Approx(1.0));
  CHECK(f.at("spectral_centroid") == doctest::Approx(150.0).epsilon(0.2));
}

TEST_CASE("jitter and shimmer ignore overall gain") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  AudioBuffer a;
  double phase = 0.0, cycle = 0.008;
  double amp = 0.3;
  for (int i = 0; i < 16000; ++i) {
    a.samples.push_back(amp * std::sin(2.0 * std::numbers::pi * phase));
    phase += 1.0 / (16000.0 * cycle);
    if (phase >= 1.0) {
      phase -= 1.0;
      cycle = 0.008 * (1.0 + 0.03 * u(rng));
      amp = 0.3 * (1.0 + 0.1 * u(rng));
    }
  }
  AudioBuffer b = a;
  for (double& s : b.samples) s *= 2.5;
  const auto fa = acoustic_features(a, pitch_track(a));
  const auto fb = acoustic_features(b, pitch_track(b));
  for (const char* n : {"localJitter", "rapJitter", "ppq5Jitter", "localShimmer", "apq3Shimmer",
                        "aqpq5Shimmer"}) {
    CHECK(fa.at(n) >= 0.0);
    CHECK(fb.at(n) == doctest::Approx(fa.at(n)).epsilon(1e-9));
  }
}

TEST_CASE("an empty voiced track is flagged") {
  AudioBuffer a;
  a.samples.assign(8000, 0.0);
  const auto f = acoustic_features(a, pitch_track(a));
  CHECK(f.has_flag("no_voiced_frames"));
  CHECK(f.at("mean_pitch") == 0.0);
  CHECK(f.at("rapJitter") == 0.0);
}

TEST_CASE("short period tracks zero the five-point variants") {
  AudioBuffer a = fixtures::sine(100.0, 0.1);
  PeriodTrack t;
  t.periods = {0.01, 0.011, 0.01};
  t.amplitudes = {0.5, 0.4, 0.5};
  const auto f = acoustic_features(a, t);
  CHECK(f.has_flag("short_period_track"));
  CHECK(f.at("ppq5Jitter") == 0.0);
  CHECK(f.at("aqpq5Shimmer") == 0.0);
  t.amplitudes.pop_back();
  CHECK_THROWS_AS(acoustic_features(a, t), Error);
}
