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

#include "speechscore/acoustic.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <mutex>

namespace speechscore {

namespace {

std::uint32_t le32(const unsigned char* p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
std::uint16_t le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
void put32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put16(std::ostream& out, std::uint16_t v) {
  out.put(static_cast<char>(v & 0xff));
  out.put(static_cast<char>(v >> 8));
}

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct Frames {
  std::size_t length = 0;
  std::size_t hop = 0;
  std::size_t count = 0;
};

Frames frame_layout(const AudioBuffer& audio, const PitchConfig& config) {
  Frames f;
  f.length = static_cast<std::size_t>(std::lround(config.frame * audio.sample_rate));
  f.hop = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(config.hop * audio.sample_rate)));
  if (f.length == 0 || audio.samples.size() < f.length) {
    throw Error(ErrorKind::kPrecondition, "audio shorter than one analysis frame");
  }
  f.count = 1 + (audio.samples.size() - f.length) / f.hop;
  return f;
}

double rms(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return x.empty() ? 0.0 : std::sqrt(s / static_cast<double>(x.size()));
}

double nccf(std::span<const double> x, std::size_t lag) {
  double xy = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t n = 0; n + lag < x.size(); ++n) {
    xy += x[n] * x[n + lag];
    xx += x[n] * x[n];
    yy += x[n + lag] * x[n + lag];
  }
  const double d = std::sqrt(xx * yy);
  return d > 0.0 ? xy / d : 0.0;
}

}  // namespace

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::kParse, path.string() + ": " + why);
  };
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw fail("truncated or missing RIFF/WAVE header");
  }
  bool have_fmt = false;
  AudioBuffer audio;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string id(reinterpret_cast<const char*>(bytes.data() + pos), 4);
    const std::uint32_t size = le32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) throw fail("chunk '" + id + "' runs past end of file");
    if (id == "fmt ") {
      if (size < 16) throw fail("fmt chunk too short");
      const unsigned char* p = bytes.data() + body;
      if (le16(p) != 1) throw fail("compressed audio is not supported (PCM only)");
      if (le16(p + 2) != 1) throw fail("only mono audio is supported");
      if (le16(p + 14) != 16) throw fail("only 16-bit samples are supported");
      audio.sample_rate = le32(p + 4);
      if (audio.sample_rate <= 0) throw fail("sample rate must be positive");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw fail("data chunk before fmt chunk");
      const std::size_t n = size / 2;
      audio.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<std::int16_t>(le16(bytes.data() + body + 2 * i));
        audio.samples[i] = v / 32768.0;
      }
      if (audio.samples.empty()) throw fail("no samples");
      return audio;
    }
    pos = body + size + (size & 1);
  }
  throw fail(have_fmt ? "missing data chunk" : "missing fmt chunk");
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& audio) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  const auto n = static_cast<std::uint32_t>(audio.samples.size());
  const auto rate = static_cast<std::uint32_t>(std::lround(audio.sample_rate));
  out.write("RIFF", 4);
  put32(out, 36 + 2 * n);
  out.write("WAVEfmt ", 8);
  put32(out, 16);
  put16(out, 1);
  put16(out, 1);
  put32(out, rate);
  put32(out, rate * 2);
  put16(out, 2);
  put16(out, 16);
  out.write("data", 4);
  put32(out, 2 * n);
  for (double s : audio.samples) {
    const double c = std::clamp(s, -1.0, 32767.0 / 32768.0);
    put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(std::lround(c * 32768.0))));
  }
}

PeriodTrack pitch_track(const AudioBuffer& audio, const PitchConfig& config) {
  if (!(config.fmin > 0.0) || !(config.fmax > config.fmin)) {
    throw Error(ErrorKind::kInvalidArgument, "pitch band requires 0 < fmin < fmax");
  }
  const Frames f = frame_layout(audio, config);
  const auto min_lag = static_cast<std::size_t>(std::ceil(audio.sample_rate / config.fmax));
  const auto max_lag = std::min(
      static_cast<std::size_t>(std::floor(audio.sample_rate / config.fmin)), f.length - 2);
  PeriodTrack track;
  if (min_lag < 1 || min_lag + 1 >= max_lag) return track;
  std::vector<double> r(max_lag + 2, 0.0);
  for (std::size_t k = 0; k < f.count; ++k) {
    const std::span<const double> x(audio.samples.data() + k * f.hop, f.length);
    if (rms(x) < config.silence_rms) continue;
    double best = -1.0;
    for (std::size_t lag = min_lag - 1; lag <= max_lag + 1; ++lag) {
      r[lag] = nccf(x, lag);
      if (lag >= min_lag && lag <= max_lag) best = std::max(best, r[lag]);
    }
    if (best < config.voicing_threshold) continue;
    // First local maximum close to the global one avoids octave errors.
    std::size_t pick = 0;
    for (std::size_t lag = min_lag; lag <= max_lag; ++lag) {
      if (r[lag] >= 0.9 * best && r[lag] >= r[lag - 1] && r[lag] >= r[lag + 1]) {
        pick = lag;
        break;
      }
    }
    if (pick == 0) continue;
    const double a = r[pick - 1], b = r[pick], c = r[pick + 1];
    const double denom = a - 2.0 * b + c;
    double shift = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
    shift = std::clamp(shift, -0.5, 0.5);
    track.periods.push_back((static_cast<double>(pick) + shift) / audio.sample_rate);
    double peak = 0.0;
    for (double v : x) peak = std::max(peak, std::abs(v));
    track.amplitudes.push_back(peak);
  }
  return track;
}

double zero_crossing_rate(std::span<const double> samples) {
  if (samples.size() < 2) return 0.0;
  std::size_t changes = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    changes += samples[i - 1] * samples[i] < 0.0;
  }
  return static_cast<double>(changes) / static_cast<double>(samples.size() - 1);
}

double local_perturbation(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  if (m <= 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) s += std::abs(xs[i] - xs[i + 1]);
  return s / static_cast<double>(xs.size() - 1) / m;
}

double perturbation_quotient(std::span<const double> xs, int window) {
  const auto h = static_cast<std::size_t>(window / 2);
  if (xs.size() < 2 * h + 1) return 0.0;
  const double m = mean(xs);
  if (m <= 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = h; i + h < xs.size(); ++i) {
    double local = 0.0;
    for (std::size_t j = i - h; j <= i + h; ++j) local += xs[j];
    s += std::abs(xs[i] - local / static_cast<double>(2 * h + 1));
  }
  return s / static_cast<double>(xs.size() - 2 * h) / m;
}

const std::vector<std::string>& acoustic_feature_names() {
  static const std::vector<std::string> names = {
      "mean_pitch",    "stdev_pitch",       "range_pitch",  "stdev_energy",
      "zero_crossing_rate", "energy_entropy", "spectral_centroid", "localJitter",
      "rapJitter",     "ppq5Jitter",        "ddpJitter",    "localShimmer",
      "apq3Shimmer",   "aqpq5Shimmer",      "ddaShimmer",   "total_duration"};
  return names;
}

FeatureSet acoustic_features(const AudioBuffer& audio, const PeriodTrack& track,
                             const PitchConfig& config) {
  if (audio.samples.empty() || !(audio.sample_rate > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "audio must be non-empty with a positive rate");
  }
  if (track.periods.size() != track.amplitudes.size()) {
    throw Error(ErrorKind::kInvalidArgument, "period and amplitude lists differ in length");
  }
  const Frames f = frame_layout(audio, config);
  FeatureSet fs;

  std::vector<double> pitch;
  for (double p : track.periods) pitch.push_back(1.0 / p);
  if (pitch.empty()) fs.flag("no_voiced_frames");
  fs.add("mean_pitch", mean(pitch));
  fs.add("stdev_pitch", population_sd(pitch));
  fs.add("range_pitch", pitch.empty() ? 0.0
                                      : *std::max_element(pitch.begin(), pitch.end()) -
                                            *std::min_element(pitch.begin(), pitch.end()));

  std::vector<double> energy(f.count);
  double entropy = 0.0;
  const std::size_t sub = f.length / 10;
  for (std::size_t k = 0; k < f.count; ++k) {
    const std::span<const double> x(audio.samples.data() + k * f.hop, f.length);
    energy[k] = rms(x);
    if (sub == 0) continue;
    double e[10], total = 0.0;
    for (int j = 0; j < 10; ++j) {
      e[j] = 0.0;
      for (std::size_t n = j * sub; n < (j + 1) * sub; ++n) e[j] += x[n] * x[n];
      total += e[j];
    }
    if (total <= 0.0) continue;
    for (double v : e) {
      const double p = v / total;
      if (p > 0.0) entropy -= p * std::log2(p);
    }
  }
  fs.add("stdev_energy", population_sd(energy));
  fs.add("zero_crossing_rate", zero_crossing_rate(audio.samples));
  fs.add("energy_entropy", entropy);

  // Spectral centroid of Hann-windowed frames, averaged over non-silent frames.
  const std::size_t n = f.length;
  const std::size_t bins = n / 2 + 1;
  std::vector<double> in(n);
  fftw_complex* out = fftw_alloc_complex(bins);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out, FFTW_ESTIMATE);
  }
  std::vector<double> window(n);
  for (std::size_t i = 0; i < n; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) /
                                     static_cast<double>(n - 1));
  }
  double centroid_sum = 0.0;
  int centroid_frames = 0;
  for (std::size_t k = 0; k < f.count; ++k) {
    if (energy[k] < config.silence_rms) continue;
    const double* x = audio.samples.data() + k * f.hop;
    for (std::size_t i = 0; i < n; ++i) in[i] = x[i] * window[i];
    fftw_execute_dft_r2c(plan, in.data(), out);
    double num = 0.0, den = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
      const double mag = std::hypot(out[b][0], out[b][1]);
      num += mag * static_cast<double>(b) * audio.sample_rate / static_cast<double>(n);
      den += mag;
    }
    if (den > 0.0) {
      centroid_sum += num / den;
      ++centroid_frames;
    }
  }
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(out);
  fs.add("spectral_centroid", centroid_frames > 0 ? centroid_sum / centroid_frames : 0.0);

  const auto& T = track.periods;
  const auto& A = track.amplitudes;
  if (!T.empty() && T.size() < 5) fs.flag("short_period_track");
  const double rap = perturbation_quotient(T, 3);
  const double apq3 = perturbation_quotient(A, 3);
  fs.add("localJitter", local_perturbation(T));
  fs.add("rapJitter", rap);
  fs.add("ppq5Jitter", perturbation_quotient(T, 5));
  fs.add("ddpJitter", 3.0 * rap);
  fs.add("localShimmer", local_perturbation(A));
  fs.add("apq3Shimmer", apq3);
  fs.add("aqpq5Shimmer", perturbation_quotient(A, 5));
  fs.add("ddaShimmer", 3.0 * apq3);
  fs.add("total_duration", audio.duration());
  return fs;
}

}  // namespace speechscore
