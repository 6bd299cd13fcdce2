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

#include "speechscore/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "speechscore/common.hpp"

namespace speechscore {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kTimeTolerance = 1e-6;

constexpr std::array<std::string_view, 13> kPosNames = {
    "NOUN", "VERB", "AUX", "ADJ", "ADV", "PRON", "DET",
    "CONJ", "PREP", "NUM", "INTJ", "PUNCT", "OTHER"};

constexpr std::array<std::string_view, 5> kGradeNames = {"A2", "LB1", "HB1",
                                                         "LB2", "HB2"};

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

int heuristic_syllables(const std::string& word) {
  int groups = 0;
  bool in_vowel = false;
  bool alpha = false;
  for (char c : word) {
    const char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (std::isalpha(static_cast<unsigned char>(l))) alpha = true;
    const bool v = std::string_view("aeiouy").find(l) != std::string_view::npos;
    if (v && !in_vowel) ++groups;
    in_vowel = v;
  }
  if (!alpha) return 0;
  return std::max(groups, 1);
}

std::vector<TokenRange> parse_ranges(const json& arr) {
  std::vector<TokenRange> out;
  for (const auto& r : arr) {
    if (!r.is_array() || r.size() != 2) {
      throw Error(ErrorKind::kParse, "syntax range must be [begin, end]");
    }
    out.emplace_back(r[0].get<int>(), r[1].get<int>());
  }
  return out;
}

json ranges_to_json(const std::vector<TokenRange>& ranges) {
  json arr = json::array();
  for (const auto& [b, e] : ranges) arr.push_back({b, e});
  return arr;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

std::string_view pos_name(Pos pos) {
  return kPosNames[static_cast<std::size_t>(pos)];
}

Pos parse_pos(std::string_view tag) {
  for (std::size_t i = 0; i < kPosNames.size(); ++i) {
    if (kPosNames[i] == tag) return static_cast<Pos>(i);
  }
  return Pos::kOther;
}

std::string_view Grade::name() const {
  return kGradeNames[static_cast<std::size_t>(label)];
}

Grade Grade::from_ordinal(int ordinal) {
  if (ordinal < 0 || ordinal >= kMaxGradeLevels) {
    throw Error(ErrorKind::kInvalidArgument,
                "grade ordinal out of range: " + std::to_string(ordinal));
  }
  return Grade{static_cast<GradeLabel>(ordinal)};
}

Grade Grade::parse(std::string_view label) {
  for (std::size_t i = 0; i < kGradeNames.size(); ++i) {
    if (kGradeNames[i] == label) return Grade{static_cast<GradeLabel>(i)};
  }
  throw Error(ErrorKind::kParse, "unknown grade label '" + std::string(label) + "'");
}

double AlignedResponse::total_duration() const {
  if (words.empty()) return 0.0;
  return words.back().end - words.front().start;
}

std::string validate_response(const AlignedResponse& r) {
  std::size_t timed_tokens = 0;
  for (const auto& t : r.tokens) {
    if (t.pos != Pos::kPunct) ++timed_tokens;
  }
  for (std::size_t i = 0; i < r.words.size(); ++i) {
    const auto& w = r.words[i];
    if (!(w.start >= 0.0)) return "word " + std::to_string(i) + " starts before 0";
    if (!(w.end > w.start)) return "word " + std::to_string(i) + " has end <= start";
    if (i > 0 && w.start < r.words[i - 1].end - kTimeTolerance) {
      return "overlapping words";
    }
    for (const auto& p : w.phonemes) {
      if (!(p.end >= p.start)) {
        return "phoneme '" + p.label + "' has end < start";
      }
      if (p.start < w.start - kTimeTolerance || p.end > w.end + kTimeTolerance) {
        return "phoneme '" + p.label + "' outside word '" + w.text + "'";
      }
      if (p.klass != PhonemeClass::kVowel && p.stress != Stress::kNone) {
        return "stress on non-vowel phoneme '" + p.label + "'";
      }
    }
  }
  if (!r.tokens.empty() && !r.words.empty() && timed_tokens != r.words.size()) {
    return "token count does not match word count";
  }
  if (r.syntax) {
    const int n = static_cast<int>(r.tokens.size());
    const SyntaxSpans& s = *r.syntax;
    for (const auto* list :
         {&s.sentences, &s.t_units, &s.clauses, &s.dependent_clauses,
          &s.complex_t_units, &s.coordinate_phrases, &s.complex_nominals,
          &s.verb_phrases}) {
      for (const auto& [b, e] : *list) {
        if (b < 0 || e > n || b > e) return "syntax range out of token bounds";
      }
    }
    std::set<TokenRange> clauses(s.clauses.begin(), s.clauses.end());
    for (const auto& dc : s.dependent_clauses) {
      if (!clauses.count(dc)) return "dependent clause not listed as clause";
    }
  }
  return {};
}

AlignedResponse parse_response(const json& doc, const fs::path& base_dir) {
  AlignedResponse r;
  try {
    r.response_id = doc.at("response_id").get<std::string>();
    r.prompt_id = doc.value("prompt_id", std::string("default"));
    for (const auto& jw : doc.at("words")) {
      AlignedWord w;
      w.text = lowercase(jw.at("text").get<std::string>());
      w.start = jw.at("start").get<double>();
      w.end = jw.at("end").get<double>();
      for (const auto& jp : jw.value("phonemes", json::array())) {
        AlignedPhoneme p;
        p.label = jp.at("label").get<std::string>();
        const std::string klass = jp.value("class", std::string("consonant"));
        if (klass == "vowel") {
          p.klass = PhonemeClass::kVowel;
        } else if (klass == "consonant") {
          p.klass = PhonemeClass::kConsonant;
        } else if (klass == "silence") {
          p.klass = PhonemeClass::kSilence;
        } else {
          throw Error(ErrorKind::kParse, "unknown phoneme class '" + klass + "'");
        }
        const int stress = jp.value("stress", 0);
        if (stress < 0 || stress > 2) {
          throw Error(ErrorKind::kParse, "stress must be 0, 1 or 2");
        }
        p.stress = static_cast<Stress>(stress);
        p.start = jp.at("start").get<double>();
        p.end = jp.at("end").get<double>();
        w.phonemes.push_back(std::move(p));
      }
      r.words.push_back(std::move(w));
    }
    if (doc.contains("tokens")) {
      for (const auto& jt : doc.at("tokens")) {
        TokenAnnotation t;
        t.token = lowercase(jt.at("token").get<std::string>());
        t.pos = parse_pos(jt.value("pos", std::string("OTHER")));
        t.is_stopword = jt.value("stopword", false);
        t.syllable_count = jt.value("syllables", -1);
        r.tokens.push_back(std::move(t));
      }
    } else {
      for (const auto& w : r.words) {
        r.tokens.push_back(TokenAnnotation{w.text, Pos::kOther, false, -1});
      }
    }
    // Fill in syllable counts from vowel nuclei where the token is timed.
    std::size_t wi = 0;
    for (auto& t : r.tokens) {
      if (t.pos == Pos::kPunct) {
        if (t.syllable_count < 0) t.syllable_count = 0;
        continue;
      }
      const AlignedWord* w = wi < r.words.size() ? &r.words[wi] : nullptr;
      ++wi;
      if (t.syllable_count >= 0) continue;
      int nuclei = 0;
      if (w) {
        for (const auto& p : w->phonemes) nuclei += p.klass == PhonemeClass::kVowel;
      }
      t.syllable_count = (w && !w->phonemes.empty()) ? nuclei
                                                     : heuristic_syllables(t.token);
    }
    if (doc.contains("syntax") && !doc.at("syntax").is_null()) {
      const json& js = doc.at("syntax");
      SyntaxSpans s;
      s.provenance = Provenance::kAnnotated;
      auto get = [&](const char* key) {
        return js.contains(key) ? parse_ranges(js.at(key)) : std::vector<TokenRange>{};
      };
      s.sentences = get("sentences");
      s.t_units = get("t_units");
      s.clauses = get("clauses");
      s.dependent_clauses = get("dependent_clauses");
      s.complex_t_units = get("complex_t_units");
      s.coordinate_phrases = get("coordinate_phrases");
      s.complex_nominals = get("complex_nominals");
      s.verb_phrases = get("verb_phrases");
      r.syntax = std::move(s);
    }
    if (doc.contains("transcript")) {
      r.transcript = doc.at("transcript").get<std::string>();
    } else {
      std::string joined;
      for (const auto& w : r.words) {
        if (!joined.empty()) joined += ' ';
        joined += w.text;
      }
      r.transcript = joined;
    }
    if (doc.contains("wav") && !doc.at("wav").is_null()) {
      fs::path p = doc.at("wav").get<std::string>();
      r.audio_path = p.is_absolute() ? p : base_dir / p;
    }
    if (doc.contains("grade") && !doc.at("grade").is_null()) {
      r.grade = Grade::parse(doc.at("grade").get<std::string>());
    }
    if (doc.contains("grade_2") && !doc.at("grade_2").is_null()) {
      r.second_grade = Grade::parse(doc.at("grade_2").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, e.what());
  }
  return r;
}

json response_to_json(const AlignedResponse& r) {
  json doc;
  doc["response_id"] = r.response_id;
  doc["prompt_id"] = r.prompt_id;
  doc["transcript"] = r.transcript;
  json words = json::array();
  for (const auto& w : r.words) {
    json jw{{"text", w.text}, {"start", w.start}, {"end", w.end}};
    json phonemes = json::array();
    for (const auto& p : w.phonemes) {
      const char* klass = p.klass == PhonemeClass::kVowel       ? "vowel"
                          : p.klass == PhonemeClass::kConsonant ? "consonant"
                                                                : "silence";
      phonemes.push_back({{"label", p.label},
                          {"class", klass},
                          {"stress", static_cast<int>(p.stress)},
                          {"start", p.start},
                          {"end", p.end}});
    }
    jw["phonemes"] = std::move(phonemes);
    words.push_back(std::move(jw));
  }
  doc["words"] = std::move(words);
  json tokens = json::array();
  for (const auto& t : r.tokens) {
    tokens.push_back({{"token", t.token},
                      {"pos", std::string(pos_name(t.pos))},
                      {"stopword", t.is_stopword},
                      {"syllables", t.syllable_count}});
  }
  doc["tokens"] = std::move(tokens);
  if (r.syntax && r.syntax->provenance == Provenance::kAnnotated) {
    const auto& s = *r.syntax;
    doc["syntax"] = {{"sentences", ranges_to_json(s.sentences)},
                     {"t_units", ranges_to_json(s.t_units)},
                     {"clauses", ranges_to_json(s.clauses)},
                     {"dependent_clauses", ranges_to_json(s.dependent_clauses)},
                     {"complex_t_units", ranges_to_json(s.complex_t_units)},
                     {"coordinate_phrases", ranges_to_json(s.coordinate_phrases)},
                     {"complex_nominals", ranges_to_json(s.complex_nominals)},
                     {"verb_phrases", ranges_to_json(s.verb_phrases)}};
  }
  if (r.audio_path) doc["wav"] = r.audio_path->generic_string();
  if (r.grade) doc["grade"] = std::string(r.grade->name());
  if (r.second_grade) doc["grade_2"] = std::string(r.second_grade->name());
  return doc;
}

LoadReport load_corpus(const fs::path& path, int threads) {
  if (!fs::exists(path)) {
    throw Error(ErrorKind::kIo, "corpus path does not exist: " + path.string());
  }
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    const fs::path base = path.parent_path();
    for (const auto& line : read_lines(path)) {
      if (is_blank(line) || line.front() == '#') continue;
      fs::path p = line;
      files.push_back(p.is_absolute() ? p : base / p);
    }
  }
  for (const auto& f : files) {
    if (!fs::exists(f)) {
      throw Error(ErrorKind::kIo, "alignment file missing: " + f.string());
    }
  }

  struct Slot {
    std::optional<AlignedResponse> response;
    std::string reject;
  };
  std::vector<Slot> slots(files.size());
  parallel_for(files.size(), threads, [&](std::size_t i) {
    try {
      json doc = json::parse(read_file(files[i]));
      AlignedResponse r = parse_response(doc, files[i].parent_path());
      std::string why = validate_response(r);
      if (why.empty()) {
        slots[i].response = std::move(r);
      } else {
        slots[i].reject = std::move(why);
      }
    } catch (const json::exception& e) {
      slots[i].reject = std::string("malformed JSON: ") + e.what();
    } catch (const Error& e) {
      slots[i].reject = e.what();
    }
  });

  LoadReport report;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (slots[i].response) {
      report.responses.push_back(std::move(*slots[i].response));
    } else {
      report.rejects.emplace_back(files[i].string(), slots[i].reject);
    }
  }
  if (files.empty()) report.warnings.push_back("empty manifest: corpus has no responses");
  std::sort(report.responses.begin(), report.responses.end(),
            [](const AlignedResponse& a, const AlignedResponse& b) {
              return std::tie(a.prompt_id, a.response_id) <
                     std::tie(b.prompt_id, b.response_id);
            });
  for (std::size_t i = 1; i < report.responses.size(); ++i) {
    const auto& a = report.responses[i - 1];
    const auto& b = report.responses[i];
    if (a.prompt_id == b.prompt_id && a.response_id == b.response_id) {
      report.warnings.push_back("duplicate response id " + b.response_id);
    }
  }
  return report;
}

std::unordered_set<std::string> default_filled_pauses() {
  return {"uh", "um", "er", "err", "hmm", "mm"};
}

LexicalResources load_resources(const fs::path& dir) {
  LexicalResources res;
  for (const auto& line : read_lines(dir / "frequency.tsv")) {
    if (is_blank(line)) continue;
    std::istringstream ss(line);
    std::string word;
    int rank = 0;
    if (!std::getline(ss, word, '\t') || !(ss >> rank) || rank < 1) {
      throw Error(ErrorKind::kParse, "bad frequency entry: " + line);
    }
    res.frequency_rank[lowercase(word)] = rank;
  }
  for (const auto& line : read_lines(dir / "complexity.tsv")) {
    if (is_blank(line)) continue;
    std::istringstream ss(line);
    std::string word;
    double avg = 0.0, mode = 0.0;
    if (!std::getline(ss, word, '\t') || !(ss >> avg >> mode)) {
      throw Error(ErrorKind::kParse, "bad complexity entry: " + line);
    }
    if (avg < 1.0 || avg > 6.0 || mode < 1.0 || mode > 6.0) {
      throw Error(ErrorKind::kParse, "complexity score outside [1,6]: " + line);
    }
    res.complexity_avg[lowercase(word)] = avg;
    res.complexity_mode[lowercase(word)] = mode;
  }
  for (const auto& line : read_lines(dir / "stopwords.txt")) {
    if (!is_blank(line)) res.stopwords.insert(lowercase(line));
  }
  if (fs::exists(dir / "filled_pauses.txt")) {
    for (const auto& line : read_lines(dir / "filled_pauses.txt")) {
      if (!is_blank(line)) res.filled_pauses.insert(lowercase(line));
    }
  } else {
    res.filled_pauses = default_filled_pauses();
  }
  return res;
}

void write_resources(const LexicalResources& res, const fs::path& dir) {
  fs::create_directories(dir);
  auto sorted_keys = [](const auto& m) {
    std::vector<std::string> keys;
    for (const auto& kv : m) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    return keys;
  };
  {
    std::ofstream out(dir / "frequency.tsv");
    for (const auto& w : sorted_keys(res.frequency_rank)) {
      out << w << '\t' << res.frequency_rank.at(w) << '\n';
    }
  }
  {
    std::ofstream out(dir / "complexity.tsv");
    for (const auto& w : sorted_keys(res.complexity_avg)) {
      const auto mode = res.complexity_mode.find(w);
      out << w << '\t' << res.complexity_avg.at(w) << '\t'
          << (mode != res.complexity_mode.end() ? mode->second : res.complexity_avg.at(w))
          << '\n';
    }
  }
  auto write_set = [&](const fs::path& p, const std::unordered_set<std::string>& s) {
    std::vector<std::string> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    std::ofstream out(p);
    for (const auto& w : v) out << w << '\n';
  };
  write_set(dir / "stopwords.txt", res.stopwords);
  write_set(dir / "filled_pauses.txt", res.filled_pauses);
}

std::string_view split_name(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValid: return "valid";
    case Split::kTest: return "test";
  }
  return "?";
}

std::optional<Split> SplitAssignment::split_of(const std::string& id) const {
  if (train.count(id)) return Split::kTrain;
  if (valid.count(id)) return Split::kValid;
  if (test.count(id)) return Split::kTest;
  return std::nullopt;
}

SplitAssignment stratified_split(const std::vector<AlignedResponse>& corpus,
                                 std::array<double, 3> ratios,
                                 std::uint64_t seed) {
  const double total = ratios[0] + ratios[1] + ratios[2];
  if (!(total > 0.0) || ratios[0] < 0 || ratios[1] < 0 || ratios[2] < 0) {
    throw Error(ErrorKind::kInvalidArgument, "split ratios must be non-negative");
  }
  for (double& r : ratios) r /= total;

  std::map<int, std::vector<std::string>> by_grade;
  for (const auto& r : corpus) {
    if (!r.grade) {
      throw Error(ErrorKind::kPrecondition,
                  "response " + r.response_id + " has no grade");
    }
    by_grade[r.grade->ordinal()].push_back(r.response_id);
  }
  for (const auto& [g, ids] : by_grade) {
    if (ids.size() < 3) {
      throw Error(ErrorKind::kPrecondition,
                  "grade " + std::string(Grade::from_ordinal(g).name()) +
                      " has fewer than 3 responses");
    }
  }

  SplitAssignment out;
  out.ratios = ratios;
  out.seed = seed;
  std::array<std::set<std::string>*, 3> targets = {&out.train, &out.valid, &out.test};
  // Running totals used to pick which splits absorb a grade's remainder so
  // split sizes stay close to their global targets.
  std::array<double, 3> cumulative_target{};
  std::array<double, 3> cumulative_assigned{};

  for (auto& [g, ids] : by_grade) {
    std::sort(ids.begin(), ids.end());
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(g)));
    std::shuffle(ids.begin(), ids.end(), rng);

    const double n = static_cast<double>(ids.size());
    std::array<int, 3> counts{};
    std::array<double, 3> frac{};
    int assigned = 0;
    for (int s = 0; s < 3; ++s) {
      const double exact = n * ratios[s];
      counts[s] = static_cast<int>(std::floor(exact + 1e-9));
      frac[s] = exact - counts[s];
      assigned += counts[s];
      cumulative_target[s] += exact;
    }
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const bool fa = frac[a] > 1e-9, fb = frac[b] > 1e-9;
      if (fa != fb) return fa;
      const double da = cumulative_target[a] - cumulative_assigned[a] - counts[a];
      const double db = cumulative_target[b] - cumulative_assigned[b] - counts[b];
      if (std::abs(da - db) > 1e-9) return da > db;
      if (std::abs(frac[a] - frac[b]) > 1e-9) return frac[a] > frac[b];
      return a < b;
    });
    for (int k = 0; assigned < static_cast<int>(ids.size()); ++k) {
      ++counts[order[k % 3]];
      ++assigned;
    }
    std::size_t pos = 0;
    for (int s = 0; s < 3; ++s) {
      for (int k = 0; k < counts[s]; ++k) targets[s]->insert(ids[pos++]);
      cumulative_assigned[s] += counts[s];
    }
  }
  return out;
}

}  // namespace speechscore
