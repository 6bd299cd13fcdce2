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

#include "speechscore/feature_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "speechscore/common.hpp"

namespace speechscore {
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kMetaColumns = 5;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::kParse, "not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

FeatureMatrix::FeatureMatrix(std::vector<std::string> names,
                             std::vector<std::string> groups)
    : names_(std::move(names)), groups_(std::move(groups)) {
  if (names_.size() != groups_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "names/groups length mismatch");
  }
}

void FeatureMatrix::add_row(RowMeta meta, std::span<const double> values) {
  if (values.size() != cols()) {
    throw Error(ErrorKind::kSchemaMismatch, "row width does not match columns");
  }
  meta_.push_back(std::move(meta));
  data_.insert(data_.end(), values.begin(), values.end());
}

std::vector<double> FeatureMatrix::column(std::size_t c) const {
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
  return out;
}

std::optional<std::size_t> FeatureMatrix::column_index(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> idx) const {
  FeatureMatrix out(names_, groups_);
  for (std::size_t i : idx) out.add_row(meta_[i], row(i));
  return out;
}

FeatureMatrix FeatureMatrix::select_columns(std::span<const std::size_t> idx) const {
  std::vector<std::string> names, groups;
  for (std::size_t c : idx) {
    names.push_back(names_[c]);
    groups.push_back(groups_[c]);
  }
  FeatureMatrix out(std::move(names), std::move(groups));
  std::vector<double> buf(idx.size());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t k = 0; k < idx.size(); ++k) buf[k] = at(r, idx[k]);
    out.add_row(meta_[r], buf);
  }
  return out;
}

FeatureMatrix FeatureMatrix::select_groups(std::span<const std::string> groups) const {
  std::vector<std::size_t> idx;
  for (std::size_t c = 0; c < cols(); ++c) {
    if (std::find(groups.begin(), groups.end(), groups_[c]) != groups.end()) {
      idx.push_back(c);
    }
  }
  return select_columns(idx);
}

std::vector<std::size_t> FeatureMatrix::rows_in_split(const std::string& split) const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < rows(); ++r) {
    if (meta_[r].split == split) out.push_back(r);
  }
  return out;
}

std::vector<std::size_t> FeatureMatrix::rows_in_prompt(const std::string& prompt) const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < rows(); ++r) {
    if (meta_[r].prompt_id == prompt) out.push_back(r);
  }
  return out;
}

std::vector<std::string> FeatureMatrix::prompts() const {
  std::set<std::string> s;
  for (const auto& m : meta_) s.insert(m.prompt_id);
  return {s.begin(), s.end()};
}

std::string FeatureMatrix::to_csv() const {
  std::ostringstream out;
  out << "META,META,META,META,META";
  for (const auto& g : groups_) out << ',' << csv_field(g);
  out << "\nresponse_id,prompt_id,split,grade,grade_2";
  for (const auto& n : names_) out << ',' << csv_field(n);
  out << '\n';
  for (std::size_t r = 0; r < rows(); ++r) {
    const RowMeta& m = meta_[r];
    out << csv_field(m.response_id) << ',' << csv_field(m.prompt_id) << ','
        << m.split << ',';
    if (m.grade >= 0) out << m.grade;
    out << ',';
    if (m.second_grade >= 0) out << m.second_grade;
    for (std::size_t c = 0; c < cols(); ++c) out << ',' << format_double(at(r, c));
    out << '\n';
  }
  return out.str();
}

void FeatureMatrix::write_csv(const fs::path& path) const {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << to_csv();
}

FeatureMatrix FeatureMatrix::read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::string line;
  std::vector<std::string> groups, names;
  if (!std::getline(in, line)) throw Error(ErrorKind::kParse, "empty feature CSV");
  groups = split_csv_line(line);
  if (!std::getline(in, line)) throw Error(ErrorKind::kParse, "missing name header");
  names = split_csv_line(line);
  if (groups.size() != names.size() || names.size() < kMetaColumns ||
      names[0] != "response_id") {
    throw Error(ErrorKind::kParse, "malformed feature CSV header in " + path.string());
  }
  FeatureMatrix m(std::vector<std::string>(names.begin() + kMetaColumns, names.end()),
                  std::vector<std::string>(groups.begin() + kMetaColumns, groups.end()));
  std::vector<double> values(m.cols());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != names.size()) {
      throw Error(ErrorKind::kParse, "ragged row in " + path.string());
    }
    RowMeta meta;
    meta.response_id = fields[0];
    meta.prompt_id = fields[1];
    meta.split = fields[2];
    meta.grade = fields[3].empty() ? -1 : std::stoi(fields[3]);
    meta.second_grade = fields[4].empty() ? -1 : std::stoi(fields[4]);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      values[c] = parse_double(fields[c + kMetaColumns]);
    }
    m.add_row(std::move(meta), values);
  }
  return m;
}

Standardizer Standardizer::fit(const FeatureMatrix& train) {
  if (train.rows() == 0) {
    throw Error(ErrorKind::kPrecondition, "cannot fit standardizer on empty matrix");
  }
  Standardizer s;
  s.names_ = train.names();
  s.means_.resize(train.cols());
  s.sds_.resize(train.cols());
  for (std::size_t c = 0; c < train.cols(); ++c) {
    const auto col = train.column(c);
    s.means_[c] = mean(col);
    double ss = 0.0;
    for (double x : col) ss += (x - s.means_[c]) * (x - s.means_[c]);
    const double sd = std::sqrt(ss / static_cast<double>(col.size()));
    // Guard against round-off in constant columns.
    s.sds_[c] = sd > 1e-12 * std::max(1.0, std::abs(s.means_[c])) ? sd : 0.0;
  }
  return s;
}

void Standardizer::check_schema(const FeatureMatrix& m) const {
  if (m.names() != names_) {
    throw Error(ErrorKind::kSchemaMismatch,
                "feature columns differ from those the standardizer was fitted on");
  }
}

FeatureMatrix Standardizer::apply(const FeatureMatrix& m) const {
  check_schema(m);
  FeatureMatrix out = m;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      if (sds_[c] == 0.0) continue;
      out.at(r, c) = (out.at(r, c) - means_[c]) / sds_[c];
    }
  }
  return out;
}

FeatureMatrix Standardizer::inverse(const FeatureMatrix& m) const {
  check_schema(m);
  FeatureMatrix out = m;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      if (sds_[c] == 0.0) continue;
      out.at(r, c) = out.at(r, c) * sds_[c] + means_[c];
    }
  }
  return out;
}

nlohmann::json Standardizer::to_json() const {
  return {{"names", names_}, {"means", means_}, {"sds", sds_}};
}

Standardizer Standardizer::from_json(const nlohmann::json& j) {
  Standardizer s;
  s.names_ = j.at("names").get<std::vector<std::string>>();
  s.means_ = j.at("means").get<std::vector<double>>();
  s.sds_ = j.at("sds").get<std::vector<double>>();
  return s;
}

}  // namespace speechscore
