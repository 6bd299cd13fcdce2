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

#ifndef SPEECHSCORE_FEATURE_MATRIX_HPP_
#define SPEECHSCORE_FEATURE_MATRIX_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace speechscore {

// Per-row bookkeeping carried alongside the numeric features.
struct RowMeta {
  std::string response_id;
  std::string prompt_id;
  std::string split;   // "train" / "valid" / "test" or empty
  int grade = -1;      // ordinal, -1 when ungraded
  int second_grade = -1;
};

// Dense row-major matrix with named, group-tagged columns.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::vector<std::string> names, std::vector<std::string> groups);

  std::size_t rows() const { return meta_.size(); }
  std::size_t cols() const { return names_.size(); }

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& groups() const { return groups_; }
  const std::vector<RowMeta>& meta() const { return meta_; }
  std::vector<RowMeta>& meta() { return meta_; }

  void add_row(RowMeta meta, std::span<const double> values);

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols(), cols()};
  }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols(), cols()}; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  std::vector<double> column(std::size_t c) const;
  const std::vector<double>& data() const { return data_; }

  std::optional<std::size_t> column_index(const std::string& name) const;

  FeatureMatrix select_rows(std::span<const std::size_t> idx) const;
  FeatureMatrix select_columns(std::span<const std::size_t> idx) const;
  // Keeps only columns whose group tag is in `groups`, preserving order.
  FeatureMatrix select_groups(std::span<const std::string> groups) const;
  std::vector<std::size_t> rows_in_split(const std::string& split) const;
  std::vector<std::size_t> rows_in_prompt(const std::string& prompt) const;
  std::vector<std::string> prompts() const;

  // Two header rows: group tags, then feature names. The leading five META
  // columns hold response_id, prompt_id, split, grade and grade_2.
  void write_csv(const std::filesystem::path& path) const;
  std::string to_csv() const;
  static FeatureMatrix read_csv(const std::filesystem::path& path);

 private:
  std::vector<std::string> names_;
  std::vector<std::string> groups_;
  std::vector<RowMeta> meta_;
  std::vector<double> data_;
};

// Shortest round-trip text form of a double; used in every CSV the tools
// emit so outputs are byte-stable.
std::string format_double(double v);

class Standardizer {
 public:
  // Population statistics over every row of `train`.
  static Standardizer fit(const FeatureMatrix& train);

  // Throws kSchemaMismatch unless column names match the fitted ones.
  FeatureMatrix apply(const FeatureMatrix& m) const;
  FeatureMatrix inverse(const FeatureMatrix& m) const;

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& sds() const { return sds_; }
  bool zero_variance(std::size_t c) const { return sds_[c] == 0.0; }

  nlohmann::json to_json() const;
  static Standardizer from_json(const nlohmann::json& j);

 private:
  void check_schema(const FeatureMatrix& m) const;

  std::vector<std::string> names_;
  std::vector<double> means_;
  std::vector<double> sds_;
};

}  // namespace speechscore

#endif  // SPEECHSCORE_FEATURE_MATRIX_HPP_
