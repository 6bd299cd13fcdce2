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

#ifndef SPEECHSCORE_COMMON_HPP_
#define SPEECHSCORE_COMMON_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace speechscore {

enum class ErrorKind {
  kInvalidArgument,
  kIo,
  kParse,
  kEmptyResponse,
  kNoNuclei,
  kDegenerateCover,
  kSchemaMismatch,
  kPrecondition,
};

std::string_view error_kind_name(ErrorKind kind);

// All library failures surface as this exception; `kind` is stable and is
// what the CLI reports in its error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Ordered name/value list produced by every feature extractor. Flags name
// degenerate conditions (e.g. "no_long_silences") without aborting.
struct FeatureSet {
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> flags;

  void add(std::string name, double value) {
    values.emplace_back(std::move(name), value);
  }
  void flag(std::string name) { flags.push_back(std::move(name)); }
  bool has_flag(std::string_view name) const;
  // Throws kInvalidArgument if the feature is absent.
  double at(std::string_view name) const;
  bool contains(std::string_view name) const;
  void append(const FeatureSet& other);
};

double mean(std::span<const double> xs);
// Population standard deviation.
double population_sd(std::span<const double> xs);
// Mean absolute deviation around the mean.
double mean_absolute_deviation(std::span<const double> xs);

// Seed for an independent stream; identical (seed, stream) gives identical
// output regardless of which thread consumes it.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
std::uint64_t hash_string(std::string_view s);

// Runs fn(i) for i in [0, n) on up to `threads` workers. Callers write
// results into slot i so the outcome never depends on scheduling.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace speechscore

#endif  // SPEECHSCORE_COMMON_HPP_
