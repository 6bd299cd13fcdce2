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

// Static SVG renderings and CSV writers for explanations.

#ifndef SPEECHSCORE_PLOTS_HPP_
#define SPEECHSCORE_PLOTS_HPP_

#include <filesystem>
#include <string>

#include "speechscore/explain.hpp"

namespace speechscore {

std::string importance_svg(const ImportanceRanking& ranking, std::size_t top_k = 20);
std::string pdp_svg(const PdpCurve& curve);
// Beeswarm-style: one row per feature (rank on y), phi on x, colour from
// the standardized feature value (blue low, red high).
std::string shap_summary_svg(const ShapSummary& summary, std::size_t top_k = 20);

std::string importance_csv(const ImportanceRanking& ranking);
std::string pdp_csv(const PdpCurve& curve);
std::string shap_csv(const ShapExplanation& explanation);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace speechscore

#endif  // SPEECHSCORE_PLOTS_HPP_
