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

#include "speechscore/plots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "speechscore/common.hpp"
#include "speechscore/feature_matrix.hpp"

namespace speechscore {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

std::string header(int w, int h, const std::string& title) {
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
    << "\" viewBox=\"0 0 " << w << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << w / 2 << "\" y=\"16\" text-anchor=\"middle\" font-size=\"13\">"
    << escape(title) << "</text>\n";
  return o.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string importance_svg(const ImportanceRanking& r, std::size_t top_k) {
  const std::size_t n = std::min(top_k, r.items.size());
  const int row = 18, left = 230, width = 640;
  const int height = 40 + static_cast<int>(n) * row + 20;
  std::ostringstream o;
  o << header(width, height, r.method == ImportanceMethod::kGain ? "Feature importance (gain)"
                                                                 : "Feature importance (splits)");
  const double mx = n > 0 ? r.items[0].second : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int y = 30 + static_cast<int>(i) * row;
    const double len = mx > 0 ? (width - left - 70) * r.items[i].second / mx : 0.0;
    o << "<text x=\"" << left - 6 << "\" y=\"" << y + 12 << "\" text-anchor=\"end\">"
      << escape(r.items[i].first) << "</text>\n"
      << "<rect x=\"" << left << "\" y=\"" << y + 2 << "\" width=\"" << num(len)
      << "\" height=\"" << row - 4 << "\" fill=\"#1f77b4\"/>\n"
      << "<text x=\"" << num(left + len + 4) << "\" y=\"" << y + 12 << "\">"
      << num(r.items[i].second) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string pdp_svg(const PdpCurve& c) {
  const int width = 520, height = 360, l = 60, rgt = 20, t = 30, b = 50;
  std::ostringstream o;
  o << header(width, height, "Partial dependence: " + c.feature);
  if (c.grid.empty()) return o.str() + "</svg>\n";
  const double x0 = c.grid.front(), x1 = c.grid.back();
  double y0 = *std::min_element(c.mean_prediction.begin(), c.mean_prediction.end());
  double y1 = *std::max_element(c.mean_prediction.begin(), c.mean_prediction.end());
  if (y1 - y0 < 1e-12) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  auto px = [&](double x) { return x1 > x0 ? l + (width - l - rgt) * (x - x0) / (x1 - x0) : l + (width - l - rgt) / 2.0; };
  auto py = [&](double y) { return height - b - (height - t - b) * (y - y0) / (y1 - y0); };
  o << "<line x1=\"" << l << "\" y1=\"" << height - b << "\" x2=\"" << width - rgt << "\" y2=\""
    << height - b << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << l << "\" y1=\"" << t << "\" x2=\"" << l << "\" y2=\"" << height - b
    << "\" stroke=\"black\"/>\n";
  o << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    o << num(px(c.grid[i])) << ',' << num(py(c.mean_prediction[i])) << ' ';
  }
  o << "\"/>\n";
  o << "<text x=\"" << l << "\" y=\"" << height - b + 16 << "\">" << num(x0) << "</text>\n"
    << "<text x=\"" << width - rgt << "\" y=\"" << height - b + 16 << "\" text-anchor=\"end\">"
    << num(x1) << "</text>\n"
    << "<text x=\"" << l - 4 << "\" y=\"" << t + 4 << "\" text-anchor=\"end\">" << num(y1)
    << "</text>\n"
    << "<text x=\"" << l - 4 << "\" y=\"" << height - b << "\" text-anchor=\"end\">" << num(y0)
    << "</text>\n"
    << "<text x=\"" << width / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">"
    << escape(c.feature) << "</text>\n</svg>\n";
  return o.str();
}

std::string shap_summary_svg(const ShapSummary& s, std::size_t top_k) {
  const std::size_t n = std::min(top_k, s.ranking.size());
  const int row = 22, left = 230, width = 720, right = 30;
  const int height = 40 + static_cast<int>(n) * row + 40;
  std::map<std::string, int> rank;
  for (std::size_t i = 0; i < n; ++i) rank[s.ranking[i].first] = static_cast<int>(i);
  double lim = 1e-12;
  for (const auto& p : s.points) {
    if (rank.count(p.feature)) lim = std::max(lim, std::abs(p.phi));
  }
  auto px = [&](double phi) { return left + (width - left - right) * (phi + lim) / (2 * lim); };
  std::ostringstream o;
  o << header(width, height, "SHAP summary");
  o << "<line x1=\"" << num(px(0)) << "\" y1=\"28\" x2=\"" << num(px(0)) << "\" y2=\""
    << height - 36 << "\" stroke=\"#888\"/>\n";
  for (std::size_t i = 0; i < n; ++i) {
    o << "<text x=\"" << left - 6 << "\" y=\"" << 30 + i * row + 14 << "\" text-anchor=\"end\">"
      << escape(s.ranking[i].first) << "</text>\n";
  }
  std::map<std::string, int> jitter;
  for (const auto& p : s.points) {
    const auto it = rank.find(p.feature);
    if (it == rank.end()) continue;
    const int k = jitter[p.feature]++;
    const double y = 30 + it->second * row + 11 + ((k * 7) % 13 - 6) * 0.7;
    const double t = std::clamp((p.standardized_value + 2.0) / 4.0, 0.0, 1.0);
    const int red = static_cast<int>(std::lround(30 + 225 * t));
    const int blue = static_cast<int>(std::lround(255 - 225 * t));
    o << "<circle cx=\"" << num(px(p.phi)) << "\" cy=\"" << num(y) << "\" r=\"2.5\" fill=\"rgb("
      << red << ",40," << blue << ")\" fill-opacity=\"0.7\"/>\n";
  }
  o << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 12
    << "\" text-anchor=\"middle\">SHAP value (impact on model output)</text>\n</svg>\n";
  return o.str();
}

std::string importance_csv(const ImportanceRanking& r) {
  std::ostringstream o;
  o << "feature,importance\n";
  for (const auto& [name, v] : r.items) o << csv_field(name) << ',' << format_double(v) << '\n';
  return o.str();
}

std::string pdp_csv(const PdpCurve& c) {
  std::ostringstream o;
  o << csv_field(c.feature) << ",mean_prediction\n";
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    o << format_double(c.grid[i]) << ',' << format_double(c.mean_prediction[i]) << '\n';
  }
  return o.str();
}

std::string shap_csv(const ShapExplanation& e) {
  std::ostringstream o;
  o << "base_value";
  for (const auto& n : e.feature_names) o << ',' << csv_field("phi:" + n);
  o << '\n';
  for (std::size_t i = 0; i < e.phi.rows; ++i) {
    o << format_double(e.base_value);
    for (std::size_t j = 0; j < e.phi.cols; ++j) o << ',' << format_double(e.phi(i, j));
    o << '\n';
  }
  return o.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << content;
}

}  // namespace speechscore
