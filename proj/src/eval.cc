// Copyright 2026 The NaLQA Authors.
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


#include "nalqa/eval.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "nalqa/error.h"

namespace nalqa {

namespace {

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> Split(const std::string &line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    out.push_back(Trim(line.substr(start, tab - start)));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

std::pair<std::string, std::string> Unordered(const std::string &a,
                                              const std::string &b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

std::vector<Judgment> ParseJudgments(std::string_view tsv) {
  std::vector<Judgment> out;
  std::istringstream in{std::string(tsv)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty() || Trim(line)[0] == '#') continue;
    auto f = Split(line);
    if (out.empty() && f[0] == "category") continue;
    if (f.size() < 3 || f.size() > 4 || f[0].empty() || f[1].empty() ||
        f[2].empty()) {
      throw Error(ErrorKind::kMalformedLine,
                  "judgments line " + std::to_string(line_no) +
                      ": expected category, system_x, system_y, verdict");
    }
    if (f[1] == f[2]) {
      throw Error(ErrorKind::kMalformedLine,
                  "judgments line " + std::to_string(line_no) +
                      ": a system compared with itself");
    }
    Judgment j{f[0], f[1], f[2], Verdict::kTie};
    std::string v = f.size() == 4 ? f[3] : "";
    if (v == "x") {
      j.verdict = Verdict::kX;
    } else if (v == "y") {
      j.verdict = Verdict::kY;
    } else if (v != "tie" && !v.empty()) {
      throw Error(ErrorKind::kMalformedLine,
                  "judgments line " + std::to_string(line_no) +
                      ": verdict must be x, y or tie, got '" + v + "'");
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<std::string> SystemsOf(const std::vector<Judgment> &judgments) {
  std::vector<std::string> out;
  for (const auto &j : judgments) {
    for (const std::string *s : {&j.x, &j.y}) {
      if (std::find(out.begin(), out.end(), *s) == out.end()) {
        out.push_back(*s);
      }
    }
  }
  return out;
}

std::vector<Score> ScoreSystems(const std::vector<std::string> &systems,
                                const std::vector<Judgment> &judgments) {
  std::map<std::string, int> total;
  for (const auto &s : systems) total[s] = 0;
  std::vector<std::string> categories;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto &j : judgments) {
    for (const std::string *s : {&j.x, &j.y}) {
      if (!total.count(*s)) {
        throw Error(ErrorKind::kInvalidArgument,
                    "judgment names unknown system " + *s);
      }
    }
    auto [a, b] = Unordered(j.x, j.y);
    if (!seen.insert({j.category, a, b}).second) {
      throw Error(ErrorKind::kInvalidArgument,
                  "duplicate judgment for " + j.category + " " + a + "/" + b);
    }
    if (std::find(categories.begin(), categories.end(), j.category) ==
        categories.end()) {
      categories.push_back(j.category);
    }
    if (j.verdict == Verdict::kX) ++total[j.x];
    if (j.verdict == Verdict::kY) ++total[j.y];
  }
  for (const auto &c : categories) {
    for (size_t i = 0; i < systems.size(); ++i) {
      for (size_t k = i + 1; k < systems.size(); ++k) {
        auto [a, b] = Unordered(systems[i], systems[k]);
        if (!seen.count({c, a, b})) {
          throw Error(ErrorKind::kMissingJudgment,
                      "missing judgment for category " + c + ": " +
                          systems[i] + " vs " + systems[k]);
        }
      }
    }
  }
  std::vector<Score> out;
  for (const auto &s : systems) out.push_back({s, total[s]});
  return out;
}

std::vector<double> ParseSeries(std::string_view text) {
  std::vector<double> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string v = Trim(line);
    if (v.empty() || v[0] == '#') continue;
    double d = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(d)) {
      throw Error(ErrorKind::kMalformedLine,
                  "series line " + std::to_string(line_no) +
                      ": not a number: " + v);
    }
    out.push_back(d);
  }
  return out;
}

TimeStats ComputeTimeStats(const std::vector<double> &series) {
  if (series.empty()) {
    throw Error(ErrorKind::kEmptySeries, "empty time series");
  }
  TimeStats st;
  st.n = series.size();
  auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  st.min = *lo;
  st.max = *hi;
  double sum = 0;
  for (double v : series) sum += v;
  st.mean = sum / st.n;
  double ss = 0;
  for (double v : series) ss += (v - st.mean) * (v - st.mean);
  st.population_variance = ss / st.n;
  st.population_stddev = std::sqrt(st.population_variance);
  st.stddev = st.n > 1 ? std::sqrt(ss / (st.n - 1)) : 0.0;
  return st;
}

}  // namespace nalqa
