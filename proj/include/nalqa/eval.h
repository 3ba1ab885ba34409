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


#ifndef NALQA_EVAL_H_
#define NALQA_EVAL_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nalqa {

enum class Verdict { kX, kY, kTie };

// Which of two systems gave the better responses in one category.
struct Judgment {
  std::string category;  // BQ, LQ, O1, O2, ...
  std::string x;
  std::string y;
  Verdict verdict = Verdict::kTie;
};

// TSV rows `category, system_x, system_y, verdict` with verdict x, y or
// tie; an empty verdict is a tie. A leading header row is skipped.
std::vector<Judgment> ParseJudgments(std::string_view tsv);

// Systems in order of first appearance.
std::vector<std::string> SystemsOf(const std::vector<Judgment> &judgments);

struct Score {
  std::string system;
  int total = 0;
};

// Pair-wise relative comparison: the better side of each judgment gets a
// point. Every category needs exactly one judgment for every unordered
// pair of systems; a gap throws kMissingJudgment.
std::vector<Score> ScoreSystems(const std::vector<std::string> &systems,
                                const std::vector<Judgment> &judgments);

struct TimeStats {
  size_t n = 0;
  double max = 0;
  double min = 0;
  double mean = 0;
  double stddev = 0;  // sample, n - 1
  double population_stddev = 0;
  double population_variance = 0;
};

// One value per line; blank lines and '#' comments are skipped.
std::vector<double> ParseSeries(std::string_view text);

// Throws kEmptySeries for an empty series.
TimeStats ComputeTimeStats(const std::vector<double> &series);

}  // namespace nalqa

#endif  // NALQA_EVAL_H_
