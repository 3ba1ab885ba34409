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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "nalqa/error.h"
#include "test_util.h"

namespace nalqa {
namespace {

using testing::Fixture;

std::map<std::string, int> Totals(const std::vector<Score> &scores) {
  std::map<std::string, int> out;
  for (const auto &s : scores) out[s.system] = s.total;
  return out;
}

TEST(ScoreTest, PairwiseTable) {
  auto judgments = ParseJudgments(Fixture("judgments.tsv"));
  ASSERT_EQ(judgments.size(), 12u);
  auto systems = SystemsOf(judgments);
  EXPECT_EQ(systems,
            (std::vector<std::string>{"AnswerBus", "NaLURI", "START"}));
  EXPECT_EQ(Totals(ScoreSystems(systems, judgments)),
            (std::map<std::string, int>{
                {"AnswerBus", 0}, {"NaLURI", 4}, {"START", 2}}));
}

TEST(ScoreTest, BlankVerdictIsTie) {
  auto j = ParseJudgments("LQ\tA\tB\t\nBQ\tA\tB\nO1\tA\tB\ttie\n");
  ASSERT_EQ(j.size(), 3u);
  for (const auto &x : j) EXPECT_EQ(x.verdict, Verdict::kTie);
}

TEST(ScoreTest, SingleSystemHasNoPairs) {
  auto scores = ScoreSystems({"NaLURI"}, {});
  ASSERT_EQ(scores.size(), 1u);
  EXPECT_EQ(scores[0].total, 0);
}

TEST(ScoreTest, AllTies) {
  std::vector<Judgment> j;
  for (const char *c : {"BQ", "LQ"}) {
    j.push_back({c, "A", "B", Verdict::kTie});
    j.push_back({c, "A", "C", Verdict::kTie});
    j.push_back({c, "C", "B", Verdict::kTie});
  }
  for (const auto &s : ScoreSystems({"A", "B", "C"}, j)) {
    EXPECT_EQ(s.total, 0) << s.system;
  }
}

TEST(ScoreTest, MissingJudgmentNamesGap) {
  std::vector<Judgment> j = {{"BQ", "A", "B", Verdict::kX},
                             {"BQ", "A", "C", Verdict::kX}};
  try {
    ScoreSystems({"A", "B", "C"}, j);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingJudgment);
    EXPECT_NE(std::string(e.what()).find("B vs C"), std::string::npos);
  }
}

TEST(ScoreTest, RejectsBadInput) {
  EXPECT_THROW(ParseJudgments("BQ\tA\tB\tmaybe\n"), Error);
  EXPECT_THROW(ParseJudgments("BQ\tA\n"), Error);
  EXPECT_THROW(ParseJudgments("BQ\tA\tA\tx\n"), Error);
  std::vector<Judgment> dup = {{"BQ", "A", "B", Verdict::kX},
                               {"BQ", "B", "A", Verdict::kX}};
  EXPECT_THROW(ScoreSystems({"A", "B"}, dup), Error);
  EXPECT_THROW(ScoreSystems({"A"}, {{"BQ", "A", "Z", Verdict::kX}}), Error);
}

TEST(ScoreTest, Properties) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + rng() % 5;
    std::vector<std::string> systems;
    for (int i = 0; i < n; ++i) systems.push_back("S" + std::to_string(i));
    int categories = 1 + rng() % 4;
    std::vector<Judgment> j, flipped;
    int decisive = 0;
    for (int c = 0; c < categories; ++c) {
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          Verdict v = static_cast<Verdict>(rng() % 3);
          decisive += v != Verdict::kTie;
          std::string cat = "O" + std::to_string(c + 1);
          j.push_back({cat, systems[a], systems[b], v});
          Verdict w = v == Verdict::kX   ? Verdict::kY
                      : v == Verdict::kY ? Verdict::kX
                                         : Verdict::kTie;
          flipped.push_back({cat, systems[b], systems[a], w});
        }
      }
    }
    std::shuffle(flipped.begin(), flipped.end(), rng);
    auto scores = ScoreSystems(systems, j);
    int sum = 0;
    for (const auto &s : scores) sum += s.total;
    EXPECT_EQ(sum, decisive);
    EXPECT_EQ(Totals(scores), Totals(ScoreSystems(systems, flipped)));
  }
}

TEST(TimeStatsTest, ConstantSeries) {
  TimeStats st = ComputeTimeStats(std::vector<double>(10, 3.0));
  EXPECT_EQ(st.max, 3.0);
  EXPECT_EQ(st.min, 3.0);
  EXPECT_DOUBLE_EQ(st.mean, 3.0);
  EXPECT_DOUBLE_EQ(st.stddev, 0.0);
}

TEST(TimeStatsTest, SmallSeries) {
  TimeStats st = ComputeTimeStats({1, 2, 3});
  EXPECT_DOUBLE_EQ(st.mean, 2.0);
  EXPECT_DOUBLE_EQ(st.stddev, 1.0);
  EXPECT_DOUBLE_EQ(st.population_variance, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(st.population_stddev, std::sqrt(2.0 / 3.0));
}

TEST(TimeStatsTest, SingleValue) {
  TimeStats st = ComputeTimeStats({4.5});
  EXPECT_EQ(st.n, 1u);
  EXPECT_EQ(st.stddev, 0.0);
}

TEST(TimeStatsTest, EmptySeries) {
  try {
    ComputeTimeStats({});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptySeries);
  }
  EXPECT_TRUE(ParseSeries("\n# none\n").empty());
  EXPECT_THROW(ParseSeries("1.5\nabc\n"), Error);
}

TEST(TimeStatsTest, ResponseTimes) {
  auto series = ParseSeries(Fixture("response_times.txt"));
  ASSERT_EQ(series.size(), 45u);
  // Oracle: textbook formulas in long double.
  long double sum = 0;
  for (double v : series) sum += v;
  long double mean = sum / series.size();
  long double ss = 0;
  for (double v : series) ss += (v - mean) * (v - mean);
  TimeStats st = ComputeTimeStats(series);
  EXPECT_NEAR(st.mean, static_cast<double>(mean), 1e-12);
  EXPECT_NEAR(st.stddev, std::sqrt(static_cast<double>(ss / 44)), 1e-12);
  EXPECT_NEAR(st.population_stddev, std::sqrt(static_cast<double>(ss / 45)),
              1e-12);
  EXPECT_NEAR(st.mean, 3.9357, 1e-3);
  EXPECT_DOUBLE_EQ(st.max, 18.3106);
  EXPECT_DOUBLE_EQ(st.min, 2.8990);
}

}  // namespace
}  // namespace nalqa
