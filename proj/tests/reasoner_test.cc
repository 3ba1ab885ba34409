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


#include "nalqa/reasoner.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "nalqa/error.h"
#include "nalqa/gazetteer.h"
#include "nalqa/ontology.h"
#include "golden.h"
#include "properties.h"
#include "test_util.h"

namespace nalqa {
namespace {

using testing::Data;
using testing::Fixture;
using testing::Instance;
using testing::RandomInstance;
using testing::RegressionCase;
using testing::AnswerTuples;

std::vector<std::string> Strings(const std::vector<PathSequence> &paths) {
  std::vector<std::string> out;
  for (const auto &p : paths) out.push_back(p.ToString());
  return out;
}

class ReasonerTest : public ::testing::Test {
 protected:
  ReasonerTest()
      : onto_(Ontology::Load(Data("cyberlaw.xi"))),
        gaz_(Gazetteer::Load(Data("gazetteer.tsv"))) {}

  Reply Ask(const std::string &kb_fixture, const std::string &question,
            bool relax = true) {
    kb_ = SemanticNetwork::Parse(Fixture(kb_fixture));
    QueryEngine engine(onto_, gaz_, kb_);
    return engine.Ask(question, relax);
  }

  Ontology onto_;
  Gazetteer gaz_;
  SemanticNetwork kb_;
};

TEST_F(ReasonerTest, ReducesQueryNetwork) {
  Reduction r = Reduce(SemanticNetwork::Parse(Fixture("filing_query.tsv")));
  EXPECT_EQ(Strings(r.q),
            (std::vector<std::string>{
                "Microsoft, org_name, bf99, defendant, 1b1c0, is, filing",
                "AT&T, org_name, 6360, plaintiff, 1b1c0, is, filing"}));
  ASSERT_TRUE(r.a);
  EXPECT_EQ(r.a->ToString(), "X, desc, a039, occur_on, 1b1c0, is, filing");
  EXPECT_FALSE(r.under_constrained);
}

TEST_F(ReasonerTest, MatchesStoredNetwork) {
  Reduction r = Reduce(SemanticNetwork::Parse(Fixture("filing_query.tsv")));
  auto s = EnumeratePaths(SemanticNetwork::Parse(Fixture("filing_kb.tsv")));
  MatchOutcome m = Match(r, s, onto_);
  ASSERT_EQ(m.kind, OutcomeKind::kAnswers);
  ASSERT_EQ(m.answers.size(), 1u);
  EXPECT_EQ(m.answers[0].value, "2002");
  EXPECT_EQ(m.answers[0].entity, "a039");
  EXPECT_EQ(m.answers[0].event, "1b1c0");
}

TEST_F(ReasonerTest, BuiltQueryReducesLikeHandNetwork) {
  MiniParser parser(gaz_, onto_);
  QueryNetwork qn = BuildQueryNetwork(
      parser.Parse("When did AT&T file its case against Microsoft?"), onto_,
      gaz_);
  EXPECT_EQ(qn.form, QuestionForm::kWh);
  EXPECT_EQ(qn.wh_word, "when");
  Reduction r = Reduce(qn.net);
  // Compare with object ids blanked.
  auto blank = [](std::vector<PathSequence> ps) {
    std::set<std::string> out;
    for (auto &p : ps) {
      p.n2 = p.n3 = "_";
      out.insert(p.ToString());
    }
    return out;
  };
  Reduction hand = Reduce(SemanticNetwork::Parse(Fixture("filing_query.tsv")));
  EXPECT_EQ(blank(r.q), blank(hand.q));
  ASSERT_TRUE(r.a);
  EXPECT_EQ(blank({*r.a}), blank({*hand.a}));
}

TEST_F(ReasonerTest, YesNoNetworkHasNoAnswerPath) {
  MiniParser parser(gaz_, onto_);
  QueryNetwork qn = BuildQueryNetwork(
      parser.Parse("Did Vonage initiate any legal actions against Microsoft?"),
      onto_, gaz_);
  EXPECT_EQ(qn.form, QuestionForm::kYesNo);
  EXPECT_FALSE(qn.marker);
  Reduction r = Reduce(qn.net);
  EXPECT_FALSE(r.a);
  EXPECT_EQ(r.q.size(), EnumeratePaths(qn.net).size());
}

TEST_F(ReasonerTest, MarkerOnlyNetworkIsUnderConstrained) {
  SemanticNetwork q;
  q.Insert({"e", "is", "filing"});
  q.Insert({"e", "occur_on", "d"});
  q.Insert({"d", "is", "date"});
  q.Insert({"d", "desc", "X"});
  Reduction r = Reduce(q);
  EXPECT_TRUE(r.q.empty());
  EXPECT_TRUE(r.under_constrained);
  auto s = EnumeratePaths(SemanticNetwork::Parse(Fixture("regression_kb.tsv")));
  MatchOutcome m = Match(r, s, onto_);
  EXPECT_TRUE(m.under_constrained);
  ASSERT_EQ(m.kind, OutcomeKind::kAnswers);
  std::set<std::string> events;
  for (const auto &a : m.answers) events.insert(a.event);
  EXPECT_EQ(events, (std::set<std::string>{"ev02", "ev04"}));
}

TEST_F(ReasonerTest, AnswersFilingDate) {
  Reply r = Ask("filing_kb.tsv",
                "When did AT&T file its case against Microsoft?");
  EXPECT_TRUE(r.answered);
  EXPECT_EQ(r.text, "Filing took place on 2002");
}

TEST_F(ReasonerTest, RelaxationAdmitsSubclasses) {
  auto classes = [&](const Reply &r) {
    std::set<std::string> out;
    for (const auto &a : r.outcome.answers) {
      out.insert(kb_.ClassOf(a.event).value_or(""));
    }
    return out;
  };
  const char *q = "Who presided the case against Microsoft?";
  Reply relaxed = Ask("relax_kb.tsv", q);
  EXPECT_EQ(classes(relaxed),
            (std::set<std::string>{"resolution", "appeal", "filing"}));
  Reply exact = Ask("relax_kb.tsv", q, /*relax=*/false);
  EXPECT_TRUE(classes(exact).empty());
  EXPECT_EQ(exact.outcome.kind, OutcomeKind::kEventMissing);
  EXPECT_FALSE(exact.answered);
}

TEST_F(ReasonerTest, EventMissingNamesFailingRole) {
  Reply r = Ask("regression_kb.tsv",
                "When was the filing of the case against Microsoft by "
                "RealNetworks?");
  EXPECT_EQ(r.outcome.kind, OutcomeKind::kEventMissing);
  EXPECT_EQ(r.text,
            testing::kMissingFiling);
  EXPECT_FALSE(r.answered);
}

TEST_F(ReasonerTest, EventMissingListsAllWhenNothingMatches) {
  SemanticNetwork q;
  q.Insert({"e", "is", "filing"});
  q.Insert({"e", "plaintiff", "a"});
  q.Insert({"a", "is", "company"});
  q.Insert({"a", "org_name", "Oracle"});
  q.Insert({"e", "defendant", "b"});
  q.Insert({"b", "is", "company"});
  q.Insert({"b", "org_name", "Google"});
  auto s = EnumeratePaths(SemanticNetwork::Parse(Fixture("regression_kb.tsv")));
  Reduction r = Reduce(q);
  MatchOutcome m = Match(r, s, onto_);
  ASSERT_EQ(m.kind, OutcomeKind::kEventMissing);
  QueryNetwork qn{q, std::nullopt, QuestionForm::kYesNo, "", ""};
  EXPECT_EQ(Respond(m, qn, r, kb_, onto_),
            "There is no such filing event involving Oracle as plaintiff and "
            "Google as defendant.");
}

TEST_F(ReasonerTest, KnowledgeMissing) {
  Reply r = Ask("regression_kb.tsv",
                "When was the appeal of the case by RealNetworks against "
                "Microsoft?");
  EXPECT_EQ(r.outcome.kind, OutcomeKind::kKnowledgeMissing);
  EXPECT_EQ(r.outcome.events, (std::vector<std::string>{"ev06"}));
  EXPECT_FALSE(r.answered);
  EXPECT_NE(r.text.find("appeal"), std::string::npos);
}

TEST_F(ReasonerTest, SpellingErrorUnderlinesToken) {
  Reply r = Ask("regression_kb.tsv",
                "When was the closing of the caset against Microsoft?");
  EXPECT_FALSE(r.answered);
  EXPECT_EQ(r.unknown_words, (std::vector<std::string>{"caset"}));
  EXPECT_EQ(r.text,
            "There are some spelling errors in the question. When was the "
            "closing of the _caset_ against Microsoft");
}

TEST_F(ReasonerTest, CountsDistinctValues) {
  // Oracle: distinct plaintiff names over events whose defendant is
  // Microsoft, read straight from the triples.
  SemanticNetwork kb = SemanticNetwork::Parse(Fixture("count_kb.tsv"));
  std::map<std::string, std::string> name;
  std::map<std::string, std::map<std::string, std::string>> roles;
  for (const auto &t : kb.triples()) {
    if (t.edge == "org_name") name[t.node1] = t.node2;
    if (t.edge == "plaintiff" || t.edge == "defendant") {
      roles[t.node1][t.edge] = t.node2;
    }
  }
  std::set<std::string> plaintiffs;
  for (auto &[ev, r] : roles) {
    if (name[r["defendant"]] == "Microsoft") {
      plaintiffs.insert(name[r["plaintiff"]]);
    }
  }
  ASSERT_EQ(plaintiffs.size(), 3u);
  Reply r = Ask("count_kb.tsv", "How many companies sued Microsoft?");
  EXPECT_EQ(r.text, std::to_string(plaintiffs.size()));
}

TEST_F(ReasonerTest, TemplateElidesConstrainedAndMissingClauses) {
  Reply r = Ask("regression_kb.tsv",
                "When was the filing of the case against Microsoft?");
  EXPECT_EQ(r.text, "Filing took place on 2002 by AT&T");
  r = Ask("regression_kb.tsv",
          "Which judge presided the ruling of the case by RealNetworks "
          "against Microsoft?");
  EXPECT_EQ(r.text, "Judge James Ware chaired the resolution of the case");
}

TEST_F(ReasonerTest, OneLinePerEventInIdOrder) {
  Reply r = Ask("relax_kb.tsv", "Who presided the case against Microsoft?");
  EXPECT_EQ(r.text,
            "Anne Black chaired the resolution of the case\n"
            "Brian Chase chaired the appeal of the case\n"
            "Carol Dunn chaired the filing of the case by AT&T");
}

TEST_F(ReasonerTest, RendersEntitiesInDisplayOrder) {
  kb_ = SemanticNetwork::Parse(Fixture("regression_kb.tsv"));
  EXPECT_EQ(RenderEntity(kb_, onto_, "d_040209"), "Monday 9 February 2004");
  EXPECT_EQ(RenderEntity(kb_, onto_, "p_pauley"), "Judge William Pauley III");
  EXPECT_EQ(RenderEntity(kb_, onto_, "k_fed"), "federal court");
  EXPECT_EQ(RenderEntity(kb_, onto_, "v_patent"), "complex patent lawsuit");
}

TEST_F(ReasonerTest, ParseErrorsPropagate) {
  kb_ = SemanticNetwork::Parse(Fixture("regression_kb.tsv"));
  QueryEngine engine(onto_, gaz_, kb_);
  try {
    engine.Ask("Who is Microsoft?");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoMarker);
  }
  try {
    engine.Ask("Microsoft sued AT&T and");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOutOfSubset);
  }
}

// Published answers over the hand-built knowledge base.
std::string Question(int number) {
  std::istringstream in(Fixture("questions.txt"));
  std::string line;
  for (int i = 0; i < number && std::getline(in, line); ++i) {
  }
  return line;
}

std::vector<RegressionCase> AllRegressionCases() {
  auto out = testing::PublishedAnswers();
  for (const auto &c : testing::FurtherAnswers()) out.push_back(c);
  return out;
}

class RegressionTest : public ReasonerTest,
                       public ::testing::WithParamInterface<RegressionCase> {};

TEST_P(RegressionTest, Responds) {
  Reply r = Ask("regression_kb.tsv", Question(GetParam().number));
  EXPECT_EQ(r.text, GetParam().response);
}

INSTANTIATE_TEST_SUITE_P(
    Published, RegressionTest, ::testing::ValuesIn(AllRegressionCases()),
    [](const ::testing::TestParamInfo<RegressionCase> &info) {
      return "q" + std::to_string(info.param.number);
    });

TEST_F(ReasonerTest, MatcherEqualsNaiveReference) {
  EXPECT_EQ(testing::CheckMatcherAgainstNaive(onto_, 2000, 5, 20261018), "");
}

TEST_F(ReasonerTest, RelaxationIsMonotone) {
  EXPECT_EQ(testing::CheckRelaxationMonotone(onto_, 500, 7), "");
}

TEST_F(ReasonerTest, LeafClassQueriesIgnoreRelaxation) {
  std::mt19937 rng(11);
  int leaf_queries = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Instance in = RandomInstance(rng, 5);
    std::string cls = in.query.ClassOf("qe").value();
    if (!onto_.Children(cls).empty()) continue;
    ++leaf_queries;
    Reduction r = Reduce(in.query);
    auto s = EnumeratePaths(in.kb);
    MatchOutcome a = Match(r, s, onto_, true);
    MatchOutcome b = Match(r, s, onto_, false);
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_EQ(AnswerTuples(a), AnswerTuples(b));
    EXPECT_EQ(Strings(a.failed), Strings(b.failed));
  }
  EXPECT_GT(leaf_queries, 200);
}

// "Yes" holds exactly when each constraint, turned into the marker, comes
// back among the answers.
TEST_F(ReasonerTest, YesNoAgreesWithWhForm) {
  std::mt19937 rng(3);
  int yes = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Instance in = RandomInstance(rng, 4);
    if (in.has_marker) continue;
    Reduction yn = Reduce(in.query);
    auto s = EnumeratePaths(in.kb);
    bool confirmed = Match(yn, s, onto_).kind == OutcomeKind::kConfirmed;
    yes += confirmed;
    for (size_t k = 0; k < yn.q.size(); ++k) {
      Reduction wh;
      for (size_t i = 0; i < yn.q.size(); ++i) {
        if (i != k) wh.q.push_back(yn.q[i]);
      }
      PathSequence a = yn.q[k];
      a.n1 = kAnswerMarker;
      a.e1 = "desc";
      wh.a = a;
      MatchOutcome m = Match(wh, s, onto_);
      bool found = std::any_of(
          m.answers.begin(), m.answers.end(),
          [&](const AnswerItem &x) { return x.value == yn.q[k].n1; });
      EXPECT_EQ(found, confirmed);
    }
  }
  EXPECT_GT(yes, 5);
}

}  // namespace
}  // namespace nalqa
