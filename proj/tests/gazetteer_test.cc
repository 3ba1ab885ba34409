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


#include "nalqa/gazetteer.h"

#include <gtest/gtest.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nalqa/error.h"
#include "nalqa/ontology.h"
#include "properties.h"
#include "test_util.h"

namespace nalqa {
namespace {

using testing::Data;
using KV = std::pair<std::string, std::string>;

class GazetteerTest : public ::testing::Test {
 protected:
  GazetteerTest()
      : onto_(Ontology::Load(Data("cyberlaw.xi"))),
        gaz_(Gazetteer::Load(Data("gazetteer.tsv"))) {}

  // Direct match first, then the second pass, as the recogniser does.
  std::optional<NamedEntity> Recognise(const Gazetteer &gaz,
                                       const std::string &phrase,
                                       const std::string &head) const {
    if (const auto *e = gaz.DirectMatch(phrase)) {
      NamedEntity ne;
      ne.category = e->category;
      ne.attributes = gaz.Bind(*e, phrase, phrase);
      return ne;
    }
    return gaz.SecondPassMatch(phrase, head);
  }

  Ontology onto_;
  Gazetteer gaz_;
};

TEST_F(GazetteerTest, ShippedDataIsValid) {
  EXPECT_NO_THROW(gaz_.Validate(onto_));
  EXPECT_TRUE(gaz_.warnings().empty());
}

TEST_F(GazetteerTest, DirectMatch) {
  const auto *monday = gaz_.DirectMatch("Monday");
  ASSERT_NE(monday, nullptr);
  EXPECT_EQ(monday->category, "date");
  const auto *hp = gaz_.DirectMatch("HP");
  ASSERT_NE(hp, nullptr);
  EXPECT_EQ(hp->category, "company");
  EXPECT_EQ(hp->name, "Hewlett-Packard");
  EXPECT_EQ(gaz_.DirectMatch("deal"), nullptr);
  ASSERT_NE(gaz_.DirectMatch("Deal"), nullptr);
  EXPECT_EQ(gaz_.DirectMatch("Deal")->category, "location");
  // Generic entries never match directly.
  EXPECT_EQ(gaz_.DirectMatch("Corporation"), nullptr);
  EXPECT_EQ(gaz_.DirectMatch("Andrew"), nullptr);
  EXPECT_EQ(gaz_.DirectMatch("filing"), nullptr);
}

TEST_F(GazetteerTest, SecondPassMatch) {
  auto excite = gaz_.SecondPassMatch("Excite Inc.", "Inc.");
  ASSERT_TRUE(excite);
  EXPECT_EQ(excite->category, "company");
  EXPECT_EQ(excite->attributes, (std::vector<KV>{{"org_name", "Excite"}}));

  auto oracle = gaz_.SecondPassMatch("Oracle Corp.", "Corp.");
  ASSERT_TRUE(oracle);
  EXPECT_EQ(oracle->category, "company");
  EXPECT_EQ(oracle->attributes, (std::vector<KV>{{"org_name", "Oracle"}}));

  auto garcia = gaz_.SecondPassMatch("Andrew Garcia", "Garcia");
  ASSERT_TRUE(garcia);
  EXPECT_EQ(garcia->category, "person");
  EXPECT_EQ(garcia->attributes,
            (std::vector<KV>{{"per_fname", "Andrew"}, {"per_lname", "Garcia"}}));

  auto court = gaz_.SecondPassMatch("federal court", "court");
  ASSERT_TRUE(court);
  EXPECT_EQ(court->category, "court");
  EXPECT_EQ(court->attributes, (std::vector<KV>{{"org_name", "federal court"},
                                                {"court_type", "federal"}}));

  EXPECT_FALSE(gaz_.SecondPassMatch("complex patent lawsuit", "lawsuit"));
  // The pattern must cover the whole phrase.
  EXPECT_FALSE(gaz_.SecondPassMatch("Excite Inc. Ltd", "Ltd"));
}

TEST_F(GazetteerTest, RelationTrigger) {
  const auto *side = gaz_.RelationTrigger("side with");
  ASSERT_NE(side, nullptr);
  EXPECT_EQ(side->category, "resolution");
  EXPECT_EQ(side->pattern, "{COURT}<RELATION>{PERSON|ORGANIZATION}");
  EXPECT_EQ(side->map, "{OCCUR_AT}<RELATION>{PREVAILING_PARTY}");
  EXPECT_EQ(side->left_classes.names, (std::vector<std::string>{"court"}));
  EXPECT_EQ(side->right_roles.names,
            (std::vector<std::string>{"prevailing_party"}));

  const auto *filing = gaz_.RelationTrigger("filing");
  ASSERT_NE(filing, nullptr);
  EXPECT_EQ(filing->category, "filing");
  EXPECT_FALSE(filing->has_pattern());
  EXPECT_EQ(gaz_.RelationTrigger("walk"), nullptr);

  EXPECT_EQ(gaz_.RelationTrigger("file against")->name, "file against");
  EXPECT_EQ(gaz_.RelationTrigger("file against Microsoft")->name,
            "file against");
  EXPECT_EQ(gaz_.RelationTrigger("file")->name, "file");
  EXPECT_EQ(gaz_.RelationTrigger("file", EntryKind::kRelationNoun), nullptr);
  // Word boundaries: "filed" is not "file".
  EXPECT_EQ(gaz_.RelationTrigger("filed"), nullptr);
}

TEST_F(GazetteerTest, ContingencyTrigger) {
  auto file_on = gaz_.ContingencyTrigger("filing", "date", onto_);
  ASSERT_TRUE(file_on);
  EXPECT_EQ(file_on->entry->name, "file on");
  EXPECT_EQ(file_on->entry->map, "{}<RELATION>{OCCUR_ON}");
  EXPECT_TRUE(file_on->right);
  EXPECT_EQ(file_on->role, "occur_on");

  auto occur_on = gaz_.ContingencyTrigger("legal_proceeding", "date", onto_);
  ASSERT_TRUE(occur_on);
  EXPECT_EQ(occur_on->entry->name, "occur on");

  EXPECT_FALSE(gaz_.ContingencyTrigger("resolution", "location", onto_));
}

TEST(SlotTest, ParseSlotsAndRoles) {
  auto [left, right] = ParseSlots("{COURT|JUDGE}<RELATION>{}");
  EXPECT_EQ(left.names, (std::vector<std::string>{"court", "judge"}));
  EXPECT_TRUE(right.empty());
  auto [roles, unused] = ParseSlots("{OCCUR_AT|PRESIDE_BY}<RELATION>{}");
  EXPECT_EQ(RolesFor(left, roles, 1), (std::vector<std::string>{"preside_by"}));
  auto [one, unused2] = ParseSlots("{PLAINTIFF}<RELATION>{}");
  EXPECT_EQ(RolesFor(left, one, 1), (std::vector<std::string>{"plaintiff"}));
  auto [both, unused3] = ParseSlots("{PLAINTIFF&&DEFENDANT}<RELATION>{}");
  EXPECT_TRUE(both.conjoined);
  EXPECT_EQ(RolesFor(left, both, 0),
            (std::vector<std::string>{"plaintiff", "defendant"}));
  EXPECT_THROW(ParseSlots("{COURT}{PERSON}"), Error);
  EXPECT_THROW(ParseSlots("COURT<RELATION>{PERSON}"), Error);
}

TEST(PatternTest, SupportedSubset) {
  EXPECT_EQ(ValidatePattern("({TOKEN})(\\sIncorporated|\\sInc[.]?)?"), 2);
  EXPECT_EQ(ValidatePattern("[\\w.&'-]+\\s\\d*"), 0);
  EXPECT_THROW(ValidatePattern("(?:{TOKEN})"), Error);
  EXPECT_THROW(ValidatePattern("({TOKEN})\\1"), Error);
  EXPECT_THROW(ValidatePattern("({TOKEN}"), Error);
  EXPECT_THROW(ValidatePattern("^{TOKEN}$"), Error);
  EXPECT_EQ(EscapeRegex("AT&T Inc. (US)"), "AT&T Inc\\. \\(US\\)");
}

TEST(LoadTest, Errors) {
  const std::string header =
      "g_name\tg_category\tg_pattern\tg_type\tg_alias\tg_map\tg_group_map\n";
  auto kind_of = [&](const std::string &row) {
    try {
      Gazetteer::Load(header + row);
    } catch (const Error &e) {
      EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos)
          << e.what();
      return std::optional<ErrorKind>(e.kind());
    }
    return std::optional<ErrorKind>();
  };
  EXPECT_EQ(kind_of("A\tcompany\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of("A\tcompany\t({TOKEN})\tweird\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of("A\tcompany\t(A)\tspecific\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of("A\tcompany\t({TOKEN})\tspecific\t\t\ta,b\n"),
            ErrorKind::kParse);
  EXPECT_EQ(kind_of("x\tfiling\t{A}\trelation-verb\t\t{B}<RELATION>{}\n"),
            ErrorKind::kParse);
  EXPECT_FALSE(kind_of("A\tcompany\t({TOKEN})\tspecific\t\t\torg_name\n"));
}

TEST(LoadTest, ConjoinedMapWarns) {
  Gazetteer gaz = Gazetteer::Load(
      "settle\tresolution\t{ORGANIZATION}<RELATION>{}\trelation-verb\t\t"
      "{PLAINTIFF&&DEFENDANT}<RELATION>{}\t\n");
  ASSERT_EQ(gaz.warnings().size(), 1u);
  EXPECT_NE(gaz.warnings()[0].find("&&"), std::string::npos);
}

TEST_F(GazetteerTest, ValidateRejectsSchemaViolations) {
  auto with = [](GazetteerEntry e) {
    return Gazetteer::FromEntries({std::move(e)});
  };
  GazetteerEntry bad_class{"X", "planet", "({TOKEN})"};
  EXPECT_THROW(with(bad_class).Validate(onto_), Error);
  GazetteerEntry event_name{"X", "filing", "({TOKEN})"};
  EXPECT_THROW(with(event_name).Validate(onto_), Error);
  GazetteerEntry bad_attr{"X", "company", "({TOKEN})"};
  bad_attr.group_map = {"per_fname"};
  EXPECT_THROW(with(bad_attr).Validate(onto_), Error);
  GazetteerEntry bad_role{"sue", "filing", "{ORGANIZATION}<RELATION>{}",
                          EntryKind::kRelationVerb, "",
                          "{WITNESS}<RELATION>{}"};
  EXPECT_THROW(with(bad_role).Validate(onto_), Error);
  GazetteerEntry entity_relation{"sue", "company", "{ORGANIZATION}<RELATION>{}",
                                 EntryKind::kRelationVerb, "",
                                 "{PLAINTIFF}<RELATION>{}"};
  EXPECT_THROW(with(entity_relation).Validate(onto_), Error);
}

TEST_F(GazetteerTest, RoundTrip) {
  std::string text = gaz_.Serialize();
  Gazetteer again = Gazetteer::Load(text);
  EXPECT_EQ(again.Serialize(), text);
  ASSERT_EQ(again.entries().size(), gaz_.entries().size());
  for (size_t i = 0; i < gaz_.entries().size(); ++i) {
    const auto &a = gaz_.entries()[i];
    const auto &b = again.entries()[i];
    EXPECT_EQ(a.name, b.name);
    EXPECT_EQ(a.category, b.category);
    EXPECT_EQ(a.pattern, b.pattern);
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_EQ(a.alias, b.alias);
    EXPECT_EQ(a.map, b.map);
    EXPECT_EQ(a.group_map, b.group_map);
  }
}

TEST(GazetteerProperties, RandomRoundTrip) {
  EXPECT_EQ(testing::CheckGazetteerRoundTrips(200, 7), "");
}

// An alias behaves exactly like a copy of its entry under the alias name.
TEST_F(GazetteerTest, AliasEqualsDuplicatedEntry) {
  std::vector<GazetteerEntry> split;
  for (auto e : gaz_.entries()) {
    std::string alias = e.alias;
    e.alias.clear();
    split.push_back(e);
    if (!alias.empty() && !e.is_relation()) {
      e.name = alias;
      split.push_back(e);
    }
  }
  Gazetteer dup = Gazetteer::FromEntries(split);
  const std::vector<std::pair<std::string, std::string>> phrases = {
      {"HP", "HP"},
      {"IBM", "IBM"},
      {"IBM Corp.", "Corp."},
      {"Hewlett-Packard Co.", "Co."},
      {"Oracle Corp.", "Corp."},
      {"Oracle Corporation", "Corporation"},
      {"Sun Inc.", "Inc."},
      {"Acme Co.", "Co."},
      {"EFF", "EFF"},
      {"Jan.", "Jan."},
      {"federal court", "court"},
      {"U.S. District Judge William Pauley III", "Judge"},
      {"judge", "judge"},
      {"Excite Inc.", "Inc."},
      {"nothing here", "here"},
  };
  for (const auto &[phrase, head] : phrases) {
    auto a = Recognise(gaz_, phrase, head);
    auto b = Recognise(dup, phrase, head);
    ASSERT_EQ(a.has_value(), b.has_value()) << phrase;
    if (!a) continue;
    EXPECT_EQ(a->category, b->category) << phrase;
    EXPECT_EQ(a->attributes, b->attributes) << phrase;
  }
}

}  // namespace
}  // namespace nalqa
