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


// Golden expectations shared by the unit tests and the acceptance runner.

#ifndef NALQA_TESTS_GOLDEN_H_
#define NALQA_TESTS_GOLDEN_H_

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nalqa::testing {

inline constexpr char kSideWith[] =
    "A federal court has sided with AT&T over a complex patent lawsuit it "
    "filed against Microsoft.";

// Canonical triples (see CanonicalTriples) for kSideWith.
inline std::set<std::string> SideWithGolden() {
  const std::string c = "court(court_type=federal,org_name=federal court)";
  const std::string a = "company(org_name=AT&T)";
  const std::string m = "company(org_name=Microsoft)";
  const std::string v = "variable(var_desc=complex patent lawsuit)";
  const std::string e = "resolution(defendant=" + m + ",nature_of_case=" + v +
                        ",occur_at=" + c + ",plaintiff=" + a +
                        ",prevailing_party=" + a + ")";
  return {c + " is court",        c + " court_type federal",
          c + " org_name federal court",
          a + " is company",      a + " org_name AT&T",
          m + " is company",      m + " org_name Microsoft",
          v + " is variable",     v + " var_desc complex patent lawsuit",
          e + " is resolution",   e + " occur_at " + c,
          e + " prevailing_party " + a,
          e + " nature_of_case " + v,
          e + " plaintiff " + a,  e + " defendant " + m};
}

// Question number in questions.txt and the response over regression_kb.tsv.
struct RegressionCase {
  int number;
  const char *response;
};

// The ten published answers the fixture knowledge base was built for.
inline const std::vector<RegressionCase> &PublishedAnswers() {
  static const std::vector<RegressionCase> cases = {
      {7, "Yes, it is true"},
      {13, "Excite"},
      {15, "AT&T"},
      {23, "Filing took place on 2002"},
      {25, "Filing took place on 2003"},
      {31, "Filing took place on 2003"},
      {33, "Filing took place on 2002 by AT&T"},
      {40, "AT&T"},
      {44, "RealNetworks and AT&T"},
      {45, "Vonage"},
  };
  return cases;
}

// Further questions answered or explained by the same knowledge base.
inline const std::vector<RegressionCase> &FurtherAnswers() {
  static const std::vector<RegressionCase> cases = {
      {24, "There is no such filing event involving Excite as plaintiff."},
      {26, "Resolution took place on Monday 9 February 2004"},
      {28, "Resolution took place on Monday 19 February 2003"},
      {36, "RealNetworks and AT&T"},
  };
  return cases;
}

inline constexpr char kMissingFiling[] =
    "There is no such filing event involving RealNetworks as plaintiff.";

// Sentence, category and sorted attributes of its first named entity.
struct NerCase {
  const char *sentence;
  const char *category;
  std::vector<std::pair<std::string, std::string>> attributes;
};

inline const std::vector<NerCase> &NerCases() {
  static const std::vector<NerCase> cases = {
      {"Excite Inc. sued Microsoft.", "company", {{"org_name", "Excite"}}},
      {"Oracle Corp. sued Microsoft.", "company", {{"org_name", "Oracle"}}},
      {"Andrew Garcia sued Microsoft.",
       "person",
       {{"per_fname", "Andrew"}, {"per_lname", "Garcia"}}},
      {"The federal court ruled.",
       "court",
       {{"court_type", "federal"}, {"org_name", "federal court"}}},
      {"The U.S. District Judge William Pauley III ruled.",
       "judge",
       {{"per_fname", "William"},
        {"per_lname", "Pauley III"},
        {"profession", "Judge"}}},
  };
  return cases;
}

}  // namespace nalqa::testing

#endif  // NALQA_TESTS_GOLDEN_H_
