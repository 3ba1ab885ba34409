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


#ifndef NALQA_DEP_INPUT_H_
#define NALQA_DEP_INPUT_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nalqa {

class Gazetteer;
class Ontology;

// One row of a dependency parse: offset, POS, relation, word, governor.
struct DepToken {
  int offset = 0;       // 1-based
  std::string pos;      // N, V, Aux, Prep, Det, A, Adv, Conj, C, Punc
  std::string relation;
  std::string word;
  int head = 0;         // 0 for the root
  std::string head_word;  // "fin" for the root

  bool operator==(const DepToken &) const = default;
};

struct DepGraph {
  std::string sentence;  // from the preceding comment line, if any
  std::vector<DepToken> tokens;

  const DepToken &At(int offset) const { return tokens.at(offset - 1); }
  bool is_root(const DepToken &t) const { return t.head == 0; }
  std::vector<const DepToken *> Dependents(int offset) const;
  const DepToken *Root() const;
};

// A parse file holds blank-line separated sentences. A comment line directly
// before a sentence is kept as its text; the first tab-separated field of the
// comment is dropped when it looks like a label ("q7").
std::vector<DepGraph> ParseDepFile(std::string_view text);

// Splits a parse file into documents at "# document" lines.
std::vector<std::vector<DepGraph>> ParseDocuments(std::string_view text);

std::string SerializeDepGraphs(const std::vector<DepGraph> &graphs);

// Offsets dense from 1, heads in range, no self loops or cycles, exactly one
// root marker.
void ValidateDepGraph(const DepGraph &g);

// Deterministic parser for the controlled question and news subset. Throws
// kOutOfSubset naming the offending token for anything else.
class MiniParser {
 public:
  MiniParser(const Gazetteer &gaz, const Ontology &onto);

  DepGraph Parse(const std::string &sentence) const;

  // Words of `sentence` the system has no entry for, in order. A word is
  // known when it is a gazetteer name or trigger word, a lexicon word, a
  // class name, a function word or a verb form. Numbers and capitalized
  // words after the first are taken as names.
  std::vector<std::string> UnknownWords(const std::string &sentence) const;

 private:
  std::set<std::string> known_;  // lower case
  std::vector<std::string> multiwords_;  // longest first
  std::vector<std::string> titles_;
};

}  // namespace nalqa

#endif  // NALQA_DEP_INPUT_H_
