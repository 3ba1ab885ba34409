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


#ifndef NALQA_REASONER_H_
#define NALQA_REASONER_H_

#include <optional>
#include <string>
#include <vector>

#include "nalqa/dep_input.h"
#include "nalqa/discourse.h"
#include "nalqa/semnet.h"

namespace nalqa {

class Gazetteer;
class Ontology;

inline constexpr char kAnswerMarker[] = "X";

struct QueryNetwork {
  SemanticNetwork net;
  std::optional<Marker> marker;  // absent for yes-no questions
  QuestionForm form = QuestionForm::kWh;
  std::string wh_word;
  std::string question;
};

// Runs the NLU and discourse pipeline on a question. Throws kNoMarker for a
// wh-question whose marker cannot be placed.
QueryNetwork BuildQueryNetwork(const DepGraph &question, const Ontology &onto,
                               const Gazetteer &gaz);

struct Reduction {
  std::vector<PathSequence> q;
  std::optional<PathSequence> a;  // the path starting at X
  // Nothing constrains the marker's event.
  bool under_constrained = false;
};

Reduction Reduce(const SemanticNetwork &net);

enum class OutcomeKind {
  kAnswers,           // X bound in at least one event
  kConfirmed,         // every path matched, no marker
  kEventMissing,      // some query path has no coherent stored event
  kKnowledgeMissing,  // the event exists but lacks the queried attribute
};

const char *OutcomeKindName(OutcomeKind kind);

struct AnswerItem {
  std::string value;   // n1 of the matching stored path
  std::string entity;  // its n2
  std::string event;   // its n3
};

struct MatchOutcome {
  OutcomeKind kind = OutcomeKind::kEventMissing;
  // One item per (event, entity), events in id order.
  std::vector<AnswerItem> answers;
  // Stored events that satisfied the marker's event paths.
  std::vector<std::string> events;
  // kEventMissing: query paths the closest stored event lacks.
  // kKnowledgeMissing: the answer path.
  std::vector<PathSequence> failed;
  bool under_constrained = false;
};

// Selective path matching. Stored paths are grouped by event object; every
// query event needs one stored event matching all of its paths on
// (n1, e1, e2, e3, n4), and the marker's event must also carry a path
// matching the answer path on (e2, e3, n4). With `relax`, a stored event
// class matches any superclass named by the query.
MatchOutcome Match(const Reduction &r, const std::vector<PathSequence> &s,
                   const Ontology &onto, bool relax = true);

// Identifying leaves of an entity object in display order, space separated.
std::string RenderEntity(const SemanticNetwork &kb, const Ontology &onto,
                         const std::string &object);

std::string Respond(const MatchOutcome &outcome, const QueryNetwork &query,
                    const Reduction &reduction, const SemanticNetwork &kb,
                    const Ontology &onto);

struct Reply {
  bool answered = false;  // false for explanations
  std::string text;
  std::vector<std::string> unknown_words;
  std::optional<QueryNetwork> query;
  Reduction reduction;
  MatchOutcome outcome;
};

// Question answering over a fixed knowledge base snapshot.
class QueryEngine {
 public:
  QueryEngine(const Ontology &onto, const Gazetteer &gaz,
              const SemanticNetwork &kb);

  // Parses with MiniParser after the spelling check. Parse and marker
  // errors propagate.
  Reply Ask(const std::string &question, bool relax = true) const;
  Reply AskParsed(const DepGraph &question, bool relax = true) const;

  const std::vector<PathSequence> &paths() const { return paths_; }

 private:
  const Ontology &onto_;
  const Gazetteer &gaz_;
  const SemanticNetwork &kb_;
  MiniParser parser_;
  std::vector<PathSequence> paths_;
};

}  // namespace nalqa

#endif  // NALQA_REASONER_H_
