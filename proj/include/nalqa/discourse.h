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


#ifndef NALQA_DISCOURSE_H_
#define NALQA_DISCOURSE_H_

#include <optional>
#include <string>
#include <vector>

#include "nalqa/dep_input.h"
#include "nalqa/gazetteer.h"
#include "nalqa/nlu.h"
#include "nalqa/semnet.h"

namespace nalqa {

class Ontology;

enum class QuestionForm { kWh, kCount, kYesNo, kList };

const char *QuestionFormName(QuestionForm form);

// Leading wh-word gives wh, "how many" count, a leading auxiliary or
// "Is it true" yes-no, a leading List/Name list. Other sentences are wh when
// they contain a wh-word and yes-no otherwise.
QuestionForm DetectQuestionForm(const DepGraph &g);

// Where the answer marker went in a query network.
struct Marker {
  std::string object;  // fresh entity object carrying the X leaf
  std::string role;    // event attribute
  std::string event;
  std::string wh_class;
  bool contingency = false;  // placed by the contingency step
};

struct EventRecord {
  std::string id;
  std::string cls;
  // Event attribute and the entity object filling it, in fill order.
  std::vector<std::pair<std::string, std::string>> roles;
};

struct EntityRecord {
  std::string id;
  NamedEntity entity;
};

struct Integration {
  std::vector<EntityRecord> entities;
  std::vector<EventRecord> events;
  std::vector<Triple> triples;
  std::optional<Marker> marker;
  std::vector<std::string> warnings;
};

class DiscourseIntegrator {
 public:
  DiscourseIntegrator(const Ontology &onto, const Gazetteer &gaz)
      : onto_(onto), gaz_(gaz) {}

  // Integrates one document. Object ids hash `salt`, `doc_key` and the
  // sentence and token offsets, so repeated runs are byte-identical.
  Integration Integrate(const std::vector<DepGraph> &doc,
                        const std::string &salt,
                        const std::string &doc_key = "") const;

  // Builds a query network for a single question. A wh-word filling a slot
  // becomes the marker; otherwise the contingency step places it. Throws
  // kNoMarker when a wh-question gets no marker.
  Integration IntegrateQuestion(const DepGraph &question,
                                const std::string &salt = "q") const;

  // Integrates a document and inserts its triples into `net`; the salt is
  // the network size before the call.
  Integration Ingest(const std::vector<DepGraph> &doc,
                     const std::string &doc_key, SemanticNetwork *net) const;

 private:
  Integration Run(const std::vector<DepGraph> &doc, const std::string &salt,
                  const std::string &doc_key, bool query) const;

  const Ontology &onto_;
  const Gazetteer &gaz_;
};

}  // namespace nalqa

#endif  // NALQA_DISCOURSE_H_
