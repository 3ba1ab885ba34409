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


#ifndef NALQA_NLU_H_
#define NALQA_NLU_H_

#include <string>
#include <vector>

#include "nalqa/dep_input.h"
#include "nalqa/gazetteer.h"

namespace nalqa {

class Ontology;

// A noun phrase: leading modifiers, the head, trailing nominal modifiers.
// Token references are 1-based offsets into the sentence.
struct NounPhrase {
  std::vector<int> modifiers;
  int head = 0;
  std::vector<int> end_modifiers;
  bool pronoun = false;  // personal, relative or interrogative pronoun
  bool wh = false;       // wh pronoun or wh determiner

  std::vector<int> tokens() const;
  // Words of the phrase; with `strip` leading determiners are dropped.
  std::string Text(const DepGraph &g, bool strip = false) const;
};

bool IsPronoun(const std::string &word);
bool IsWhWord(const std::string &word);

// Maximal noun chunks in sentence order.
std::vector<NounPhrase> ChunkNounPhrases(const DepGraph &g);

// Direct match on the phrase, then the pattern pass keyed on the head, then
// an unresolved `variable`. Attributes come out in schema order.
NamedEntity Categorize(const NounPhrase &np, const DepGraph &g,
                       const Gazetteer &gaz, const Ontology &onto,
                       int sentence = 0);
// One entity per chunk, aligned with `nps`.
std::vector<NamedEntity> AssignCategories(const std::vector<NounPhrase> &nps,
                                          const DepGraph &g,
                                          const Gazetteer &gaz,
                                          const Ontology &onto,
                                          int sentence = 0);

enum class RelationKind { kPossession, kAppositive, kSvo, kPrepositional };

const char *RelationKindName(RelationKind kind);

struct Relation {
  RelationKind kind = RelationKind::kSvo;
  int governor = 0;       // head of the left argument, 0 when absent
  std::string link_word;  // verb lemma or preposition
  int dependent = 0;      // head of the right argument, 0 when absent
  int link = 0;           // offset of the verb, preposition or possessor
  int verb = 0;           // verb governing a prepositional phrase
  std::string fused;      // "verb prep" when the preposition hangs off a verb

  bool operator==(const Relation &) const = default;
};

// Subjects of verb v after undoing relativization, passives and
// coordination.
std::vector<int> SubjectsOf(const DepGraph &g, int v);
std::vector<int> ObjectsOf(const DepGraph &g, int v);

// Possession, apposition, subject-verb-object and prepositional relations,
// ordered by the offset of the link token.
std::vector<Relation> InferRelations(const DepGraph &g);

}  // namespace nalqa

#endif  // NALQA_NLU_H_
