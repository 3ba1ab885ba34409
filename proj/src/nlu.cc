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


#include "nalqa/nlu.h"

#include <algorithm>
#include <set>

#include "nalqa/ontology.h"

namespace nalqa {

namespace {

const std::set<std::string> kPronounWords = {
    "it",  "he",  "she",  "they", "him",  "them", "we",
    "i",   "you", "us",   "me",   "who",  "whom", "what",
    "which", "that"};
const std::set<std::string> kWhWords = {"who", "whom", "what", "which"};
const std::set<std::string> kGenPronouns = {"its", "his", "her", "their",
                                            "our", "my", "your"};
const std::set<std::string> kRelativizers = {"who", "which", "that"};

bool DependsOn(const DepToken &t, int head) { return t.head == head; }

bool LeftModifier(const DepToken &t) {
  if (t.relation == "det") return t.pos == "Det";
  if (t.relation == "mod") return t.pos == "A";
  if (t.relation == "nn") return t.pos == "N";
  if (t.relation == "gen") return kGenPronouns.count(t.word) > 0;
  return false;
}

std::vector<int> WithConjuncts(const DepGraph &g, int head) {
  std::vector<int> out{head};
  for (const auto *d : g.Dependents(head)) {
    if (d->relation == "conj") out.push_back(d->offset);
  }
  return out;
}

int FirstDependent(const DepGraph &g, int head, const std::string &rel) {
  for (const auto *d : g.Dependents(head)) {
    if (d->relation == rel) return d->offset;
  }
  return 0;
}

// The agent of a passive: pcomp-n of a by-subj preposition.
int Agent(const DepGraph &g, int v) {
  int by = FirstDependent(g, v, "by-subj");
  return by ? FirstDependent(g, by, "pcomp-n") : 0;
}

}  // namespace

bool IsPronoun(const std::string &word) { return kPronounWords.count(word); }
bool IsWhWord(const std::string &word) { return kWhWords.count(word); }

std::vector<int> NounPhrase::tokens() const {
  std::vector<int> out = modifiers;
  out.push_back(head);
  out.insert(out.end(), end_modifiers.begin(), end_modifiers.end());
  return out;
}

std::string NounPhrase::Text(const DepGraph &g, bool strip) const {
  std::vector<int> toks = tokens();
  size_t start = 0;
  if (strip) {
    while (start + 1 < toks.size()) {
      const DepToken &t = g.At(toks[start]);
      if (t.pos != "Det" && !kGenPronouns.count(t.word)) break;
      ++start;
    }
  }
  std::string out;
  for (size_t i = start; i < toks.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += g.At(toks[i]).word;
  }
  return out;
}

std::vector<NounPhrase> ChunkNounPhrases(const DepGraph &g) {
  std::vector<NounPhrase> out;
  const int n = static_cast<int>(g.tokens.size());
  for (const auto &t : g.tokens) {
    if (t.pos != "N" || t.relation == "nn" || t.relation == "expl") continue;
    if (t.relation == "gen" && kGenPronouns.count(t.word)) continue;
    NounPhrase np;
    np.head = t.offset;
    np.pronoun = IsPronoun(t.word);
    np.wh = IsWhWord(t.word);
    int i = t.offset - 1;
    while (i >= 1 && DependsOn(g.At(i), t.offset) && LeftModifier(g.At(i))) {
      --i;
    }
    for (int k = i + 1; k < t.offset; ++k) {
      const DepToken &m = g.At(k);
      np.modifiers.push_back(k);
      if (IsWhWord(m.word)) np.wh = true;
      if (FirstDependent(g, k, "wh")) np.wh = true;  // how many
    }
    for (int j = t.offset + 1; j <= n; ++j) {
      const DepToken &m = g.At(j);
      if (!DependsOn(m, t.offset) || m.relation != "nn") break;
      np.end_modifiers.push_back(j);
    }
    out.push_back(std::move(np));
  }
  return out;
}

NamedEntity Categorize(const NounPhrase &np, const DepGraph &g,
                       const Gazetteer &gaz, const Ontology &onto,
                       int sentence) {
  NamedEntity ne;
  ne.sentence = sentence;
  ne.offset = np.head;
  ne.head = g.At(np.head).word;
  ne.phrase = np.Text(g, /*strip=*/true);
  auto unresolved = [&] {
    ne.category = "variable";
    ne.attributes = {{"var_desc", ne.phrase}};
  };
  if (np.pronoun) {
    unresolved();
    return ne;
  }
  if (const GazetteerEntry *e = gaz.DirectMatch(ne.phrase)) {
    ne.category = e->category;
    ne.attributes = gaz.Bind(*e, ne.phrase, ne.phrase);
  } else if (auto m = gaz.SecondPassMatch(ne.phrase, ne.head)) {
    ne.category = m->category;
    ne.attributes = std::move(m->attributes);
  } else {
    unresolved();
    return ne;
  }
  if (!onto.HasClass(ne.category)) return ne;
  std::vector<std::pair<std::string, std::string>> ordered;
  for (const auto &a : onto.AttributeSchemaFor(ne.category)) {
    for (const auto &kv : ne.attributes) {
      if (kv.first == a.name) {
        ordered.push_back(kv);
        break;
      }
    }
  }
  ne.attributes = std::move(ordered);
  return ne;
}

std::vector<NamedEntity> AssignCategories(const std::vector<NounPhrase> &nps,
                                          const DepGraph &g,
                                          const Gazetteer &gaz,
                                          const Ontology &onto,
                                          int sentence) {
  std::vector<NamedEntity> out;
  out.reserve(nps.size());
  for (const auto &np : nps) {
    out.push_back(Categorize(np, g, gaz, onto, sentence));
  }
  return out;
}

const char *RelationKindName(RelationKind kind) {
  switch (kind) {
    case RelationKind::kPossession: return "possession";
    case RelationKind::kAppositive: return "appositive";
    case RelationKind::kSvo: return "svo";
    case RelationKind::kPrepositional: return "prepositional";
  }
  return "?";
}

std::vector<int> SubjectsOf(const DepGraph &g, int v) {
  const DepToken &verb = g.At(v);
  int s = FirstDependent(g, v, "s");
  if (s && verb.relation == "rel" && kRelativizers.count(g.At(s).word)) {
    s = verb.head;
  }
  if (!s) s = Agent(g, v);
  if (!s && verb.relation == "vrel" && FirstDependent(g, v, "obj")) {
    s = verb.head;
  }
  if (!s && verb.relation == "pcomp-c" && verb.head) {
    const DepToken &prep = g.At(verb.head);
    if (prep.head) {
      const DepToken &gov = g.At(prep.head);
      if (gov.pos == "N") {
        s = gov.offset;
      } else if (gov.pos == "V") {
        auto up = SubjectsOf(g, gov.offset);
        if (!up.empty()) s = up.front();
      }
    }
  }
  return s ? WithConjuncts(g, s) : std::vector<int>{};
}

std::vector<int> ObjectsOf(const DepGraph &g, int v) {
  const DepToken &verb = g.At(v);
  int o = FirstDependent(g, v, "obj");
  if (!o && verb.relation == "rel") {
    int s = FirstDependent(g, v, "s");
    if (s && !kRelativizers.count(g.At(s).word)) o = verb.head;
  }
  if (!o && verb.relation == "vrel") o = verb.head;
  return o ? WithConjuncts(g, o) : std::vector<int>{};
}

std::vector<Relation> InferRelations(const DepGraph &g) {
  std::vector<Relation> out;
  for (const auto &t : g.tokens) {
    if (t.relation == "gen" && t.pos == "N" && !kGenPronouns.count(t.word) &&
        t.head) {
      Relation r;
      r.kind = RelationKind::kPossession;
      r.governor = t.offset;
      r.dependent = t.head;
      r.link = t.offset;
      out.push_back(r);
    } else if (t.relation == "appo" && t.head) {
      Relation r;
      r.kind = RelationKind::kAppositive;
      r.governor = t.head;
      r.dependent = t.offset;
      r.link = t.offset;
      out.push_back(r);
    } else if (t.pos == "V" && t.word != "be") {
      auto subj = SubjectsOf(g, t.offset);
      auto obj = ObjectsOf(g, t.offset);
      if (subj.empty()) subj.push_back(0);
      if (obj.empty()) obj.push_back(0);
      for (int s : subj) {
        for (int o : obj) {
          Relation r;
          r.kind = RelationKind::kSvo;
          r.governor = s;
          r.link_word = t.word;
          r.dependent = o;
          r.link = t.offset;
          r.verb = t.offset;
          out.push_back(r);
        }
      }
    } else if (t.pos == "Prep" && t.relation == "mod" && t.head) {
      int pc = FirstDependent(g, t.offset, "pcomp-n");
      if (!pc) continue;
      const DepToken &gov = g.At(t.head);
      Relation base;
      base.kind = RelationKind::kPrepositional;
      base.link_word = t.word;
      base.link = t.offset;
      std::vector<int> lefts{0};
      if (gov.pos == "V") {
        base.verb = gov.offset;
        base.fused = gov.word + " " + t.word;
        auto subj = SubjectsOf(g, gov.offset);
        if (!subj.empty()) lefts = subj;
      } else {
        lefts = WithConjuncts(g, gov.offset);
      }
      for (int l : lefts) {
        for (int d : WithConjuncts(g, pc)) {
          Relation r = base;
          r.governor = l;
          r.dependent = d;
          out.push_back(r);
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Relation &a, const Relation &b) {
                     return a.link < b.link;
                   });
  return out;
}

}  // namespace nalqa
