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


#include "nalqa/discourse.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "nalqa/error.h"
#include "nalqa/ontology.h"

namespace nalqa {

namespace {

struct Mention {
  int sentence = 0;
  NounPhrase np;
  NamedEntity ne;
  bool event_noun = false;
  bool target = false;  // the wh phrase of a question
  int entity = -1;      // index into Integration::entities
};

struct Trigger {
  int sentence = 0;
  int offset = 0;
  const GazetteerEntry *entry = nullptr;
  int left = 0, right = 0;
  bool always = false;  // nouns and verbs create their event unconditionally
};

std::string Key(const std::string &salt, const std::string &doc, int sentence,
                int offset, const char *kind) {
  return ContentId(salt + "|" + doc + "|" + std::to_string(sentence) + "|" +
                   std::to_string(offset) + "|" + kind);
}

const GazetteerEntry *ExactTrigger(const Gazetteer &gaz,
                                   const std::string &words, EntryKind kind) {
  const GazetteerEntry *e = gaz.RelationTrigger(words, kind);
  return e && e->name == words ? e : nullptr;
}

bool HasWhWord(const DepGraph &g) {
  for (const auto &t : g.tokens) {
    if (IsWhWord(t.word) || t.word == "when" || t.word == "where" ||
        t.word == "how") {
      return true;
    }
  }
  return false;
}

}  // namespace

const char *QuestionFormName(QuestionForm form) {
  switch (form) {
    case QuestionForm::kWh: return "wh";
    case QuestionForm::kCount: return "count";
    case QuestionForm::kYesNo: return "yes-no";
    case QuestionForm::kList: return "list";
  }
  return "?";
}

QuestionForm DetectQuestionForm(const DepGraph &g) {
  if (g.tokens.empty()) return QuestionForm::kYesNo;
  for (const auto &t : g.tokens) {
    if (t.word == "how" && t.head && g.At(t.head).word == "many") {
      return QuestionForm::kCount;
    }
  }
  const DepToken &first = g.tokens.front();
  if (IsWhWord(first.word) || first.word == "when" ||
      first.word == "where" || first.word == "how") {
    return QuestionForm::kWh;
  }
  if (first.pos == "Aux" || (first.pos == "V" && first.word == "be")) {
    return QuestionForm::kYesNo;
  }
  if (first.pos == "V" && (first.word == "list" || first.word == "name")) {
    return QuestionForm::kList;
  }
  return HasWhWord(g) ? QuestionForm::kWh : QuestionForm::kYesNo;
}

Integration DiscourseIntegrator::Integrate(const std::vector<DepGraph> &doc,
                                           const std::string &salt,
                                           const std::string &doc_key) const {
  return Run(doc, salt, doc_key, /*query=*/false);
}

Integration DiscourseIntegrator::IntegrateQuestion(
    const DepGraph &question, const std::string &salt) const {
  return Run({question}, salt, "", /*query=*/true);
}

Integration DiscourseIntegrator::Ingest(const std::vector<DepGraph> &doc,
                                        const std::string &doc_key,
                                        SemanticNetwork *net) const {
  Integration out = Run(doc, std::to_string(net->size()), doc_key, false);
  for (const auto &t : out.triples) net->Insert(t);
  return out;
}

Integration DiscourseIntegrator::Run(const std::vector<DepGraph> &doc,
                                     const std::string &salt,
                                     const std::string &doc_key,
                                     bool query) const {
  Integration out;
  std::vector<Mention> mentions;
  std::map<std::pair<int, int>, size_t> at;  // (sentence, head) -> mention

  // Query bookkeeping.
  bool want_marker = false;
  std::string wh_class;
  if (query && !doc.empty()) {
    want_marker = DetectQuestionForm(doc[0]) != QuestionForm::kYesNo;
  }

  // Step 1: chunks, categories and entity objects.
  for (size_t si = 0; si < doc.size(); ++si) {
    const DepGraph &g = doc[si];
    auto nps = ChunkNounPhrases(g);
    auto nes = AssignCategories(nps, g, gaz_, onto_, static_cast<int>(si));
    int target_head = 0;
    if (want_marker) {
      QuestionForm form = DetectQuestionForm(g);
      const DepToken *root = g.Root();
      if (form == QuestionForm::kList && root) {
        for (const auto *d : g.Dependents(root->offset)) {
          if (d->relation == "obj") target_head = d->offset;
        }
        if (!target_head) {
          for (const auto *d : g.Dependents(root->offset)) {
            if (d->pos != "Prep" || d->word != "of") continue;
            for (const auto *p : g.Dependents(d->offset)) {
              if (p->relation == "pcomp-n") target_head = p->offset;
            }
          }
        }
      } else if (root && root->word == "be") {
        int s = 0, pred = 0;
        for (const auto *d : g.Dependents(root->offset)) {
          if (d->relation == "s") s = d->offset;
          if (d->relation == "pred" && d->pos == "N") pred = d->offset;
        }
        if (s && pred && IsWhWord(g.At(s).word)) target_head = pred;
      }
      if (!target_head) {
        for (const auto &np : nps) {
          if (np.wh) {
            target_head = np.head;
            break;
          }
        }
      }
      if (target_head) {
        const std::string &w = g.At(target_head).word;
        for (size_t k = 0; k < nps.size(); ++k) {
          if (nps[k].head != target_head) continue;
          if (onto_.HasClass(w)) {
            wh_class = w;
          } else if (w == "who" || w == "whom") {
            wh_class = "legal_entity";
          } else if (w == "what" || w == "which") {
            wh_class = "variable";
          } else {
            wh_class = nes[k].category;
          }
        }
      } else {
        for (const auto &t : g.tokens) {
          if (t.word == "when") wh_class = "date";
          if (t.word == "where") wh_class = "location";
        }
      }
    }
    for (size_t k = 0; k < nps.size(); ++k) {
      Mention m;
      m.sentence = static_cast<int>(si);
      m.np = nps[k];
      m.ne = nes[k];
      const std::string &head = g.At(nps[k].head).word;
      m.event_noun =
          ExactTrigger(gaz_, head, EntryKind::kRelationNoun) != nullptr;
      m.target = want_marker && nps[k].head == target_head;
      if (!m.event_noun && !m.np.pronoun && !m.target) {
        EntityRecord rec;
        rec.id = Key(salt, doc_key, m.sentence, nps[k].head, "entity");
        rec.entity = m.ne;
        for (const auto &[attr, value] : rec.entity.attributes) {
          if (!onto_.FindAttribute(rec.entity.category, attr)) {
            throw Error(ErrorKind::kSchema,
                        "attribute " + attr + " is not part of class " +
                            rec.entity.category);
          }
        }
        m.entity = static_cast<int>(out.entities.size());
        out.entities.push_back(std::move(rec));
      }
      at[{m.sentence, nps[k].head}] = mentions.size();
      mentions.push_back(std::move(m));
    }
  }

  // Step 2: triggers in document order.
  std::vector<Trigger> triggers;
  for (size_t si = 0; si < doc.size(); ++si) {
    const DepGraph &g = doc[si];
    const int s = static_cast<int>(si);
    auto rels = InferRelations(g);
    std::map<std::pair<int, int>, const GazetteerEntry *> fused;
    std::set<int> fused_verbs;
    for (const auto &r : rels) {
      if (r.kind != RelationKind::kPrepositional || !r.verb) continue;
      if (auto *e = ExactTrigger(gaz_, r.fused, EntryKind::kRelationVerb)) {
        fused[{r.verb, r.link}] = e;
        fused_verbs.insert(r.verb);
      }
    }
    for (const auto &m : mentions) {
      if (m.sentence != s || !m.event_noun) continue;
      Trigger t;
      t.sentence = s;
      t.offset = m.np.head;
      t.entry = ExactTrigger(gaz_, g.At(m.np.head).word,
                             EntryKind::kRelationNoun);
      t.always = true;
      triggers.push_back(t);
    }
    for (const auto &r : rels) {
      Trigger t;
      t.sentence = s;
      t.offset = r.link;
      t.left = r.governor;
      t.right = r.dependent;
      if (r.kind == RelationKind::kSvo) {
        if (fused_verbs.count(r.verb)) continue;
        t.entry = ExactTrigger(gaz_, r.link_word, EntryKind::kRelationVerb);
        t.always = true;
      } else if (r.kind == RelationKind::kPrepositional) {
        auto it = fused.find({r.verb, r.link});
        if (r.verb && it != fused.end()) {
          t.entry = it->second;
          t.always = true;
        } else {
          t.entry = ExactTrigger(gaz_, r.link_word, EntryKind::kRelationPrep);
        }
      }
      if (t.entry) triggers.push_back(t);
    }
  }
  std::stable_sort(triggers.begin(), triggers.end(),
                   [](const Trigger &a, const Trigger &b) {
                     return std::tie(a.sentence, a.offset) <
                            std::tie(b.sentence, b.offset);
                   });

  std::vector<Triple> marker_triples;
  auto place_marker = [&](const std::string &role, int sentence, int offset) {
    Marker mk;
    mk.object = Key(salt, doc_key, sentence, offset, "marker");
    mk.role = role;
    mk.wh_class = wh_class;
    marker_triples.push_back({mk.object, kIsEdge, wh_class});
    marker_triples.push_back({mk.object, "desc", "X"});
    out.marker = mk;
    return mk.object;
  };

  // Index of the first slot class the category falls under, or -1.
  auto slot_index = [&](const std::string &cat, const Slot &classes,
                        bool either_way) -> int {
    if (classes.empty()) return 0;
    for (size_t i = 0; i < classes.names.size(); ++i) {
      const std::string &c = classes.names[i];
      if (!onto_.HasClass(c) || !onto_.HasClass(cat)) continue;
      if (onto_.SubclassOf(cat, c) ||
          (either_way && onto_.SubclassOf(c, cat))) {
        return static_cast<int>(i);
      }
    }
    return -1;
  };

  // Steps 3 and 4: fill slots, resolving pronouns, and build events.
  auto fill = [&](const Trigger &t, const Slot &classes, const Slot &roles,
                  int offset) {
    std::vector<std::pair<std::string, std::string>> out_roles;
    if (roles.empty() || offset == 0) return out_roles;
    auto it = at.find({t.sentence, offset});
    if (it == at.end()) return out_roles;
    const Mention &m = mentions[it->second];
    if (m.event_noun) return out_roles;
    std::string object;
    int index = -1;
    if (m.target) {
      if (out.marker || wh_class.empty()) return out_roles;
      index = slot_index(wh_class, classes, /*either_way=*/true);
      if (index < 0) return out_roles;
      auto rs = RolesFor(classes, roles, index);
      if (rs.empty() || rs[0].empty()) return out_roles;
      object = place_marker(rs[0], t.sentence, offset);
      out_roles.emplace_back(rs[0], object);
      return out_roles;
    }
    if (m.np.pronoun) {
      if (m.np.wh) return out_roles;
      // Nearest strictly earlier entity satisfying the slot.
      const Mention *best = nullptr;
      for (const auto &c : mentions) {
        if (c.entity < 0) continue;
        if (std::tie(c.sentence, c.np.head) >=
            std::tie(m.sentence, m.np.head)) {
          continue;
        }
        if (slot_index(c.ne.category, classes, false) < 0) continue;
        best = &c;
      }
      if (!best) {
        throw Error(ErrorKind::kUnresolvedAnaphor,
                    "no antecedent for '" + m.ne.phrase + "' at " +
                        std::to_string(m.sentence) + "." +
                        std::to_string(m.np.head));
      }
      index = slot_index(best->ne.category, classes, false);
      object = out.entities[best->entity].id;
    } else {
      index = slot_index(m.ne.category, classes, false);
      if (index < 0 || m.entity < 0) return out_roles;
      object = out.entities[m.entity].id;
    }
    for (const auto &role : RolesFor(classes, roles, index)) {
      if (!role.empty()) out_roles.emplace_back(role, object);
    }
    return out_roles;
  };

  for (const auto &t : triggers) {
    const GazetteerEntry &e = *t.entry;
    auto roles = fill(t, e.left_classes, e.left_roles, t.left);
    auto right = fill(t, e.right_classes, e.right_roles, t.right);
    roles.insert(roles.end(), right.begin(), right.end());
    if (roles.empty() && !t.always) continue;
    for (const auto &[role, obj] : roles) {
      if (!onto_.FindAttribute(e.category, role)) {
        throw Error(ErrorKind::kSchema, "map role " + role +
                                            " is not an attribute of " +
                                            e.category);
      }
    }
    EventRecord *ev = nullptr;
    for (auto &cand : out.events) {
      if (onto_.SubclassOf(e.category, cand.cls) ||
          onto_.SubclassOf(cand.cls, e.category)) {
        ev = &cand;
        break;
      }
    }
    if (!ev) {
      EventRecord rec;
      rec.id = Key(salt, doc_key, t.sentence, t.offset, "event");
      rec.cls = e.category;
      out.events.push_back(std::move(rec));
      ev = &out.events.back();
    } else if (onto_.SubclassOf(e.category, ev->cls)) {
      ev->cls = e.category;
    }
    for (const auto &[role, obj] : roles) {
      auto same = std::find_if(ev->roles.begin(), ev->roles.end(),
                               [&](const auto &kv) { return kv.first == role; });
      if (same == ev->roles.end()) {
        ev->roles.emplace_back(role, obj);
      } else if (same->second != obj) {
        out.warnings.push_back("conflicting " + role + " for " + ev->cls +
                               " event; keeping the first value");
      }
    }
    if (out.marker && out.marker->event.empty()) out.marker->event = ev->id;
  }

  // Contingency step: no slot took the wh phrase.
  if (want_marker && !out.marker) {
    for (auto &ev : out.events) {
      if (wh_class.empty()) break;
      auto c = gaz_.ContingencyTrigger(ev.cls, wh_class, onto_);
      if (!c) continue;
      if (std::any_of(ev.roles.begin(), ev.roles.end(),
                      [&](const auto &kv) { return kv.first == c->role; })) {
        continue;
      }
      int sentence = 0, offset = 0;
      for (const auto &m : mentions) {
        if (m.target) {
          sentence = m.sentence;
          offset = m.np.head;
        }
      }
      std::string obj = place_marker(c->role, sentence, offset);
      ev.roles.emplace_back(c->role, obj);
      out.marker->event = ev.id;
      out.marker->contingency = true;
      break;
    }
    if (!out.marker) {
      throw Error(ErrorKind::kNoMarker,
                  "no event attribute can hold the answer" +
                      (wh_class.empty() ? std::string()
                                        : " of class " + wh_class));
    }
  }

  for (const auto &rec : out.entities) {
    out.triples.push_back({rec.id, kIsEdge, rec.entity.category});
    for (const auto &[attr, value] : rec.entity.attributes) {
      out.triples.push_back({rec.id, attr, value});
    }
  }
  out.triples.insert(out.triples.end(), marker_triples.begin(),
                     marker_triples.end());
  for (const auto &ev : out.events) {
    out.triples.push_back({ev.id, kIsEdge, ev.cls});
    for (const auto &[role, obj] : ev.roles) {
      out.triples.push_back({ev.id, role, obj});
    }
  }
  return out;
}

}  // namespace nalqa
