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

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "nalqa/error.h"
#include "nalqa/gazetteer.h"
#include "nalqa/ontology.h"

namespace nalqa {

namespace {

bool IsWh(const std::string &w) {
  static const std::set<std::string> kWh = {"who",  "whom",  "what", "which",
                                            "when", "where", "how",  "why"};
  return kWh.count(w) > 0;
}

std::string Spaced(std::string s) {
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

// Query paths grouped by event object, in first-appearance order.
std::vector<std::pair<std::string, std::vector<const PathSequence *>>>
GroupByEvent(const std::vector<PathSequence> &paths) {
  std::vector<std::pair<std::string, std::vector<const PathSequence *>>> out;
  for (const auto &p : paths) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto &g) { return g.first == p.n3; });
    if (it == out.end()) {
      out.push_back({p.n3, {}});
      it = out.end() - 1;
    }
    it->second.push_back(&p);
  }
  return out;
}

class Matcher {
 public:
  Matcher(const std::vector<PathSequence> &s, const Ontology &onto,
          bool relax)
      : onto_(onto), relax_(relax) {
    for (const auto &p : s) {
      auto &ev = events_[p.n3];
      ev.cls = p.n4;
      ev.paths.push_back(&p);
    }
  }

  bool ClassMatch(const std::string &stored, const std::string &query) const {
    if (stored == query) return true;
    return relax_ && onto_.HasClass(stored) && onto_.HasClass(query) &&
           onto_.SubclassOf(stored, query);
  }

  bool PathMatch(const PathSequence &q, const PathSequence &s) const {
    return q.n1 == s.n1 && q.e1 == s.e1 && q.e2 == s.e2 && q.e3 == s.e3 &&
           ClassMatch(s.n4, q.n4);
  }

  bool AnswerMatch(const PathSequence &a, const PathSequence &s) const {
    return a.e2 == s.e2 && a.e3 == s.e3 && ClassMatch(s.n4, a.n4);
  }

  struct Event {
    std::string cls;
    std::vector<const PathSequence *> paths;
  };

  bool Satisfies(const Event &ev, const PathSequence &q) const {
    return std::any_of(ev.paths.begin(), ev.paths.end(),
                       [&](const PathSequence *s) { return PathMatch(q, *s); });
  }

  // Stored events, ordered by id, whose class fits `query_class` and which
  // match every path of the group.
  std::vector<std::string> Coherent(
      const std::string &query_class,
      const std::vector<const PathSequence *> &group) const {
    std::vector<std::string> out;
    for (const auto &[id, ev] : events_) {
      if (!ClassMatch(ev.cls, query_class)) continue;
      bool all = std::all_of(group.begin(), group.end(),
                             [&](const PathSequence *q) {
                               return Satisfies(ev, *q);
                             });
      if (all) out.push_back(id);
    }
    return out;
  }

  // Paths of the group missing from the closest stored event: the one
  // matching the most paths, earliest id on ties. Every path when no stored
  // event matches any.
  std::vector<PathSequence> Missing(
      const std::string &query_class,
      const std::vector<const PathSequence *> &group) const {
    size_t best = 0;
    const Event *closest = nullptr;
    for (const auto &[id, ev] : events_) {
      if (!ClassMatch(ev.cls, query_class)) continue;
      size_t n = std::count_if(group.begin(), group.end(),
                               [&](const PathSequence *q) {
                                 return Satisfies(ev, *q);
                               });
      if (n > best) {
        best = n;
        closest = &ev;
      }
    }
    std::vector<PathSequence> out;
    for (const PathSequence *q : group) {
      if (closest == nullptr || !Satisfies(*closest, *q)) out.push_back(*q);
    }
    return out;
  }

  const std::map<std::string, Event> &events() const { return events_; }

 private:
  const Ontology &onto_;
  bool relax_;
  std::map<std::string, Event> events_;
};

std::string CapitalizeFirst(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(
                      static_cast<unsigned char>(s[0])));
  return s;
}

// Replaces every <NAME> placeholder using `value`; returns false when one
// has no value.
bool Fill(const std::string &text,
          const std::function<std::optional<std::string>(const std::string &)>
              &value,
          std::string *out) {
  out->clear();
  for (size_t i = 0; i < text.size();) {
    if (text[i] == '<') {
      size_t close = text.find('>', i);
      if (close != std::string::npos) {
        auto v = value(text.substr(i + 1, close - i - 1));
        if (!v) return false;
        *out += *v;
        i = close + 1;
        continue;
      }
    }
    *out += text[i++];
  }
  return true;
}

std::string Lower(std::string s) {
  for (char &c : s) c = static_cast<char>(std::tolower(
                        static_cast<unsigned char>(c)));
  return s;
}

std::string Involving(const std::vector<PathSequence> &paths) {
  std::string out;
  for (size_t i = 0; i < paths.size(); ++i) {
    if (i > 0) out += " and ";
    out += paths[i].n1 + " as " + Spaced(paths[i].e2);
  }
  return out;
}

std::string Explain(const MatchOutcome &outcome, const Reduction &r) {
  if (outcome.kind == OutcomeKind::kEventMissing) {
    std::string cls = outcome.failed.empty() ? "" : outcome.failed[0].n4;
    std::string text = "There is no such " + Spaced(cls) + " event";
    if (!outcome.failed.empty()) text += " involving " + Involving(outcome.failed);
    return text + ".";
  }
  // Knowledge missing.
  const PathSequence &a = *r.a;
  std::vector<PathSequence> known;
  for (const auto &q : r.q) {
    if (q.n3 == a.n3) known.push_back(q);
  }
  std::string text = "There is no information on the " + Spaced(a.e2) +
                     " of the " + Spaced(a.n4) + " event";
  if (!known.empty()) text += " involving " + Involving(known);
  return text + ".";
}

}  // namespace

const char *OutcomeKindName(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kAnswers: return "answers";
    case OutcomeKind::kConfirmed: return "confirmed";
    case OutcomeKind::kEventMissing: return "event-missing";
    case OutcomeKind::kKnowledgeMissing: return "knowledge-missing";
  }
  return "?";
}

QueryNetwork BuildQueryNetwork(const DepGraph &question, const Ontology &onto,
                               const Gazetteer &gaz) {
  QueryNetwork qn;
  qn.form = DetectQuestionForm(question);
  qn.question = question.sentence;
  for (const auto &t : question.tokens) {
    std::string w = Lower(t.word);
    if (IsWh(w)) {
      qn.wh_word = w;
      break;
    }
  }
  DiscourseIntegrator di(onto, gaz);
  Integration in = di.IntegrateQuestion(question);
  for (auto &t : in.triples) qn.net.Insert(std::move(t));
  qn.marker = std::move(in.marker);
  return qn;
}

Reduction Reduce(const SemanticNetwork &net) {
  Reduction r;
  for (auto &p : EnumeratePaths(net)) {
    if (p.n1 == kAnswerMarker && !r.a) {
      r.a = std::move(p);
    } else {
      r.q.push_back(std::move(p));
    }
  }
  if (r.a) {
    r.under_constrained = std::none_of(
        r.q.begin(), r.q.end(),
        [&](const PathSequence &q) { return q.n3 == r.a->n3; });
  }
  return r;
}

MatchOutcome Match(const Reduction &r, const std::vector<PathSequence> &s,
                   const Ontology &onto, bool relax) {
  Matcher m(s, onto, relax);
  MatchOutcome out;
  out.under_constrained = r.under_constrained;

  auto groups = GroupByEvent(r.q);
  if (r.a && std::none_of(groups.begin(), groups.end(), [&](const auto &g) {
        return g.first == r.a->n3;
      })) {
    groups.push_back({r.a->n3, {}});
  }
  std::vector<std::string> marker_events;
  for (const auto &[event, group] : groups) {
    std::string cls = group.empty() ? r.a->n4 : group[0]->n4;
    auto coherent = m.Coherent(cls, group);
    if (coherent.empty()) {
      out.kind = OutcomeKind::kEventMissing;
      out.failed = m.Missing(cls, group);
      return out;
    }
    if (r.a && event == r.a->n3) {
      marker_events = std::move(coherent);
    } else if (!r.a) {
      out.events.insert(out.events.end(), coherent.begin(), coherent.end());
    }
  }
  if (!r.a) {
    out.kind = OutcomeKind::kConfirmed;
    return out;
  }
  out.events = marker_events;
  for (const auto &id : marker_events) {
    std::set<std::string> seen;
    for (const PathSequence *p : m.events().at(id).paths) {
      if (!m.AnswerMatch(*r.a, *p) || !seen.insert(p->n2).second) continue;
      out.answers.push_back({p->n1, p->n2, p->n3});
    }
  }
  if (out.answers.empty()) {
    out.kind = OutcomeKind::kKnowledgeMissing;
    out.failed = {*r.a};
  } else {
    out.kind = OutcomeKind::kAnswers;
  }
  return out;
}

std::string RenderEntity(const SemanticNetwork &kb, const Ontology &onto,
                         const std::string &object) {
  std::vector<std::pair<std::string, std::string>> leaves;
  for (const Triple *t : kb.Attributes(object)) {
    if (!kb.IsObject(t->node2)) leaves.push_back({t->edge, t->node2});
  }
  std::vector<std::string> parts;
  auto cls = kb.ClassOf(object);
  if (cls && onto.HasClass(*cls)) {
    for (const auto &attr : onto.DisplayOrder(*cls)) {
      for (const auto &[edge, value] : leaves) {
        if (edge == attr) parts.push_back(value);
      }
    }
  }
  if (parts.empty()) {
    for (const auto &leaf : leaves) parts.push_back(leaf.second);
  }
  std::string out;
  for (const auto &p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out.empty() ? object : out;
}

std::string Respond(const MatchOutcome &outcome, const QueryNetwork &query,
                    const Reduction &reduction, const SemanticNetwork &kb,
                    const Ontology &onto) {
  switch (outcome.kind) {
    case OutcomeKind::kConfirmed:
      return "Yes, it is true";
    case OutcomeKind::kEventMissing:
    case OutcomeKind::kKnowledgeMissing:
      return Explain(outcome, reduction);
    case OutcomeKind::kAnswers:
      break;
  }

  // Distinct rendered values in event order, and per event.
  std::vector<std::string> values;
  std::vector<std::pair<std::string, std::vector<std::string>>> by_event;
  for (const auto &a : outcome.answers) {
    std::string v = RenderEntity(kb, onto, a.entity);
    if (std::find(values.begin(), values.end(), v) == values.end()) {
      values.push_back(v);
    }
    if (by_event.empty() || by_event.back().first != a.event) {
      by_event.push_back({a.event, {}});
    }
    auto &vs = by_event.back().second;
    if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
  }
  auto join = [](const std::vector<std::string> &vs) {
    std::string out;
    for (size_t i = 0; i < vs.size(); ++i) {
      if (i > 0) out += " and ";
      out += vs[i];
    }
    return out;
  };

  if (query.form == QuestionForm::kCount) {
    return std::to_string(values.size());
  }
  const std::string &role = reduction.a->e2;
  ResponseTemplate tmpl = onto.TemplateFor(role);
  if (tmpl.text == "<ANSWER>" && tmpl.clauses.empty()) return join(values);

  std::set<std::string> constrained;
  for (const auto &q : reduction.q) {
    if (q.n3 == reduction.a->n3) constrained.insert(q.e2);
  }
  std::vector<std::string> lines;
  for (const auto &[event, vs] : by_event) {
    std::string cls = kb.ClassOf(event).value_or("");
    auto value = [&](const std::string &name) -> std::optional<std::string> {
      if (name == "ANSWER") return join(vs);
      if (name == "EVENT") return Spaced(cls);
      std::string attr = Lower(name);
      if (attr == role || constrained.count(attr)) return std::nullopt;
      std::vector<std::string> fillers;
      for (const Triple *t : kb.Attributes(event)) {
        if (t->edge != attr) continue;
        fillers.push_back(kb.IsObject(t->node2)
                              ? RenderEntity(kb, onto, t->node2)
                              : t->node2);
      }
      if (fillers.empty()) return std::nullopt;
      return join(fillers);
    };
    std::string line;
    if (!Fill(tmpl.text, value, &line)) {
      // Placeholders of the main text other than ANSWER and EVENT render
      // empty rather than dropping the answer.
      auto lenient = [&](const std::string &name) {
        return std::optional<std::string>(value(name).value_or(""));
      };
      Fill(tmpl.text, lenient, &line);
    }
    for (const auto &clause : tmpl.clauses) {
      std::string piece;
      if (Fill(clause, value, &piece)) line += piece;
    }
    line = CapitalizeFirst(line);
    if (std::find(lines.begin(), lines.end(), line) == lines.end()) {
      lines.push_back(line);
    }
  }
  std::string out;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out += '\n';
    out += lines[i];
  }
  return out;
}

QueryEngine::QueryEngine(const Ontology &onto, const Gazetteer &gaz,
                         const SemanticNetwork &kb)
    : onto_(onto), gaz_(gaz), kb_(kb), parser_(gaz, onto),
      paths_(EnumeratePaths(kb)) {}

Reply QueryEngine::Ask(const std::string &question, bool relax) const {
  auto unknown = parser_.UnknownWords(question);
  if (unknown.empty()) return AskParsed(parser_.Parse(question), relax);

  Reply reply;
  reply.unknown_words = unknown;
  std::string text = question;
  while (!text.empty() && (text.back() == '?' || text.back() == ' ')) {
    text.pop_back();
  }
  for (const auto &w : unknown) {
    for (size_t pos = text.find(w); pos != std::string::npos;
         pos = text.find(w, pos + 1)) {
      auto boundary = [&](size_t i) {
        return i >= text.size() ||
               !std::isalnum(static_cast<unsigned char>(text[i]));
      };
      if ((pos == 0 || boundary(pos - 1)) && boundary(pos + w.size())) {
        text.replace(pos, w.size(), "_" + w + "_");
        break;
      }
    }
  }
  reply.text = "There are some spelling errors in the question. " + text;
  return reply;
}

Reply QueryEngine::AskParsed(const DepGraph &question, bool relax) const {
  Reply reply;
  reply.query = BuildQueryNetwork(question, onto_, gaz_);
  reply.reduction = Reduce(reply.query->net);
  reply.outcome = Match(reply.reduction, paths_, onto_, relax);
  reply.text = Respond(reply.outcome, *reply.query, reply.reduction, kb_, onto_);
  reply.answered = reply.outcome.kind == OutcomeKind::kAnswers ||
                   reply.outcome.kind == OutcomeKind::kConfirmed;
  return reply;
}

}  // namespace nalqa
