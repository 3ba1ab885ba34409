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


#ifndef NALQA_ONTOLOGY_H_
#define NALQA_ONTOLOGY_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nalqa {

// A term of the clause language: a variable, an atom or a complex term.
struct Term {
  enum Kind { kVariable, kAtom, kComplex };

  Kind kind = kAtom;
  std::string name;
  std::vector<Term> args;

  static Term Variable(std::string name);
  static Term Atom(std::string name);
  static Term Complex(std::string functor, std::vector<Term> args);

  bool IsClassTerm() const { return kind == kComplex && args.size() == 1; }
  bool IsAttributeTerm() const { return kind == kComplex && args.size() == 2; }

  // Replaces every occurrence of variable `var` with `value`.
  Term Substitute(const std::string &var, const Term &value) const;

  std::string ToString() const;

  bool operator==(const Term &other) const = default;
};

// Parses a single term, e.g. "name(g1, \"federal court\")".
Term ParseTerm(std::string_view text);

// Goal clauses. Leaves delegate to SubclassOf, InstanceOf and HasProp.
struct Goal {
  enum Kind { kSubclass, kInstance, kHasProp, kAnd, kOr };

  Kind kind = kSubclass;
  // kSubclass: lhs is the superclass term, rhs the subclass term
  // ("organization(X) => court(X)"). kInstance: lhs instance atom, rhs class
  // term. kHasProp: lhs instance atom, rhs attribute term.
  Term lhs;
  Term rhs;
  std::vector<Goal> operands;

  std::string ToString() const;
};

Goal ParseGoal(std::string_view text);

// Value constraint of an attribute: atomic, or one of a set of classes.
struct AttributeSchema {
  std::string owner;  // class that declares the attribute
  std::string name;
  std::vector<std::string> classes;  // empty for atomic values

  bool atomic() const { return classes.empty(); }
};

struct ResponseTemplate {
  std::string attribute;
  std::string text;
  // Optional elaboration clauses appended after `text`; a clause is dropped
  // when one of its placeholders has no value.
  std::vector<std::string> clauses;
};

// A conditional or unconditional property attached to an instance or class.
struct Prop {
  Term term;                  // attribute term p(t1, t2)
  std::optional<Goal> guard;  // p(t1,t2) :- G
};

class Ontology {
 public:
  Ontology() = default;

  static Ontology Load(std::string_view text);
  std::string Serialize() const;

  // Classes in declaration order.
  const std::vector<std::string> &classes() const { return classes_; }
  bool HasClass(const std::string &c) const { return index_.count(c) > 0; }
  bool HasInstance(const std::string &e) const {
    return instances_.count(e) > 0;
  }
  const std::vector<std::string> &Parents(const std::string &c) const;
  const std::vector<std::string> &Children(const std::string &c) const;
  std::vector<std::string> Roots() const;
  // Ancestors of c, nearest first, excluding c itself.
  std::vector<std::string> Ancestors(const std::string &c) const;

  // True iff c1 is c2 or a descendant of c2.
  bool SubclassOf(const std::string &c1, const std::string &c2) const;
  bool InstanceOf(const std::string &e, const std::string &c) const;
  bool HasProp(const std::string &e, const Term &p) const;
  bool Prove(const Goal &g) const;

  // Own attributes first, then inherited ones nearest ancestor first; a name
  // declared closer to c shadows the same name further up.
  std::vector<AttributeSchema> AttributeSchemaFor(const std::string &c) const;
  std::optional<AttributeSchema> FindAttribute(const std::string &c,
                                               const std::string &attr) const;
  // True if the class carries an attribute whose value is a class.
  bool IsEventClass(const std::string &c) const;
  // True if some event class declares or inherits attr.
  bool IsEventAttribute(const std::string &attr) const;

  ResponseTemplate TemplateFor(const std::string &attr) const;
  // Atomic attributes rendered for an entity: the nearest display clause if
  // any, else every atomic attribute in schema order.
  std::vector<std::string> DisplayOrder(const std::string &c) const;
  const std::set<std::string> &lexicon() const { return lexicon_; }

 private:
  struct ClassInfo {
    std::vector<std::string> parents;
    std::vector<std::string> children;
    std::vector<AttributeSchema> attributes;
  };

  // Clause records kept in source order for serialization.
  struct KindOne {
    Term head;
    std::vector<std::vector<Term>> groups;
  };
  struct KindTwo {
    std::string instance;
    std::vector<Term> classes;
  };
  struct PropClause {
    Term owner;
    std::vector<Prop> props;
  };
  struct AttrClause {
    Term owner;
    std::vector<AttributeSchema> attributes;
  };
  struct DisplayClause {
    std::string cls;
    std::vector<std::string> attrs;
  };
  enum ClauseKind { kKindOne, kKindTwo, kProps, kAttribute, kTemplate,
                    kDisplay, kLexicon };

  void AddClass(const std::string &c);
  void AddEdge(const std::string &parent, const std::string &child);
  void ParseClause(std::string_view text, int line);
  void Finish();
  const ClassInfo &Info(const std::string &c) const;
  bool HasPropAt(const std::string &e, const Term &p, int depth) const;
  bool ProveAt(const Goal &g, int depth) const;
  bool GuardHolds(const Prop &prop, const std::string &var,
                  const std::string &e, int depth) const;

  std::vector<std::string> classes_;
  std::map<std::string, ClassInfo> index_;
  std::map<std::string, std::vector<std::string>> instances_;
  std::map<std::string, std::vector<Prop>> instance_props_;
  // Class-level props keyed by class, with the owner variable name.
  std::map<std::string, std::vector<std::pair<std::string, Prop>>>
      class_props_;
  std::map<std::string, ResponseTemplate> templates_;
  std::map<std::string, std::vector<std::string>> display_;
  std::set<std::string> lexicon_;

  std::vector<std::pair<ClauseKind, size_t>> order_;
  std::vector<KindOne> kind_one_;
  std::vector<KindTwo> kind_two_;
  std::vector<PropClause> prop_clauses_;
  std::vector<AttrClause> attr_clauses_;
  std::vector<ResponseTemplate> template_clauses_;
  std::vector<DisplayClause> display_clauses_;
  std::vector<std::vector<std::string>> lexicon_clauses_;
};

}  // namespace nalqa

#endif  // NALQA_ONTOLOGY_H_
