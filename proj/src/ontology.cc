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


#include "nalqa/ontology.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <regex>

#include "nalqa/error.h"

namespace nalqa {

namespace {

constexpr int kMaxGuardDepth = 32;

bool IsBareAtom(const std::string &s) {
  if (s.empty()) return false;
  if (!std::islower(static_cast<unsigned char>(s[0])) &&
      !std::isdigit(static_cast<unsigned char>(s[0]))) {
    return false;
  }
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::string Quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

// Lexer for the clause language.
struct Token {
  enum Type { kIdent, kVar, kString, kPunct, kEnd };
  Type type = kEnd;
  std::string text;
};

class Lexer {
 public:
  Lexer(std::string_view text, int line) : text_(text), line_(line) {
    Scan();
  }

  const Token &Peek(size_t ahead = 0) const {
    size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  Token Next() {
    Token t = Peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool AtEnd() const { return Peek().type == Token::kEnd; }
  bool IsPunct(const char *p, size_t ahead = 0) const {
    return Peek(ahead).type == Token::kPunct && Peek(ahead).text == p;
  }
  bool Accept(const char *p) {
    if (!IsPunct(p)) return false;
    Next();
    return true;
  }
  void Expect(const char *p) {
    if (!Accept(p)) Fail(std::string("expected '") + p + "'");
  }
  [[noreturn]] void Fail(const std::string &what) const {
    std::string near = AtEnd() ? "end of clause" : "'" + Peek().text + "'";
    throw Error(ErrorKind::kParse, "line " + std::to_string(line_) + ": " +
                                       what + " near " + near);
  }
  int line() const { return line_; }

 private:
  void Scan() {
    size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '"') {
        std::string s;
        ++i;
        bool closed = false;
        while (i < text_.size()) {
          if (text_[i] == '\\' && i + 1 < text_.size()) {
            s += text_[i + 1];
            i += 2;
          } else if (text_[i] == '"') {
            ++i;
            closed = true;
            break;
          } else {
            s += text_[i++];
          }
        }
        if (!closed) {
          throw Error(ErrorKind::kParse, "line " + std::to_string(line_) +
                                             ": unterminated string");
        }
        tokens_.push_back({Token::kString, s});
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) ||
                text_[j] == '_')) {
          ++j;
        }
        std::string word(text_.substr(i, j - i));
        bool var = std::isupper(static_cast<unsigned char>(c)) || c == '_';
        tokens_.push_back({var ? Token::kVar : Token::kIdent, word});
        i = j;
      } else {
        std::string_view rest = text_.substr(i);
        std::string p;
        for (const char *two : {"=>", "<-", ":-"}) {
          if (rest.substr(0, 2) == two) p = two;
        }
        if (p.empty()) {
          if (std::string("()[],|;&.").find(c) == std::string::npos) {
            throw Error(ErrorKind::kParse, "line " + std::to_string(line_) +
                                               ": unexpected character '" +
                                               std::string(1, c) + "'");
          }
          p = std::string(1, c);
        }
        tokens_.push_back({Token::kPunct, p});
        i += p.size();
      }
    }
    tokens_.push_back({Token::kEnd, ""});
  }

  std::string_view text_;
  int line_;
  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

Term ReadTerm(Lexer &lex) {
  Token t = lex.Next();
  switch (t.type) {
    case Token::kVar:
      return Term::Variable(t.text);
    case Token::kString:
      return Term::Atom(t.text);
    case Token::kIdent: {
      if (!lex.Accept("(")) return Term::Atom(t.text);
      std::vector<Term> args;
      if (!lex.IsPunct(")")) {
        do {
          args.push_back(ReadTerm(lex));
        } while (lex.Accept(","));
      }
      lex.Expect(")");
      return Term::Complex(t.text, std::move(args));
    }
    default:
      lex.Fail("expected a term");
  }
}

Goal ReadGoal(Lexer &lex);

Goal ReadGoalPrimary(Lexer &lex) {
  if (lex.Accept("(")) {
    Goal g = ReadGoal(lex);
    lex.Expect(")");
    return g;
  }
  Goal g;
  if (lex.Peek().type == Token::kIdent && lex.Peek().text == "hasprop" &&
      lex.IsPunct("(", 1)) {
    lex.Next();
    lex.Next();
    g.kind = Goal::kHasProp;
    g.lhs = ReadTerm(lex);
    lex.Expect(",");
    g.rhs = ReadTerm(lex);
    lex.Expect(")");
    if (g.lhs.kind == Term::kComplex || !g.rhs.IsAttributeTerm()) {
      lex.Fail("hasprop expects an instance and an attribute term");
    }
    return g;
  }
  g.lhs = ReadTerm(lex);
  if (lex.Accept("<-")) {
    g.kind = Goal::kInstance;
    g.rhs = ReadTerm(lex);
    if (g.lhs.kind == Term::kComplex || !g.rhs.IsClassTerm()) {
      lex.Fail("instance goal expects 'e <- c(X)'");
    }
  } else if (lex.Accept("=>")) {
    g.kind = Goal::kSubclass;
    g.rhs = ReadTerm(lex);
    if (!g.lhs.IsClassTerm() || !g.rhs.IsClassTerm()) {
      lex.Fail("subclass goal expects 'c1(X) => c2(X)'");
    }
  } else {
    lex.Fail("expected a goal");
  }
  return g;
}

Goal ReadConjunction(Lexer &lex) {
  Goal g = ReadGoalPrimary(lex);
  while (lex.Accept(",")) {
    Goal conj;
    conj.kind = Goal::kAnd;
    conj.operands = {std::move(g), ReadGoalPrimary(lex)};
    g = std::move(conj);
  }
  return g;
}

Goal ReadGoal(Lexer &lex) {
  Goal g = ReadConjunction(lex);
  while (lex.Accept(";")) {
    Goal disj;
    disj.kind = Goal::kOr;
    disj.operands = {std::move(g), ReadConjunction(lex)};
    g = std::move(disj);
  }
  return g;
}

Goal SubstituteGoal(const Goal &g, const std::string &var, const Term &value) {
  Goal out = g;
  out.lhs = g.lhs.Substitute(var, value);
  out.rhs = g.rhs.Substitute(var, value);
  for (auto &op : out.operands) op = SubstituteGoal(op, var, value);
  return out;
}

// Variables in the pattern act as wildcards.
bool TermMatches(const Term &pattern, const Term &term) {
  if (pattern.kind == Term::kVariable) return true;
  if (pattern.kind != term.kind || pattern.name != term.name ||
      pattern.args.size() != term.args.size()) {
    return false;
  }
  for (size_t i = 0; i < pattern.args.size(); ++i) {
    if (!TermMatches(pattern.args[i], term.args[i])) return false;
  }
  return true;
}

std::string ClassVar(const Term &t) {
  return t.args[0].kind == Term::kVariable ? t.args[0].name : "";
}

std::string JoinStrings(const std::vector<std::string> &items,
                        const std::string &sep) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

Term Term::Variable(std::string name) {
  Term t;
  t.kind = kVariable;
  t.name = std::move(name);
  return t;
}

Term Term::Atom(std::string name) {
  Term t;
  t.kind = kAtom;
  t.name = std::move(name);
  return t;
}

Term Term::Complex(std::string functor, std::vector<Term> args) {
  Term t;
  t.kind = kComplex;
  t.name = std::move(functor);
  t.args = std::move(args);
  return t;
}

Term Term::Substitute(const std::string &var, const Term &value) const {
  if (kind == kVariable) return name == var ? value : *this;
  Term out = *this;
  for (auto &a : out.args) a = a.Substitute(var, value);
  return out;
}

std::string Term::ToString() const {
  switch (kind) {
    case kVariable:
      return name;
    case kAtom:
      return IsBareAtom(name) ? name : Quote(name);
    case kComplex: {
      std::vector<std::string> parts;
      for (const auto &a : args) parts.push_back(a.ToString());
      return name + "(" + JoinStrings(parts, ", ") + ")";
    }
  }
  return name;
}

Term ParseTerm(std::string_view text) {
  Lexer lex(text, 1);
  Term t = ReadTerm(lex);
  if (!lex.AtEnd()) lex.Fail("trailing input");
  return t;
}

std::string Goal::ToString() const {
  switch (kind) {
    case kSubclass:
      return lhs.ToString() + " => " + rhs.ToString();
    case kInstance:
      return lhs.ToString() + " <- " + rhs.ToString();
    case kHasProp:
      return "hasprop(" + lhs.ToString() + ", " + rhs.ToString() + ")";
    case kAnd: {
      std::vector<std::string> parts;
      for (const auto &op : operands) {
        parts.push_back(op.kind == kOr ? "(" + op.ToString() + ")"
                                       : op.ToString());
      }
      return JoinStrings(parts, ", ");
    }
    case kOr: {
      std::vector<std::string> parts;
      for (const auto &op : operands) parts.push_back(op.ToString());
      return JoinStrings(parts, "; ");
    }
  }
  return "";
}

Goal ParseGoal(std::string_view text) {
  Lexer lex(text, 1);
  Goal g = ReadGoal(lex);
  lex.Accept(".");
  if (!lex.AtEnd()) lex.Fail("trailing input");
  return g;
}

Ontology Ontology::Load(std::string_view text) {
  Ontology onto;
  // Clauses may span lines while brackets are open.
  std::string pending;
  int start_line = 0;
  int depth = 0;
  int line_no = 0;
  bool in_string = false;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    std::string kept;
    for (char c : line) {
      if (c == '"') in_string = !in_string;
      if (c == '#' && !in_string) break;
      if (!in_string) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
      }
      kept += c;
    }
    bool blank = kept.find_first_not_of(" \t\r") == std::string::npos;
    if (pending.empty() && blank) {
      if (end == text.size()) break;
      continue;
    }
    if (pending.empty()) start_line = line_no;
    pending += kept;
    pending += ' ';
    if (depth <= 0 && !in_string) {
      onto.ParseClause(pending, start_line);
      pending.clear();
      depth = 0;
    }
    if (end == text.size()) break;
  }
  if (!pending.empty()) {
    throw Error(ErrorKind::kParse, "line " + std::to_string(start_line) +
                                       ": unbalanced brackets");
  }
  onto.Finish();
  return onto;
}

void Ontology::AddClass(const std::string &c) {
  if (index_.count(c)) return;
  index_[c];
  classes_.push_back(c);
}

void Ontology::AddEdge(const std::string &parent, const std::string &child) {
  AddClass(parent);
  AddClass(child);
  auto &children = index_[parent].children;
  if (std::find(children.begin(), children.end(), child) == children.end()) {
    children.push_back(child);
    index_[child].parents.push_back(parent);
  }
}

void Ontology::ParseClause(std::string_view text, int line) {
  Lexer lex(text, line);
  auto finish = [&lex]() {
    lex.Accept(".");
    if (!lex.AtEnd()) lex.Fail("trailing input");
  };
  auto read_class_term = [&lex](const std::string &var) {
    Term t = ReadTerm(lex);
    if (!t.IsClassTerm()) lex.Fail("expected a class term");
    if (!var.empty() && ClassVar(t) != var) {
      lex.Fail("class term must share the variable " + var);
    }
    return t;
  };

  const Token &first = lex.Peek();
  bool directive = first.type == Token::kIdent && lex.IsPunct("(", 1);
  if (directive && first.text == "attribute") {
    lex.Next();
    lex.Next();
    Term owner = read_class_term("");
    std::string var = ClassVar(owner);
    if (var.empty()) lex.Fail("attribute owner must be c(X)");
    lex.Expect(",");
    lex.Expect("[");
    AttrClause clause{owner, {}};
    do {
      Token name = lex.Next();
      if (name.type != Token::kIdent) lex.Fail("expected attribute name");
      lex.Expect("(");
      Token v = lex.Next();
      if (v.type != Token::kVar || v.text != var) {
        lex.Fail("attribute must be declared on " + var);
      }
      lex.Expect(",");
      AttributeSchema schema{owner.name, name.text, {}};
      if (lex.Peek().type == Token::kVar) {
        lex.Next();
      } else {
        do {
          Term c = ReadTerm(lex);
          if (!c.IsClassTerm()) lex.Fail("expected a value class term");
          schema.classes.push_back(c.name);
        } while (lex.Accept("|") || lex.Accept(";"));
      }
      lex.Expect(")");
      clause.attributes.push_back(schema);
    } while (lex.Accept(","));
    lex.Expect("]");
    lex.Expect(")");
    finish();
    AddClass(owner.name);
    for (const auto &a : clause.attributes) {
      auto &attrs = index_[owner.name].attributes;
      auto it = std::find_if(attrs.begin(), attrs.end(),
                             [&a](const AttributeSchema &s) {
                               return s.name == a.name;
                             });
      if (it != attrs.end()) {
        *it = a;
      } else {
        attrs.push_back(a);
      }
    }
    order_.emplace_back(kAttribute, attr_clauses_.size());
    attr_clauses_.push_back(std::move(clause));
    return;
  }
  if (directive && (first.text == "props" || first.text == "prop")) {
    lex.Next();
    lex.Next();
    Term owner = ReadTerm(lex);
    std::string subject;
    if (owner.kind == Term::kAtom) {
      subject = owner.name;
    } else if (owner.IsClassTerm() && !ClassVar(owner).empty()) {
      subject = ClassVar(owner);
    } else {
      lex.Fail("props owner must be an instance or c(X)");
    }
    lex.Expect(",");
    lex.Expect("[");
    PropClause clause{owner, {}};
    if (!lex.IsPunct("]")) {
      do {
        Prop prop{ReadTerm(lex), std::nullopt};
        if (!prop.term.IsAttributeTerm()) lex.Fail("expected p(t1, t2)");
        const Term &t1 = prop.term.args[0];
        if (t1.name != subject) {
          lex.Fail("first argument must be " + subject);
        }
        if (lex.Accept(":-")) prop.guard = ReadGoalPrimary(lex);
        clause.props.push_back(std::move(prop));
      } while (lex.Accept(","));
    }
    lex.Expect("]");
    lex.Expect(")");
    finish();
    for (const auto &p : clause.props) {
      if (owner.kind == Term::kAtom) {
        instance_props_[owner.name].push_back(p);
      } else {
        class_props_[owner.name].emplace_back(subject, p);
      }
    }
    order_.emplace_back(kProps, prop_clauses_.size());
    prop_clauses_.push_back(std::move(clause));
    return;
  }
  if (directive && first.text == "template") {
    lex.Next();
    lex.Next();
    Token attr = lex.Next();
    if (attr.type != Token::kIdent) lex.Fail("expected attribute name");
    lex.Expect(",");
    Token body = lex.Next();
    if (body.type != Token::kString) lex.Fail("expected template string");
    ResponseTemplate t{attr.text, body.text, {}};
    if (lex.Accept(",")) {
      lex.Expect("[");
      if (!lex.IsPunct("]")) {
        do {
          Token c = lex.Next();
          if (c.type != Token::kString) lex.Fail("expected clause string");
          t.clauses.push_back(c.text);
        } while (lex.Accept(","));
      }
      lex.Expect("]");
    }
    lex.Expect(")");
    finish();
    templates_[t.attribute] = t;
    order_.emplace_back(kTemplate, template_clauses_.size());
    template_clauses_.push_back(std::move(t));
    return;
  }
  if (directive && first.text == "display") {
    lex.Next();
    lex.Next();
    Token cls = lex.Next();
    if (cls.type != Token::kIdent) lex.Fail("expected class name");
    lex.Expect(",");
    lex.Expect("[");
    DisplayClause clause{cls.text, {}};
    if (!lex.IsPunct("]")) {
      do {
        Token a = lex.Next();
        if (a.type != Token::kIdent) lex.Fail("expected attribute name");
        clause.attrs.push_back(a.text);
      } while (lex.Accept(","));
    }
    lex.Expect("]");
    lex.Expect(")");
    finish();
    display_[clause.cls] = clause.attrs;
    order_.emplace_back(kDisplay, display_clauses_.size());
    display_clauses_.push_back(std::move(clause));
    return;
  }
  if (directive && first.text == "lexicon") {
    lex.Next();
    lex.Next();
    lex.Expect("[");
    std::vector<std::string> words;
    if (!lex.IsPunct("]")) {
      do {
        Token w = lex.Next();
        if (w.type != Token::kIdent && w.type != Token::kString) {
          lex.Fail("expected a word");
        }
        words.push_back(w.text);
      } while (lex.Accept(","));
    }
    lex.Expect("]");
    lex.Expect(")");
    finish();
    lexicon_.insert(words.begin(), words.end());
    order_.emplace_back(kLexicon, lexicon_clauses_.size());
    lexicon_clauses_.push_back(std::move(words));
    return;
  }

  // Kind-2: e <- c(X), d(X).
  if ((first.type == Token::kIdent || first.type == Token::kString) &&
      lex.IsPunct("<-", 1)) {
    Token inst = lex.Next();
    lex.Next();
    KindTwo clause{inst.text, {}};
    Term c = read_class_term("");
    std::string var = ClassVar(c);
    if (var.empty()) lex.Fail("instance class must be c(X)");
    clause.classes.push_back(c);
    while (lex.Accept(",")) clause.classes.push_back(read_class_term(var));
    finish();
    auto &declared = instances_[inst.text];
    for (const auto &t : clause.classes) {
      if (std::find(declared.begin(), declared.end(), t.name) ==
          declared.end()) {
        declared.push_back(t.name);
      }
    }
    order_.emplace_back(kKindTwo, kind_two_.size());
    kind_two_.push_back(std::move(clause));
    return;
  }

  // Kind-1: c(X) => a(X) | b(X), d(X).
  Term head = read_class_term("");
  std::string var = ClassVar(head);
  if (var.empty()) lex.Fail("class head must be c(X)");
  lex.Expect("=>");
  KindOne clause{head, {}};
  do {
    std::vector<Term> group;
    do {
      group.push_back(read_class_term(var));
    } while (lex.Accept("|") || lex.Accept(";"));
    clause.groups.push_back(std::move(group));
  } while (lex.Accept(",") || lex.Accept("&"));
  finish();
  AddClass(head.name);
  for (const auto &g : clause.groups) {
    for (const auto &t : g) {
      if (t.name == head.name) {
        throw Error(ErrorKind::kCycle,
                    "line " + std::to_string(line) + ": class " + t.name +
                        " is its own subclass");
      }
      AddEdge(head.name, t.name);
    }
  }
  order_.emplace_back(kKindOne, kind_one_.size());
  kind_one_.push_back(std::move(clause));
}

void Ontology::Finish() {
  // Cycle detection with a three-colour depth-first walk.
  std::map<std::string, int> colour;
  std::function<void(const std::string &)> visit =
      [&](const std::string &c) {
        colour[c] = 1;
        for (const auto &child : index_[c].children) {
          if (colour[child] == 1) {
            throw Error(ErrorKind::kCycle,
                        "subclass cycle through class " + child);
          }
          if (colour[child] == 0) visit(child);
        }
        colour[c] = 2;
      };
  for (const auto &c : classes_) {
    if (colour[c] == 0) visit(c);
  }

  for (const auto &[name, info] : index_) {
    for (const auto &a : info.attributes) {
      for (const auto &c : a.classes) {
        if (!index_.count(c)) {
          throw Error(ErrorKind::kUnknownClass,
                      "attribute " + a.name + " of " + name +
                          " refers to unknown class " + c);
        }
      }
    }
  }
  for (const auto &[e, cs] : instances_) {
    for (const auto &c : cs) {
      if (!index_.count(c)) {
        throw Error(ErrorKind::kUnknownClass,
                    "instance " + e + " declared under unknown class " + c);
      }
    }
  }
  for (const auto &[c, props] : class_props_) {
    if (!index_.count(c)) {
      throw Error(ErrorKind::kUnknownClass, "props on unknown class " + c);
    }
  }

  static const std::regex kPlaceholder("<([A-Z_]+)>");
  for (const auto &[attr, t] : templates_) {
    std::vector<std::string> texts = t.clauses;
    texts.push_back(t.text);
    for (const auto &text : texts) {
      for (auto it = std::sregex_iterator(text.begin(), text.end(),
                                          kPlaceholder);
           it != std::sregex_iterator(); ++it) {
        std::string name = (*it)[1].str();
        if (name == "ANSWER" || name == "EVENT") continue;
        std::string lower = name;
        std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
        if (!IsEventAttribute(lower)) {
          throw Error(ErrorKind::kUnknownAttribute,
                      "template for " + attr + " names unknown attribute <" +
                          name + ">");
        }
      }
    }
  }
}

const Ontology::ClassInfo &Ontology::Info(const std::string &c) const {
  auto it = index_.find(c);
  if (it == index_.end()) {
    throw Error(ErrorKind::kUnknownClass, "unknown class " + c);
  }
  return it->second;
}

const std::vector<std::string> &Ontology::Parents(const std::string &c) const {
  return Info(c).parents;
}

const std::vector<std::string> &Ontology::Children(
    const std::string &c) const {
  return Info(c).children;
}

std::vector<std::string> Ontology::Roots() const {
  std::vector<std::string> roots;
  for (const auto &c : classes_) {
    if (index_.at(c).parents.empty()) roots.push_back(c);
  }
  return roots;
}

std::vector<std::string> Ontology::Ancestors(const std::string &c) const {
  std::vector<std::string> out;
  std::set<std::string> seen{c};
  std::deque<std::string> queue{c};
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    for (const auto &p : Info(cur).parents) {
      if (seen.insert(p).second) {
        out.push_back(p);
        queue.push_back(p);
      }
    }
  }
  return out;
}

bool Ontology::SubclassOf(const std::string &c1, const std::string &c2) const {
  Info(c2);
  if (c1 == c2) {
    Info(c1);
    return true;
  }
  for (const auto &a : Ancestors(c1)) {
    if (a == c2) return true;
  }
  return false;
}

bool Ontology::InstanceOf(const std::string &e, const std::string &c) const {
  auto it = instances_.find(e);
  if (it == instances_.end()) {
    throw Error(ErrorKind::kUnknownInstance, "unknown instance " + e);
  }
  Info(c);
  for (const auto &d : it->second) {
    if (SubclassOf(d, c)) return true;
  }
  return false;
}

bool Ontology::HasProp(const std::string &e, const Term &p) const {
  return HasPropAt(e, p, 0);
}

bool Ontology::GuardHolds(const Prop &prop, const std::string &var,
                          const std::string &e, int depth) const {
  if (!prop.guard) return true;
  Goal g = var.empty() ? *prop.guard
                       : SubstituteGoal(*prop.guard, var, Term::Atom(e));
  return ProveAt(g, depth + 1);
}

bool Ontology::HasPropAt(const std::string &e, const Term &p,
                         int depth) const {
  auto inst = instances_.find(e);
  if (inst == instances_.end()) {
    throw Error(ErrorKind::kUnknownInstance, "unknown instance " + e);
  }
  if (depth > kMaxGuardDepth) return false;
  if (auto it = instance_props_.find(e); it != instance_props_.end()) {
    for (const auto &prop : it->second) {
      if (TermMatches(p, prop.term) && GuardHolds(prop, "", e, depth)) {
        return true;
      }
    }
  }
  std::set<std::string> classes;
  for (const auto &d : inst->second) {
    classes.insert(d);
    for (const auto &a : Ancestors(d)) classes.insert(a);
  }
  for (const auto &c : classes) {
    auto it = class_props_.find(c);
    if (it == class_props_.end()) continue;
    for (const auto &[var, prop] : it->second) {
      Term bound = prop.term.Substitute(var, Term::Atom(e));
      if (TermMatches(p, bound) && GuardHolds(prop, var, e, depth)) {
        return true;
      }
    }
  }
  return false;
}

bool Ontology::Prove(const Goal &g) const { return ProveAt(g, 0); }

bool Ontology::ProveAt(const Goal &g, int depth) const {
  switch (g.kind) {
    case Goal::kSubclass:
      return SubclassOf(g.rhs.name, g.lhs.name);
    case Goal::kInstance:
    case Goal::kHasProp:
      // Variables are bound only inside class-level guards.
      if (g.lhs.kind == Term::kVariable) {
        throw Error(ErrorKind::kInvalidArgument,
                    "unbound variable " + g.lhs.name + " in goal");
      }
      if (g.kind == Goal::kInstance) return InstanceOf(g.lhs.name, g.rhs.name);
      return HasPropAt(g.lhs.name, g.rhs, depth);
    case Goal::kAnd: {
      // Both operands are evaluated so unknown names always surface.
      bool a = ProveAt(g.operands[0], depth);
      bool b = ProveAt(g.operands[1], depth);
      return a && b;
    }
    case Goal::kOr: {
      bool a = ProveAt(g.operands[0], depth);
      bool b = ProveAt(g.operands[1], depth);
      return a || b;
    }
  }
  return false;
}

std::vector<AttributeSchema> Ontology::AttributeSchemaFor(
    const std::string &c) const {
  std::vector<AttributeSchema> out;
  std::set<std::string> seen;
  std::vector<std::string> chain{c};
  for (const auto &a : Ancestors(c)) chain.push_back(a);
  for (const auto &cls : chain) {
    for (const auto &a : Info(cls).attributes) {
      if (seen.insert(a.name).second) out.push_back(a);
    }
  }
  return out;
}

std::optional<AttributeSchema> Ontology::FindAttribute(
    const std::string &c, const std::string &attr) const {
  for (auto &a : AttributeSchemaFor(c)) {
    if (a.name == attr) return a;
  }
  return std::nullopt;
}

bool Ontology::IsEventClass(const std::string &c) const {
  for (const auto &a : AttributeSchemaFor(c)) {
    if (!a.atomic()) return true;
  }
  return false;
}

bool Ontology::IsEventAttribute(const std::string &attr) const {
  for (const auto &c : classes_) {
    if (!IsEventClass(c)) continue;
    if (FindAttribute(c, attr)) return true;
  }
  return false;
}

ResponseTemplate Ontology::TemplateFor(const std::string &attr) const {
  if (auto it = templates_.find(attr); it != templates_.end()) {
    return it->second;
  }
  bool declared = false;
  for (const auto &[c, info] : index_) {
    for (const auto &a : info.attributes) declared |= a.name == attr;
  }
  if (!declared) {
    throw Error(ErrorKind::kUnknownAttribute, "unknown attribute " + attr);
  }
  return ResponseTemplate{attr, "<ANSWER>", {}};
}

std::vector<std::string> Ontology::DisplayOrder(const std::string &c) const {
  std::vector<std::string> atomic;
  for (const auto &a : AttributeSchemaFor(c)) {
    if (a.atomic()) atomic.push_back(a.name);
  }
  std::vector<std::string> chain{c};
  for (const auto &a : Ancestors(c)) chain.push_back(a);
  std::vector<std::string> out;
  for (const auto &cls : chain) {
    auto it = display_.find(cls);
    if (it == display_.end()) continue;
    for (const auto &a : it->second) {
      if (std::find(atomic.begin(), atomic.end(), a) != atomic.end()) {
        out.push_back(a);
      }
    }
    return out;
  }
  return atomic;
}

std::string Ontology::Serialize() const {
  std::string out;
  for (const auto &[kind, i] : order_) {
    switch (kind) {
      case kKindOne: {
        const auto &k = kind_one_[i];
        std::vector<std::string> groups;
        for (const auto &g : k.groups) {
          std::vector<std::string> terms;
          for (const auto &t : g) terms.push_back(t.ToString());
          groups.push_back(JoinStrings(terms, " | "));
        }
        out += k.head.ToString() + " => " + JoinStrings(groups, ", ");
        break;
      }
      case kKindTwo: {
        const auto &k = kind_two_[i];
        std::vector<std::string> terms;
        for (const auto &t : k.classes) terms.push_back(t.ToString());
        out += Term::Atom(k.instance).ToString() + " <- " +
               JoinStrings(terms, ", ");
        break;
      }
      case kProps: {
        const auto &p = prop_clauses_[i];
        std::vector<std::string> props;
        for (const auto &prop : p.props) {
          std::string s = prop.term.ToString();
          if (prop.guard) {
            bool simple = prop.guard->kind != Goal::kAnd &&
                          prop.guard->kind != Goal::kOr;
            s += " :- " + (simple ? prop.guard->ToString()
                                  : "(" + prop.guard->ToString() + ")");
          }
          props.push_back(s);
        }
        out += "props(" + p.owner.ToString() + ", [" +
               JoinStrings(props, ", ") + "])";
        break;
      }
      case kAttribute: {
        const auto &a = attr_clauses_[i];
        std::string var = ClassVar(a.owner);
        std::vector<std::string> attrs;
        for (const auto &s : a.attributes) {
          std::string value = "_";
          if (!s.atomic()) {
            std::vector<std::string> cs;
            for (const auto &c : s.classes) cs.push_back(c + "(_)");
            value = JoinStrings(cs, " | ");
          }
          attrs.push_back(s.name + "(" + var + ", " + value + ")");
        }
        out += "attribute(" + a.owner.ToString() + ", [" +
               JoinStrings(attrs, ", ") + "])";
        break;
      }
      case kTemplate: {
        const auto &t = template_clauses_[i];
        out += "template(" + t.attribute + ", " + Quote(t.text);
        if (!t.clauses.empty()) {
          std::vector<std::string> cs;
          for (const auto &c : t.clauses) cs.push_back(Quote(c));
          out += ", [" + JoinStrings(cs, ", ") + "]";
        }
        out += ")";
        break;
      }
      case kDisplay: {
        const auto &d = display_clauses_[i];
        out += "display(" + d.cls + ", [" + JoinStrings(d.attrs, ", ") + "])";
        break;
      }
      case kLexicon: {
        std::vector<std::string> words;
        for (const auto &w : lexicon_clauses_[i]) {
          words.push_back(Term::Atom(w).ToString());
        }
        out += "lexicon([" + JoinStrings(words, ", ") + "])";
        break;
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace nalqa
