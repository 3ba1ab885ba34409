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


#include "nalqa/dep_input.h"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nalqa/error.h"
#include "nalqa/gazetteer.h"
#include "nalqa/ontology.h"

namespace nalqa {

namespace {

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string Lower(std::string s) {
  for (char &c : s) c = std::tolower(static_cast<unsigned char>(c));
  return s;
}

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

[[noreturn]] void Malformed(int line, const std::string &what) {
  throw Error(ErrorKind::kMalformedLine,
              "parse line " + std::to_string(line) + ": " + what);
}

bool ParseInt(const std::string &s, int *out) {
  if (s.empty() || s.size() > 9) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  *out = std::stoi(s);
  return true;
}

struct PendingGraph {
  DepGraph graph;
  std::set<std::string> roots;
  int first_line = 0;
};

void Flush(PendingGraph *p, std::vector<DepGraph> *out) {
  if (p->graph.tokens.empty()) return;
  if (p->roots.size() > 1) {
    std::string markers;
    for (const auto &r : p->roots) markers += " " + r;
    throw Error(ErrorKind::kMultipleRoots,
                "sentence at line " + std::to_string(p->first_line) +
                    " has several root markers:" + markers);
  }
  ValidateDepGraph(p->graph);
  out->push_back(std::move(p->graph));
  *p = PendingGraph();
}

bool IsDocumentMarker(const std::string &line) {
  std::string body = Trim(std::string_view(line).substr(1));
  return body == "document" || body.rfind("document ", 0) == 0 ||
         body.rfind("document\t", 0) == 0;
}

// Parses the file, calling `doc` at every document marker.
template <typename F>
std::vector<DepGraph> ParseLines(std::string_view text, F doc) {
  std::vector<DepGraph> out;
  PendingGraph cur;
  std::string comment;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) {
      Flush(&cur, &out);
      comment.clear();
      if (pos > text.size()) break;
      continue;
    }
    if (line[0] == '#') {
      Flush(&cur, &out);
      if (IsDocumentMarker(line)) {
        doc(&out);
        comment.clear();
        continue;
      }
      std::string body = Trim(std::string_view(line).substr(1));
      size_t tab = body.find('\t');
      if (tab != std::string::npos) body = Trim(body.substr(tab + 1));
      comment = body;
      continue;
    }
    auto f = SplitTabs(line);
    if (f.size() != 5) Malformed(lineno, "expected 5 tab-separated fields");
    DepToken t;
    if (!ParseInt(Trim(f[0]), &t.offset)) Malformed(lineno, "bad offset");
    t.pos = Trim(f[1]);
    t.relation = Trim(f[2]);
    t.word = Trim(f[3]);
    if (t.pos.empty() || t.relation.empty() || t.word.empty()) {
      Malformed(lineno, "empty field");
    }
    std::string head = Trim(f[4]);
    size_t open = head.rfind('(');
    if (open == std::string::npos || head.back() != ')') {
      Malformed(lineno, "head must be word(offset)");
    }
    t.head_word = Trim(head.substr(0, open));
    std::string ref = Trim(head.substr(open + 1, head.size() - open - 2));
    if (!ref.empty() && ref[0] == 'E') {
      int n;
      if (!ParseInt(ref.substr(1), &n)) Malformed(lineno, "bad root marker");
      t.head = 0;
      cur.roots.insert(ref);
    } else if (!ParseInt(ref, &t.head) || t.head == 0) {
      Malformed(lineno, "bad head offset");
    }
    if (t.head == t.offset) Malformed(lineno, "token is its own head");
    if (cur.graph.tokens.empty()) {
      cur.first_line = lineno;
      cur.graph.sentence = comment;
    }
    cur.graph.tokens.push_back(std::move(t));
    if (pos > text.size()) break;
  }
  Flush(&cur, &out);
  return out;
}

}  // namespace

std::vector<const DepToken *> DepGraph::Dependents(int offset) const {
  std::vector<const DepToken *> out;
  for (const auto &t : tokens) {
    if (t.head == offset) out.push_back(&t);
  }
  return out;
}

const DepToken *DepGraph::Root() const {
  for (const auto &t : tokens) {
    if (t.head == 0 && t.pos == "V") return &t;
  }
  for (const auto &t : tokens) {
    if (t.head == 0) return &t;
  }
  return nullptr;
}

std::vector<DepGraph> ParseDepFile(std::string_view text) {
  return ParseLines(text, [](std::vector<DepGraph> *) {});
}

std::vector<std::vector<DepGraph>> ParseDocuments(std::string_view text) {
  std::vector<size_t> cuts = {0};
  auto all = ParseLines(text, [&](std::vector<DepGraph> *sofar) {
    cuts.push_back(sofar->size());
  });
  cuts.push_back(all.size());
  std::vector<std::vector<DepGraph>> docs;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] == cuts[i]) continue;
    docs.emplace_back(std::make_move_iterator(all.begin() + cuts[i]),
                      std::make_move_iterator(all.begin() + cuts[i + 1]));
  }
  return docs;
}

std::string SerializeDepGraphs(const std::vector<DepGraph> &graphs) {
  std::ostringstream out;
  for (size_t i = 0; i < graphs.size(); ++i) {
    if (i > 0) out << "\n";
    const DepGraph &g = graphs[i];
    if (!g.sentence.empty()) out << "# " << g.sentence << "\n";
    for (const auto &t : g.tokens) {
      out << t.offset << '\t' << t.pos << '\t' << t.relation << '\t'
          << t.word << '\t';
      if (t.head == 0) {
        out << "fin(E0)";
      } else {
        out << t.head_word << '(' << t.head << ')';
      }
      out << "\n";
    }
  }
  return out.str();
}

void ValidateDepGraph(const DepGraph &g) {
  const int n = static_cast<int>(g.tokens.size());
  bool root = false;
  for (int i = 0; i < n; ++i) {
    const DepToken &t = g.tokens[i];
    if (t.offset != i + 1) {
      throw Error(ErrorKind::kMalformedLine,
                  "offsets must run 1.." + std::to_string(n) + ", got " +
                      std::to_string(t.offset));
    }
    if (t.head < 0 || t.head > n) {
      throw Error(ErrorKind::kMalformedLine,
                  "head " + std::to_string(t.head) + " of token " +
                      std::to_string(t.offset) + " out of range");
    }
    if (t.head == t.offset) {
      throw Error(ErrorKind::kMalformedLine,
                  "token " + std::to_string(t.offset) + " is its own head");
    }
    if (t.head == 0) root = true;
  }
  if (n > 0 && !root) {
    throw Error(ErrorKind::kMalformedLine, "sentence has no root");
  }
  for (int i = 0; i < n; ++i) {
    int cur = g.tokens[i].head, steps = 0;
    while (cur != 0) {
      if (++steps > n) {
        throw Error(ErrorKind::kMalformedLine,
                    "head cycle through token " + std::to_string(i + 1));
      }
      cur = g.tokens[cur - 1].head;
    }
  }
}

// ---------------------------------------------------------------------------
// MiniParser

namespace {

enum class Form { kBase, kThird, kPast, kIng };

struct VerbInfo {
  std::string lemma;
  Form form;
};

const std::map<std::string, VerbInfo> &VerbTable() {
  static const auto *table = [] {
    auto *t = new std::map<std::string, VerbInfo>;
    auto add = [&](const std::string &lemma, const std::string &third,
                   const std::string &past, const std::string &past_part,
                   const std::string &ing) {
      t->emplace(lemma, VerbInfo{lemma, Form::kBase});
      t->emplace(third, VerbInfo{lemma, Form::kThird});
      t->emplace(past, VerbInfo{lemma, Form::kPast});
      t->emplace(past_part, VerbInfo{lemma, Form::kPast});
      t->emplace(ing, VerbInfo{lemma, Form::kIng});
    };
    auto regular = [&](const std::string &v, bool doubled = false) {
      std::string stem = v;
      std::string third = v + "s";
      char last = v.back();
      if (last == 's' || last == 'x' || v.ends_with("sh") ||
          v.ends_with("ch")) {
        third = v + "es";
      }
      if (doubled) stem += last;
      std::string past, ing;
      if (last == 'e') {
        past = v + "d";
        ing = v.substr(0, v.size() - 1) + "ing";
      } else {
        past = stem + "ed";
        ing = stem + "ing";
      }
      add(v, third, past, past, ing);
    };
    for (const char *v :
         {"sue", "file", "side", "rule", "preside", "accuse", "initiate",
          "involve", "resolve", "close", "conclude", "chair", "engage",
          "settle", "dismiss", "sentence", "name", "list", "violate",
          "appeal", "conceal", "claim", "charge", "award", "order",
          "grant", "deny", "reject", "infringe", "allege"}) {
      regular(v);
    }
    regular("commit", true);
    regular("occur", true);
    t->erase("denys");
    t->erase("denyed");
    add("deny", "denies", "denied", "denied", "denying");
    add("win", "wins", "won", "won", "winning");
    add("lose", "loses", "lost", "lost", "losing");
    add("plead", "pleads", "pleaded", "pled", "pleading");
    add("sleep", "sleeps", "slept", "slept", "sleeping");
    add("throw", "throws", "threw", "thrown", "throwing");
    add("bring", "brings", "brought", "brought", "bringing");
    return t;
  }();
  return *table;
}

const std::map<std::string, std::string> &AuxTable() {
  static const std::map<std::string, std::string> table = {
      {"is", "be"},     {"are", "be"},      {"was", "be"},
      {"were", "be"},   {"be", "be"},       {"been", "be"},
      {"being", "be"},  {"am", "be"},       {"do", "do"},
      {"does", "do"},   {"did", "do"},      {"has", "have"},
      {"have", "have"}, {"had", "have"},    {"will", "will"},
      {"would", "would"}, {"can", "can"},   {"could", "could"},
      {"shall", "shall"}, {"should", "should"}, {"may", "may"},
      {"might", "might"}, {"must", "must"},
  };
  return table;
}

const std::set<std::string> kDeterminers = {
    "a", "an", "the", "any", "some", "this", "these", "those",
    "each", "every", "all", "no", "another"};
const std::set<std::string> kWhPronouns = {"who", "whom", "what", "which"};
const std::set<std::string> kWhAdverbs = {"when", "where", "how", "why"};
const std::set<std::string> kPronouns = {"it", "he", "she", "they", "him",
                                         "them", "we", "i", "you", "us",
                                         "me", "that"};
const std::set<std::string> kGenPronouns = {"its", "his", "her", "their",
                                            "our", "my", "your"};
const std::set<std::string> kPreps = {
    "of",   "in",     "on",      "at",     "by",     "with",   "against",
    "over", "for",    "to",      "from",   "about",  "under",  "between",
    "into", "during", "after",   "before", "through", "without", "among"};
const std::set<std::string> kConjunctions = {"and", "or"};
const std::set<std::string> kAdjectives = {
    "federal", "complex",  "former",  "antitrust", "legal",   "green",
    "colorless", "many",   "much",    "true",      "false",   "new",
    "major",   "recent",   "civil",   "criminal",  "private", "public",
    "supreme", "first",    "second",  "last",      "current", "local",
    "several", "other",    "high",    "big",       "previous"};

enum class Tag { kN, kV, kAux, kPrep, kDet, kA, kAdv, kConj, kC, kPunc };

const char *TagName(Tag t) {
  switch (t) {
    case Tag::kN: return "N";
    case Tag::kV: return "V";
    case Tag::kAux: return "Aux";
    case Tag::kPrep: return "Prep";
    case Tag::kDet: return "Det";
    case Tag::kA: return "A";
    case Tag::kAdv: return "Adv";
    case Tag::kConj: return "Conj";
    case Tag::kC: return "C";
    case Tag::kPunc: return "Punc";
  }
  return "?";
}

struct Tok {
  std::string surface;
  std::string low;
  bool gen = false;     // surface carried "'s"
  bool merged = false;  // multiword gazetteer name
  Tag tag = Tag::kN;
  std::string lemma;
  Form form = Form::kBase;
  bool proper = false;
  bool pronoun = false;     // personal or wh pronoun
  bool wh = false;
  bool gen_pronoun = false;
  std::string rel;
  int head = -2;  // token index, -1 root
};

struct NP {
  std::vector<int> toks;
  int head = -1;
  bool wh = false;
  bool pronoun = false;
};

enum class It { kNP, kVerb, kAux, kPrep, kWhAdv, kAdj, kComp, kConj, kPunc,
                kAdv };

struct Item {
  It kind;
  int tok = -1;  // head token for NPs
  int np = -1;
};

std::string Singular(const std::string &w) {
  if (w.size() > 3 && w.ends_with("ies")) {
    return w.substr(0, w.size() - 3) + "y";
  }
  if (w.size() > 2 && w.back() == 's' && !w.ends_with("ss") &&
      !w.ends_with("us") && !w.ends_with("is")) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

bool Capitalized(const std::string &s) {
  return !s.empty() && (std::isupper(static_cast<unsigned char>(s[0])) ||
                        std::isdigit(static_cast<unsigned char>(s[0])));
}

[[noreturn]] void OutOfSubset(const std::string &why,
                              const std::string &token) {
  throw Error(ErrorKind::kOutOfSubset,
              "outside the parser subset (" + why + "): " + token);
}

class SentenceParser {
 public:
  SentenceParser(std::vector<Tok> toks, const std::vector<std::string> &titles)
      : t_(std::move(toks)), titles_(titles) {}

  void Run() {
    Tag();
    Chunk();
    Coordinate();
    Clause();
    for (const auto &tok : t_) {
      if (tok.head == -2) OutOfSubset("unattached token", tok.surface);
    }
  }

  std::vector<Tok> &tokens() { return t_; }

 private:
  void Attach(int dep, const std::string &rel, int head) {
    t_[dep].rel = rel;
    t_[dep].head = head;
  }

  bool IsTitle(const Tok &t) const {
    return std::find(titles_.begin(), titles_.end(), t.surface) !=
           titles_.end();
  }

  // Part-of-speech tags from closed word lists, the verb table and the
  // immediate left context.
  void Tag() {
    const auto &verbs = VerbTable();
    const auto &aux = AuxTable();
    const int n = static_cast<int>(t_.size());
    for (int i = 0; i < n; ++i) {
      Tok &t = t_[i];
      const std::string &low = t.low;
      const bool content_ok = i == 0 || !Capitalized(t.surface);
      const Tok *prev = i > 0 ? &t_[i - 1] : nullptr;
      t.lemma = low;
      if (t.merged) {
        t.tag = Tag::kN;
        t.proper = true;
        t.lemma = t.surface;
      } else if (t.surface == ",") {
        t.tag = Tag::kPunc;
      } else if (i == 0 && (low == "list" || low == "name") && n > 1) {
        t.tag = Tag::kV;
        t.form = Form::kBase;
      } else if (low == "that" && prev && prev->tag == Tag::kA &&
                 prev->low == "true") {
        t.tag = Tag::kC;
      } else if (kDeterminers.count(low)) {
        t.tag = Tag::kDet;
      } else if (low == "which" || low == "what") {
        t.wh = true;
        if (i + 1 < n && NounLike(i + 1)) {
          t.tag = Tag::kDet;
        } else {
          t.tag = Tag::kN;
          t.pronoun = true;
        }
      } else if (low == "who" || low == "whom") {
        t.tag = Tag::kN;
        t.pronoun = t.wh = true;
      } else if (kWhAdverbs.count(low)) {
        t.tag = Tag::kA;
        t.wh = true;
      } else if (kPronouns.count(low)) {
        t.tag = Tag::kN;
        t.pronoun = true;
      } else if (kGenPronouns.count(low)) {
        t.tag = Tag::kN;
        t.gen_pronoun = true;
      } else if (aux.count(low)) {
        t.tag = Tag::kAux;
        t.lemma = aux.at(low);
      } else if (kPreps.count(low)) {
        t.tag = Tag::kPrep;
      } else if (kConjunctions.count(low)) {
        t.tag = Tag::kConj;
      } else if (content_ok && kAdjectives.count(low)) {
        t.tag = Tag::kA;
      } else if (content_ok && verbs.count(low)) {
        const VerbInfo &v = verbs.at(low);
        bool nominal = prev && (prev->tag == Tag::kDet ||
                                prev->tag == Tag::kA || prev->gen_pronoun ||
                                (prev->tag == Tag::kPrep &&
                                 v.form != Form::kIng));
        if (prev && prev->tag == Tag::kA && prev->wh) nominal = false;
        if (nominal) {
          t.tag = Tag::kN;
        } else {
          t.tag = Tag::kV;
          t.lemma = v.lemma;
          t.form = v.form;
        }
      } else if (content_ok && low.size() > 3 && low.ends_with("ly")) {
        t.tag = Tag::kAdv;
      } else {
        t.tag = Tag::kN;
        t.proper = Capitalized(t.surface) ||
                   t.surface.find('&') != std::string::npos;
        if (t.proper) t.lemma = t.surface;
      }
    }
  }

  // Whether token i would start or continue a noun phrase.
  bool NounLike(int i) const {
    const Tok &t = t_[i];
    if (t.surface == ",") return false;
    const std::string &low = t.low;
    if (kPreps.count(low) || AuxTable().count(low) ||
        kConjunctions.count(low) || kDeterminers.count(low) ||
        kWhPronouns.count(low) || kWhAdverbs.count(low) ||
        kPronouns.count(low)) {
      return false;
    }
    if (VerbTable().count(low) && !Capitalized(t.surface)) {
      return VerbTable().at(low).form == Form::kIng;
    }
    return true;
  }

  void Chunk() {
    const int n = static_cast<int>(t_.size());
    int i = 0;
    while (i < n) {
      Tok &t = t_[i];
      bool np_start =
          t.tag == Tag::kDet || t.tag == Tag::kN ||
          (t.tag == Tag::kA && !t.wh && i + 1 < n &&
           (t_[i + 1].tag == Tag::kA || t_[i + 1].tag == Tag::kN)) ||
          (t.tag == Tag::kA && t.low == "how" && i + 1 < n &&
           (t_[i + 1].low == "many" || t_[i + 1].low == "much"));
      if (np_start) {
        i = ChunkNP(i);
        continue;
      }
      Item it{It::kPunc, i, -1};
      switch (t.tag) {
        case Tag::kV: it.kind = It::kVerb; break;
        case Tag::kAux: it.kind = It::kAux; break;
        case Tag::kPrep: it.kind = It::kPrep; break;
        case Tag::kA: it.kind = t.wh ? It::kWhAdv : It::kAdj; break;
        case Tag::kC: it.kind = It::kComp; break;
        case Tag::kConj: it.kind = It::kConj; break;
        case Tag::kAdv: it.kind = It::kAdv; break;
        default: it.kind = It::kPunc; break;
      }
      items_.push_back(it);
      ++i;
    }
  }

  int ChunkNP(int i) {
    const int n = static_cast<int>(t_.size());
    NP np;
    std::vector<int> prefix;
    int j = i;
    if (t_[j].tag == Tag::kN && (t_[j].pronoun)) {
      np.toks = {j};
      np.head = j;
      np.pronoun = true;
      np.wh = t_[j].wh;
      return PushNP(std::move(np), j + 1);
    }
    while (j < n) {
      const Tok &t = t_[j];
      if (t.tag == Tag::kDet || t.gen_pronoun) {
        prefix.push_back(j++);
      } else if (t.tag == Tag::kA && t.low == "how") {
        prefix.push_back(j++);
      } else if (t.tag == Tag::kA && !t.wh && j + 1 < n &&
                 (t_[j + 1].tag == Tag::kA || t_[j + 1].tag == Tag::kN)) {
        prefix.push_back(j++);
      } else {
        break;
      }
    }
    std::vector<int> run;
    while (j < n && t_[j].tag == Tag::kN && !t_[j].pronoun &&
           !t_[j].gen_pronoun) {
      run.push_back(j++);
      if (t_[run.back()].gen) break;
    }
    if (run.empty()) {
      OutOfSubset("determiner or adjective without a noun",
                  t_[prefix.back()].surface);
    }
    // Head: last noun, unless a title is followed only by names.
    int head = run.back();
    for (size_t k = 0; k + 1 < run.size(); ++k) {
      if (!IsTitle(t_[run[k]])) continue;
      bool names = true;
      for (size_t m = k + 1; m < run.size(); ++m) {
        names = names && Capitalized(t_[run[m]].surface);
      }
      if (names) {
        head = run[k];
        break;
      }
    }
    for (int p : prefix) {
      Tok &t = t_[p];
      if (t.tag == Tag::kDet) {
        Attach(p, "det", head);
        if (t.wh) np.wh = true;
      } else if (t.gen_pronoun) {
        Attach(p, "gen", head);
      } else if (t.low == "how") {
        np.wh = true;
        if (p + 1 >= n || t_[p + 1].tag != Tag::kA) {
          OutOfSubset("how without many", t.surface);
        }
        Attach(p, "wh", p + 1);
      } else {
        Attach(p, "mod", head);
      }
    }
    for (int r : run) {
      Tok &t = t_[r];
      if (r != head) {
        Attach(r, "nn", head);
        if (!t.proper) t.lemma = t.low;
      } else if (!t.proper) {
        t.lemma = Singular(t.low);
      }
    }
    np.toks = prefix;
    np.toks.insert(np.toks.end(), run.begin(), run.end());
    np.head = head;
    return PushNP(std::move(np), j);
  }

  int PushNP(NP np, int next) {
    // "X's Y": the possessor NP modifies the following one.
    if (!items_.empty() && items_.back().kind == It::kNP) {
      const NP &prev = nps_[items_.back().np];
      if (t_[prev.head].gen) {
        Attach(prev.head, "gen", np.head);
        items_.pop_back();
      }
    }
    nps_.push_back(std::move(np));
    items_.push_back({It::kNP, nps_.back().head,
                      static_cast<int>(nps_.size()) - 1});
    return next;
  }

  // Coordination and apposition between adjacent noun phrases.
  void Coordinate() {
    std::vector<Item> out;
    for (size_t i = 0; i < items_.size(); ++i) {
      const Item &it = items_[i];
      if (!out.empty() && out.back().kind == It::kNP &&
          (it.kind == It::kConj || it.kind == It::kPunc) &&
          i + 1 < items_.size() && items_[i + 1].kind == It::kNP &&
          !nps_[items_[i + 1].np].pronoun && !nps_[out.back().np].pronoun) {
        int first = out.back().tok;
        int second = items_[i + 1].tok;
        Attach(it.tok, "punc", first);
        if (it.kind == It::kConj) {
          Attach(second, "conj", first);
        } else {
          Attach(second, "appo", first);
          if (i + 2 < items_.size() && items_[i + 2].kind == It::kPunc) {
            Attach(items_[i + 2].tok, "punc", first);
            ++i;
          }
        }
        ++i;
        continue;
      }
      out.push_back(it);
    }
    items_ = std::move(out);
  }

  const Item *At(size_t p) const {
    return p < items_.size() ? &items_[p] : nullptr;
  }
  bool Is(size_t p, It kind) const {
    return p < items_.size() && items_[p].kind == kind;
  }
  std::string Surface(size_t p) const {
    return p < items_.size() ? t_[items_[p].tok].surface : "<end>";
  }

  void MakeMainVerb(int tok, const std::string &rel, int head) {
    t_[tok].tag = Tag::kV;
    Attach(tok, rel, head);
  }

  // PPs between a subject and its verb attach to the nearest noun phrase.
  size_t PreVerbPPs(size_t p, int *last_np) {
    while (Is(p, It::kPrep) && Is(p + 1, It::kNP)) {
      Attach(items_[p].tok, "mod", *last_np);
      Attach(items_[p + 1].tok, "pcomp-n", items_[p].tok);
      *last_np = items_[p + 1].tok;
      p += 2;
    }
    return p;
  }

  void Clause() {
    if (items_.empty()) OutOfSubset("empty sentence", "");
    size_t p = 0;
    // "Is it true that S"
    if (Is(0, It::kAux) && t_[items_[0].tok].lemma == "be" && Is(1, It::kNP) &&
        t_[items_[1].tok].low == "it" && Is(2, It::kAdj) && Is(3, It::kComp)) {
      int be = items_[0].tok;
      MakeMainVerb(be, "i", -1);
      Attach(items_[1].tok, "expl", be);
      Attach(items_[2].tok, "pred", be);
      Attach(items_[3].tok, "comp", be);
      p = Declarative(4, "fc", items_[3].tok);
    } else if (Is(0, It::kWhAdv)) {
      p = WhAdverbQuestion();
    } else if (Is(0, It::kAux)) {
      p = AuxQuestion();
    } else if (Is(0, It::kVerb)) {
      int v = items_[0].tok;
      Attach(v, "i", -1);
      p = Tail(1, v, false, -1);
    } else if (Is(0, It::kNP)) {
      p = Declarative(0, "i", -1);
    } else {
      OutOfSubset("unexpected sentence start", Surface(0));
    }
    if (p < items_.size()) OutOfSubset("unexpected token", Surface(p));
  }

  // NP [Aux...] V ..., NP Aux NP V ... (fronted wh), wh-NP be NP ...
  size_t Declarative(size_t p, const std::string &rel, int head) {
    if (!Is(p, It::kNP)) OutOfSubset("expected a noun phrase", Surface(p));
    const NP &np0 = nps_[items_[p].np];
    int n0 = items_[p].tok;
    ++p;
    if (Is(p, It::kVerb)) {
      int v = items_[p].tok;
      Attach(n0, "s", v);
      Attach(v, rel, head);
      return Tail(p + 1, v, false, -1);
    }
    std::vector<int> auxes;
    while (Is(p, It::kAux)) auxes.push_back(items_[p++].tok);
    if (auxes.empty()) OutOfSubset("expected a verb", Surface(p));
    bool be = false;
    for (int a : auxes) be = be || t_[a].lemma == "be";
    if (Is(p, It::kVerb)) {
      int v = items_[p].tok;
      bool passive = be && t_[v].form == Form::kPast;
      for (int a : auxes) Attach(a, "aux", v);
      Attach(n0, passive ? "obj" : "s", v);
      Attach(v, rel, head);
      return Tail(p + 1, v, passive, -1, passive);
    }
    if (!Is(p, It::kNP)) OutOfSubset("expected a verb", Surface(p));
    int n1 = items_[p].tok;
    if (np0.wh && be && auxes.size() == 1) {
      int cop = auxes[0];
      MakeMainVerb(cop, rel, head);
      Attach(n0, "s", cop);
      Attach(n1, "pred", cop);
      return Tail(p + 1, cop, true, n1, false, /*after_np=*/true);
    }
    // Fronted non-subject: Aux NP V.
    int last_np = n1;
    p = PreVerbPPs(p + 1, &last_np);
    if (!Is(p, It::kVerb)) OutOfSubset("expected a verb", Surface(p));
    int v = items_[p].tok;
    bool passive = be && t_[v].form == Form::kPast;
    for (int a : auxes) Attach(a, "aux", v);
    Attach(n1, passive ? "obj" : "s", v);
    Attach(v, rel, head);
    fronted_ = n0;
    size_t end = Tail(p + 1, v, passive, -1, passive);
    if (fronted_ >= 0) {
      if (has_obj_.count(v)) OutOfSubset("no role for fronted phrase",
                                         t_[n0].surface);
      Attach(n0, "obj", v);
      fronted_ = -1;
    }
    return end;
  }

  // When/where Aux NP [PP...] [V] ...
  size_t WhAdverbQuestion() {
    int w = items_[0].tok;
    if (!Is(1, It::kAux) || !Is(2, It::kNP)) {
      OutOfSubset("expected auxiliary and subject", Surface(1));
    }
    int aux = items_[1].tok;
    int subj = items_[2].tok;
    int last_np = subj;
    size_t p = PreVerbPPs(3, &last_np);
    bool be = t_[aux].lemma == "be";
    if (Is(p, It::kVerb)) {
      int v = items_[p].tok;
      bool final_verb = p + 1 == items_.size();
      if (!be || final_verb) {
        bool passive = be && t_[v].form == Form::kPast;
        Attach(aux, "aux", v);
        Attach(subj, passive ? "obj" : "s", v);
        Attach(v, "i", -1);
        Attach(w, "wh", v);
        return Tail(p + 1, v, passive, -1, passive);
      }
      // Copula with a reduced relative: "was the closing of X filed by Y".
      MakeMainVerb(aux, "i", -1);
      Attach(subj, "s", aux);
      Attach(w, "wh", aux);
      Attach(v, "vrel", last_np);
      return Tail(p + 1, v, false, -1, true);
    }
    if (!be) OutOfSubset("expected a verb", Surface(p));
    MakeMainVerb(aux, "i", -1);
    Attach(subj, "s", aux);
    Attach(w, "wh", aux);
    return p;
  }

  // Aux NP [PP...] V ... or Aux NP (copula).
  size_t AuxQuestion() {
    int aux = items_[0].tok;
    if (!Is(1, It::kNP)) OutOfSubset("expected a subject", Surface(1));
    int subj = items_[1].tok;
    int last_np = subj;
    size_t p = PreVerbPPs(2, &last_np);
    bool be = t_[aux].lemma == "be";
    if (Is(p, It::kVerb)) {
      int v = items_[p].tok;
      bool passive = be && t_[v].form == Form::kPast;
      Attach(aux, "aux", v);
      Attach(subj, passive ? "obj" : "s", v);
      Attach(v, "i", -1);
      return Tail(p + 1, v, passive, -1, passive);
    }
    if (!be) OutOfSubset("expected a verb", Surface(p));
    MakeMainVerb(aux, "i", -1);
    Attach(subj, "s", aux);
    if (Is(p, It::kNP)) {
      Attach(items_[p].tok, "pred", aux);
      return Tail(p + 1, aux, true, items_[p].tok, false, true);
    }
    return p;
  }

  // Objects, prepositional phrases and relative clauses after a verb.
  // `by_agent` marks verbs whose immediately following "by" is the agent.
  size_t Tail(size_t p, int verb, bool has_obj, int last_np,
              bool by_agent = false, bool after_np = false) {
    enum Prev { kVerbJust, kNoun, kStranded, kOther };
    Prev prev = after_np ? kNoun : kVerbJust;
    int cur = verb;
    if (has_obj) has_obj_.insert(cur);
    std::set<int> agentive;
    if (by_agent) agentive.insert(cur);
    while (p < items_.size()) {
      const Item &it = items_[p];
      switch (it.kind) {
        case It::kNP: {
          const NP &np = nps_[it.np];
          if (prev == kVerbJust && !has_obj_.count(cur)) {
            Attach(it.tok, "obj", cur);
            has_obj_.insert(cur);
            last_np = it.tok;
            prev = kNoun;
            ++p;
          } else if (prev == kNoun && np.pronoun && Is(p + 1, It::kVerb)) {
            int v = items_[p + 1].tok;
            Attach(it.tok, "s", v);
            Attach(v, "rel", last_np);
            cur = v;
            last_np = -1;
            prev = kVerbJust;
            p += 2;
          } else {
            OutOfSubset("unattached noun phrase", t_[it.tok].surface);
          }
          break;
        }
        case It::kVerb: {
          if (prev != kNoun || last_np < 0) {
            OutOfSubset("unexpected verb", t_[it.tok].surface);
          }
          Attach(it.tok, "vrel", last_np);
          cur = it.tok;
          agentive.insert(cur);
          last_np = -1;
          prev = kVerbJust;
          ++p;
          break;
        }
        case It::kPrep: {
          int prep = it.tok;
          int gov;
          if (prev == kVerbJust || prev == kStranded || last_np < 0 ||
              t_[last_np].pronoun) {
            gov = cur;
          } else {
            gov = last_np;
          }
          bool agent = prev == kVerbJust && agentive.count(cur) &&
                       t_[prep].low == "by";
          Attach(prep, agent ? "by-subj" : "mod", gov);
          if (Is(p + 1, It::kNP)) {
            Attach(items_[p + 1].tok, "pcomp-n", prep);
            last_np = items_[p + 1].tok;
            prev = kNoun;
            p += 2;
          } else if (Is(p + 1, It::kVerb) &&
                     t_[items_[p + 1].tok].form == Form::kIng) {
            int v = items_[p + 1].tok;
            Attach(v, "pcomp-c", prep);
            cur = v;
            last_np = -1;
            prev = kVerbJust;
            p += 2;
          } else if (fronted_ >= 0) {
            Attach(fronted_, "pcomp-n", prep);
            fronted_ = -1;
            prev = kStranded;
            ++p;
          } else {
            OutOfSubset("preposition without object", t_[prep].surface);
          }
          break;
        }
        case It::kAdv:
          Attach(it.tok, "mod", cur);
          ++p;
          break;
        default:
          return p;
      }
    }
    return p;
  }

  std::vector<Tok> t_;
  const std::vector<std::string> &titles_;
  std::vector<NP> nps_;
  std::vector<Item> items_;
  std::set<int> has_obj_;
  int fronted_ = -1;
};

}  // namespace

MiniParser::MiniParser(const Gazetteer &gaz, const Ontology &onto) {
  std::set<std::string> multi, titles;
  for (const auto &e : gaz.entries()) {
    if (e.is_relation()) continue;
    for (const std::string *name : {&e.name, &e.alias}) {
      if (name->find(' ') != std::string::npos) multi.insert(*name);
    }
    if (e.kind == EntryKind::kSpecific && onto.HasClass(e.category) &&
        onto.HasClass("person") && onto.SubclassOf(e.category, "person")) {
      titles.insert(e.name);
      if (!e.alias.empty()) titles.insert(e.alias);
    }
  }
  multiwords_.assign(multi.begin(), multi.end());
  std::stable_sort(multiwords_.begin(), multiwords_.end(),
                   [](const std::string &a, const std::string &b) {
                     return std::count(a.begin(), a.end(), ' ') >
                            std::count(b.begin(), b.end(), ' ');
                   });
  titles_.assign(titles.begin(), titles.end());

  auto add_words = [&](const std::string &text, char sep) {
    std::string word;
    for (char c : text + sep) {
      if (c == sep || c == ' ') {
        if (!word.empty()) known_.insert(Lower(word));
        word.clear();
      } else {
        word += c;
      }
    }
  };
  for (const auto &e : gaz.entries()) {
    add_words(e.name, ' ');
    add_words(e.alias, ' ');
  }
  for (const auto &c : onto.classes()) add_words(c, '_');
  for (const auto &w : onto.lexicon()) known_.insert(Lower(w));
}

std::vector<std::string> MiniParser::UnknownWords(
    const std::string &sentence) const {
  std::vector<std::string> unknown;
  std::istringstream in(sentence);
  std::string w;
  bool first = true;
  while (in >> w) {
    while (!w.empty() && std::ispunct(static_cast<unsigned char>(w.back())) &&
           w.back() != '.' && w.back() != '&') {
      w.pop_back();
    }
    while (!w.empty() && (w.back() == '?' || w.back() == '!')) w.pop_back();
    while (!w.empty() && (w.front() == '"' || w.front() == '\'')) {
      w.erase(w.begin());
    }
    if (w.size() > 2 && w.ends_with("'s")) w.resize(w.size() - 2);
    bool initial = first;
    first = false;
    if (w.empty()) continue;
    std::string low = Lower(w);
    if (low.back() == '.' && !known_.count(low)) low.pop_back();
    if (low.empty() || std::isdigit(static_cast<unsigned char>(low[0]))) {
      continue;
    }
    if (!initial && Capitalized(w)) continue;
    if (known_.count(low) || known_.count(Singular(low)) ||
        VerbTable().count(low) || AuxTable().count(low) ||
        kDeterminers.count(low) || kWhPronouns.count(low) ||
        kWhAdverbs.count(low) || kPronouns.count(low) ||
        kGenPronouns.count(low) || kPreps.count(low) ||
        kConjunctions.count(low) || kAdjectives.count(low)) {
      continue;
    }
    unknown.push_back(w);
  }
  return unknown;
}

DepGraph MiniParser::Parse(const std::string &sentence) const {
  std::string text = Trim(sentence);
  while (!text.empty() && (text.back() == '?' || text.back() == '.' ||
                           text.back() == '!')) {
    text.pop_back();
  }
  std::vector<Tok> pieces;
  std::istringstream in(text);
  std::string w;
  while (in >> w) {
    while (!w.empty() && (w.front() == '"' || w.front() == '\'')) {
      w.erase(w.begin());
    }
    bool comma = false;
    if (!w.empty() && w.back() == ',') {
      comma = true;
      w.pop_back();
    }
    while (!w.empty() && w.back() == '"') w.pop_back();
    if (!w.empty()) {
      Tok t;
      if (w.size() > 2 && w.ends_with("'s")) {
        t.gen = true;
        w.resize(w.size() - 2);
      }
      t.surface = w;
      pieces.push_back(std::move(t));
    }
    if (comma) {
      Tok c;
      c.surface = ",";
      pieces.push_back(std::move(c));
    }
  }
  if (pieces.empty()) OutOfSubset("empty sentence", "");

  // Gazetteer names spanning several words become one token.
  std::vector<Tok> toks;
  for (size_t i = 0; i < pieces.size();) {
    bool done = false;
    for (const auto &m : multiwords_) {
      std::string joined;
      size_t j = i;
      for (; j < pieces.size() && joined.size() < m.size(); ++j) {
        if (!joined.empty()) joined += ' ';
        joined += pieces[j].surface;
        if (pieces[j].gen && joined.size() < m.size()) break;
      }
      if (joined == m && j - i > 1) {
        Tok t = pieces[j - 1];
        t.surface = m;
        t.merged = true;
        toks.push_back(std::move(t));
        i = j;
        done = true;
        break;
      }
    }
    if (!done) toks.push_back(pieces[i++]);
  }
  for (auto &t : toks) t.low = Lower(t.surface);

  SentenceParser sp(std::move(toks), titles_);
  sp.Run();
  DepGraph g;
  g.sentence = Trim(sentence);
  const auto &out = sp.tokens();
  for (size_t i = 0; i < out.size(); ++i) {
    const Tok &t = out[i];
    DepToken d;
    d.offset = static_cast<int>(i) + 1;
    d.pos = TagName(t.tag);
    d.relation = t.rel;
    d.word = t.tag == Tag::kPunc ? t.surface : t.lemma;
    if (t.head == -1) {
      d.head = 0;
      d.head_word = "fin";
    } else {
      d.head = t.head + 1;
      d.head_word = out[t.head].lemma;
      if (out[t.head].tag == Tag::kPunc) d.head_word = out[t.head].surface;
    }
    g.tokens.push_back(std::move(d));
  }
  ValidateDepGraph(g);
  return g;
}

}  // namespace nalqa
