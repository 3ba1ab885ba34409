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


#include "nalqa/gazetteer.h"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>

#include "nalqa/error.h"
#include "nalqa/ontology.h"

namespace nalqa {

namespace {

const char kToken[] = "{TOKEN}";
const char kNoPattern[] = "no pattern";

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::optional<EntryKind> ParseKind(const std::string &text) {
  std::string t = Lower(Trim(text));
  if (t == "specific") return EntryKind::kSpecific;
  if (t == "generic") return EntryKind::kGeneric;
  if (t == "relation-noun" || t == "relation->noun") {
    return EntryKind::kRelationNoun;
  }
  if (t == "relation-verb" || t == "relation->verb") {
    return EntryKind::kRelationVerb;
  }
  if (t == "relation-prep" || t == "relation->prep") {
    return EntryKind::kRelationPrep;
  }
  return std::nullopt;
}

Slot ParseSlotBody(const std::string &body) {
  Slot slot;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty()) slot.names.push_back(Lower(cur));
    cur.clear();
  };
  for (size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '&' && i + 1 < body.size() && body[i + 1] == '&') {
      slot.conjoined = true;
      flush();
      ++i;
    } else if (c == '|' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return slot;
}

size_t CountOccurrences(const std::string &s, const std::string &needle) {
  size_t n = 0;
  for (size_t p = s.find(needle); p != std::string::npos;
       p = s.find(needle, p + needle.size())) {
    ++n;
  }
  return n;
}

std::string Instantiate(const std::string &pattern, const std::string &token) {
  std::string out = pattern;
  size_t p = out.find(kToken);
  if (p != std::string::npos) {
    out.replace(p, sizeof(kToken) - 1, EscapeRegex(token));
  }
  return out;
}

std::string JoinComma(const std::vector<std::string> &items) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ',';
    out += items[i];
  }
  return out;
}

}  // namespace

const char *EntryKindName(EntryKind kind) {
  switch (kind) {
    case EntryKind::kSpecific:
      return "specific";
    case EntryKind::kGeneric:
      return "generic";
    case EntryKind::kRelationNoun:
      return "relation-noun";
    case EntryKind::kRelationVerb:
      return "relation-verb";
    case EntryKind::kRelationPrep:
      return "relation-prep";
  }
  return "";
}

const std::string *NamedEntity::Find(const std::string &attr) const {
  for (const auto &[name, value] : attributes) {
    if (name == attr) return &value;
  }
  return nullptr;
}

std::string EscapeRegex(std::string_view text) {
  static const std::string kMeta = "\\^$.|?*+()[]{}";
  std::string out;
  for (char c : text) {
    if (kMeta.find(c) != std::string::npos) out += '\\';
    out += c;
  }
  return out;
}

int ValidatePattern(const std::string &pattern) {
  auto fail = [&pattern](const std::string &why) {
    throw Error(ErrorKind::kParse,
                "pattern '" + pattern + "': " + why);
  };
  auto check_escape = [&fail](char c) {
    if (std::string("sSwWdD").find(c) != std::string::npos) return;
    if (std::isalnum(static_cast<unsigned char>(c))) {
      fail(std::string("unsupported escape \\") + c);
    }
  };
  int groups = 0;
  int depth = 0;
  bool atom = false;       // a quantifier may follow
  bool quantified = false;  // a lazy '?' may follow
  for (size_t i = 0; i < pattern.size(); ++i) {
    char c = pattern[i];
    switch (c) {
      case '\\':
        if (i + 1 >= pattern.size()) fail("trailing backslash");
        check_escape(pattern[++i]);
        atom = true;
        quantified = false;
        break;
      case '[': {
        size_t j = i + 1;
        if (j < pattern.size() && pattern[j] == '^') ++j;
        size_t first = j;
        for (; j < pattern.size() && (pattern[j] != ']' || j == first); ++j) {
          if (pattern[j] == '\\') {
            if (j + 1 >= pattern.size()) fail("trailing backslash");
            check_escape(pattern[++j]);
          }
        }
        if (j >= pattern.size()) fail("unterminated character class");
        i = j;
        atom = true;
        quantified = false;
        break;
      }
      case '(':
        if (i + 1 < pattern.size() && pattern[i + 1] == '?') {
          fail("group modifiers are not supported");
        }
        ++groups;
        ++depth;
        atom = false;
        quantified = false;
        break;
      case ')':
        if (--depth < 0) fail("unbalanced ')'");
        atom = true;
        quantified = false;
        break;
      case '{':
        if (pattern.compare(i, sizeof(kToken) - 1, kToken) != 0) {
          fail("counted repetition is not supported");
        }
        i += sizeof(kToken) - 2;
        atom = true;
        quantified = false;
        break;
      case '}':
      case '^':
      case '$':
        fail(std::string("unsupported operator ") + c);
        break;
      case '?':
        if (quantified) {
          quantified = false;
          atom = false;
          break;
        }
        [[fallthrough]];
      case '*':
      case '+':
        if (!atom) fail(std::string("dangling quantifier ") + c);
        atom = false;
        quantified = true;
        break;
      case '|':
        atom = false;
        quantified = false;
        break;
      default:
        atom = true;
        quantified = false;
    }
  }
  if (depth != 0) fail("unbalanced '('");
  return groups;
}

std::pair<Slot, Slot> ParseSlots(const std::string &text) {
  std::string t = Trim(text);
  if (t.empty()) return {};
  const std::string kRel = "<RELATION>";
  size_t mid = t.find(kRel);
  if (mid == std::string::npos) {
    throw Error(ErrorKind::kParse, "missing <RELATION> in '" + text + "'");
  }
  auto side = [&text](std::string part) {
    part = Trim(part);
    if (part.empty()) return Slot{};
    if (part.front() != '{') {
      throw Error(ErrorKind::kParse, "malformed slot in '" + text + "'");
    }
    // Tolerate a missing closing brace.
    size_t close = part.find('}');
    std::string body = part.substr(1, close == std::string::npos
                                          ? std::string::npos
                                          : close - 1);
    return ParseSlotBody(body);
  };
  return {side(t.substr(0, mid)), side(t.substr(mid + kRel.size()))};
}

std::vector<std::string> RolesFor(const Slot &classes, const Slot &roles,
                                  size_t class_index) {
  if (roles.empty()) return {};
  if (roles.conjoined) return roles.names;
  if (roles.names.size() == classes.names.size()) {
    return {roles.names[class_index]};
  }
  return {roles.names[0]};
}

Gazetteer Gazetteer::Load(std::string_view tsv) {
  Gazetteer gaz;
  std::istringstream in{std::string(tsv)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    std::vector<std::string> f = SplitTabs(line);
    if (f[0] == "g_name") continue;
    auto fail = [line_no](const std::string &why) {
      throw Error(ErrorKind::kParse,
                  "gazetteer line " + std::to_string(line_no) + ": " + why);
    };
    if (f.size() < 4 || f.size() > 7) fail("expected 4 to 7 columns");
    f.resize(7);
    GazetteerEntry e;
    e.name = f[0];
    e.category = Trim(f[1]);
    e.pattern = f[2] == kNoPattern ? "" : f[2];
    auto kind = ParseKind(f[3]);
    if (!kind) fail("unknown entry type '" + f[3] + "'");
    e.kind = *kind;
    e.alias = f[4];
    e.map = f[5] == "no map" ? "" : f[5];
    if (!Trim(f[6]).empty()) {
      std::string cur;
      for (char c : f[6] + ",") {
        if (c == ',') {
          e.group_map.push_back(Trim(cur));
          cur.clear();
        } else {
          cur += c;
        }
      }
    }
    if (e.name.empty() || e.category.empty()) fail("empty name or category");
    try {
      if (e.is_relation()) {
        if (e.has_pattern()) {
          std::tie(e.left_classes, e.right_classes) = ParseSlots(e.pattern);
        }
        std::tie(e.left_roles, e.right_roles) = ParseSlots(e.map);
      } else if (e.has_pattern()) {
        if (CountOccurrences(e.pattern, kToken) != 1) {
          fail("pattern must contain {TOKEN} exactly once");
        }
        int groups = ValidatePattern(e.pattern);
        if (static_cast<int>(e.group_map.size()) > groups) {
          fail("group map names more groups than the pattern has");
        }
      }
    } catch (const Error &err) {
      if (err.kind() != ErrorKind::kParse) throw;
      std::string msg = err.what();
      if (msg.rfind("gazetteer line", 0) == 0) throw;
      fail(msg);
    }
    if (e.left_roles.conjoined || e.right_roles.conjoined) {
      gaz.warnings_.push_back("gazetteer line " + std::to_string(line_no) +
                              ": '&&' map fills every listed role");
    }
    gaz.entries_.push_back(std::move(e));
  }
  gaz.Index();
  return gaz;
}

Gazetteer Gazetteer::FromEntries(std::vector<GazetteerEntry> entries) {
  Gazetteer gaz;
  gaz.entries_ = std::move(entries);
  for (auto &e : gaz.entries_) {
    if (e.is_relation()) {
      if (e.has_pattern()) {
        std::tie(e.left_classes, e.right_classes) = ParseSlots(e.pattern);
      }
      std::tie(e.left_roles, e.right_roles) = ParseSlots(e.map);
    } else if (e.has_pattern()) {
      ValidatePattern(e.pattern);
    }
  }
  gaz.Index();
  return gaz;
}

void Gazetteer::Index() {
  names_.clear();
  relations_.clear();
  for (size_t i = 0; i < entries_.size(); ++i) {
    const auto &e = entries_[i];
    if (e.is_relation()) {
      relations_.emplace(e.name, i);
    } else {
      names_.emplace(e.name, i);
      if (!e.alias.empty() && e.alias != e.name) names_.emplace(e.alias, i);
    }
  }
}

std::string Gazetteer::Serialize() const {
  std::string out =
      "g_name\tg_category\tg_pattern\tg_type\tg_alias\tg_map\tg_group_map\n";
  for (const auto &e : entries_) {
    out += e.name + "\t" + e.category + "\t" +
           (e.has_pattern() ? e.pattern : kNoPattern) + "\t" +
           EntryKindName(e.kind) + "\t" + e.alias + "\t" + e.map + "\t" +
           JoinComma(e.group_map) + "\n";
  }
  return out;
}

void Gazetteer::Validate(const Ontology &onto) const {
  for (const auto &e : entries_) {
    std::string where = "gazetteer entry '" + e.name + "': ";
    if (!onto.HasClass(e.category)) {
      throw Error(ErrorKind::kUnknownClass,
                  where + "unknown category " + e.category);
    }
    bool event = onto.IsEventClass(e.category);
    if (e.is_relation() != event) {
      throw Error(ErrorKind::kSchema,
                  where + "category " + e.category +
                      (event ? " is an event class" : " is not an event class"));
    }
    if (!e.is_relation()) {
      for (const auto &attr : e.group_map) {
        if (attr.empty()) continue;
        auto schema = onto.FindAttribute(e.category, attr);
        if (!schema || !schema->atomic()) {
          throw Error(ErrorKind::kSchema, where + "attribute " + attr +
                                              " is not in the schema of " +
                                              e.category);
        }
      }
      continue;
    }
    for (const Slot *s : {&e.left_classes, &e.right_classes}) {
      for (const auto &c : s->names) {
        if (!onto.HasClass(c)) {
          throw Error(ErrorKind::kUnknownClass,
                      where + "pattern names unknown class " + c);
        }
      }
    }
    for (const Slot *s : {&e.left_roles, &e.right_roles}) {
      for (const auto &r : s->names) {
        if (!onto.FindAttribute(e.category, r)) {
          throw Error(ErrorKind::kSchema,
                      where + "map role " + r + " is not an attribute of " +
                          e.category);
        }
      }
    }
  }
}

const GazetteerEntry *Gazetteer::DirectMatch(const std::string &phrase) const {
  auto [b, e] = names_.equal_range(phrase);
  const GazetteerEntry *best = nullptr;
  for (auto it = b; it != e; ++it) {
    const auto &entry = entries_[it->second];
    if (entry.kind != EntryKind::kSpecific) continue;
    if (!best || it->second < static_cast<size_t>(best - entries_.data())) {
      best = &entry;
    }
  }
  return best;
}

std::vector<std::pair<std::string, std::string>> Gazetteer::Bind(
    const GazetteerEntry &entry, const std::string &token,
    const std::string &phrase) const {
  std::vector<std::pair<std::string, std::string>> out;
  if (!entry.has_pattern()) return out;
  std::regex re(Instantiate(entry.pattern, token), std::regex::ECMAScript);
  std::smatch m;
  if (!std::regex_match(phrase, m, re)) return out;
  for (size_t i = 0; i < entry.group_map.size(); ++i) {
    const std::string &attr = entry.group_map[i];
    if (attr.empty() || i + 1 >= m.size()) continue;
    if (!m[i + 1].matched || m[i + 1].length() == 0) continue;
    if (std::any_of(out.begin(), out.end(),
                    [&attr](const auto &kv) { return kv.first == attr; })) {
      continue;
    }
    out.emplace_back(attr, m[i + 1].str());
  }
  return out;
}

std::optional<NamedEntity> Gazetteer::SecondPassMatch(
    const std::string &phrase, const std::string &head) const {
  std::vector<std::string> tokens;
  if (!head.empty()) tokens.push_back(head);
  std::istringstream in(phrase);
  for (std::string t; in >> t;) {
    if (t != head) tokens.push_back(t);
  }
  for (const auto &token : tokens) {
    auto [b, e] = names_.equal_range(token);
    std::vector<size_t> hits;
    for (auto it = b; it != e; ++it) hits.push_back(it->second);
    std::sort(hits.begin(), hits.end());
    for (size_t i : hits) {
      const auto &entry = entries_[i];
      if (!entry.has_pattern()) continue;
      std::regex re(Instantiate(entry.pattern, token), std::regex::ECMAScript);
      std::smatch m;
      if (!std::regex_match(phrase, m, re)) continue;
      NamedEntity ne;
      ne.category = entry.category;
      ne.attributes = Bind(entry, token, phrase);
      ne.phrase = phrase;
      ne.head = head;
      return ne;
    }
  }
  return std::nullopt;
}

const GazetteerEntry *Gazetteer::RelationTrigger(
    const std::string &words, std::optional<EntryKind> kind) const {
  std::vector<std::string> parts;
  std::istringstream in(words);
  for (std::string w; in >> w;) parts.push_back(w);
  for (size_t n = parts.size(); n > 0; --n) {
    std::string key;
    for (size_t i = 0; i < n; ++i) key += (i ? " " : "") + parts[i];
    auto [b, e] = relations_.equal_range(key);
    const GazetteerEntry *best = nullptr;
    size_t best_index = entries_.size();
    for (auto it = b; it != e; ++it) {
      if (kind && entries_[it->second].kind != *kind) continue;
      if (it->second < best_index) {
        best_index = it->second;
        best = &entries_[it->second];
      }
    }
    if (best) return best;
  }
  return nullptr;
}

std::optional<ContingencyMatch> Gazetteer::ContingencyTrigger(
    const std::string &event_cat, const std::string &entity_cat,
    const Ontology &onto) const {
  std::vector<std::string> chain{event_cat};
  for (const auto &a : onto.Ancestors(event_cat)) chain.push_back(a);
  for (const auto &cls : chain) {
    for (const auto &e : entries_) {
      if (!e.is_relation() || e.category != cls) continue;
      for (bool right : {false, true}) {
        const Slot &classes = right ? e.right_classes : e.left_classes;
        const Slot &roles = right ? e.right_roles : e.left_roles;
        for (size_t i = 0; i < classes.names.size(); ++i) {
          const std::string &k = classes.names[i];
          if (!onto.SubclassOf(entity_cat, k) &&
              !onto.SubclassOf(k, entity_cat)) {
            continue;
          }
          auto filled = RolesFor(classes, roles, i);
          if (filled.empty()) continue;
          return ContingencyMatch{&e, right, filled[0]};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace nalqa
