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


#ifndef NALQA_GAZETTEER_H_
#define NALQA_GAZETTEER_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nalqa {

class Ontology;

enum class EntryKind {
  kSpecific,
  kGeneric,
  kRelationNoun,
  kRelationVerb,
  kRelationPrep,
};

const char *EntryKindName(EntryKind kind);

// One side of a relation pattern or map, e.g. {PERSON|ORGANIZATION}.
// Names are stored in lower case.
struct Slot {
  std::vector<std::string> names;
  // "PLAINTIFF&&DEFENDANT": every name is filled from the one filler.
  bool conjoined = false;

  bool empty() const { return names.empty(); }
};

struct GazetteerEntry {
  std::string name;
  std::string category;
  std::string pattern;  // empty when the file says "no pattern"
  EntryKind kind = EntryKind::kSpecific;
  std::string alias;
  std::string map;
  std::vector<std::string> group_map;

  // Parsed relation pattern and map.
  Slot left_classes, right_classes;
  Slot left_roles, right_roles;

  bool has_pattern() const { return !pattern.empty(); }
  bool is_relation() const {
    return kind != EntryKind::kSpecific && kind != EntryKind::kGeneric;
  }
};

struct NamedEntity {
  std::string category;
  std::vector<std::pair<std::string, std::string>> attributes;
  int sentence = 0;
  int offset = 0;  // token offset of the head
  std::string phrase;
  std::string head;

  const std::string *Find(const std::string &attr) const;
};

// A relation entry that can fill a role with an entity of a given class.
struct ContingencyMatch {
  const GazetteerEntry *entry = nullptr;
  bool right = false;  // slot side
  std::string role;
};

// Checks that a pattern stays inside the supported regular-expression subset
// and returns its number of capture groups. Throws kParse otherwise.
int ValidatePattern(const std::string &pattern);

// Escapes regular-expression metacharacters.
std::string EscapeRegex(std::string_view text);

// Parses "{A|B}<RELATION>{C}" into its two sides.
std::pair<Slot, Slot> ParseSlots(const std::string &text);

// Roles filled when the filler matched the class at `class_index` of
// `classes`. Role lists as long as the class list are positional; otherwise
// the single role applies to every class. Conjoined maps fill all roles.
std::vector<std::string> RolesFor(const Slot &classes, const Slot &roles,
                                  size_t class_index);

class Gazetteer {
 public:
  Gazetteer() = default;

  static Gazetteer Load(std::string_view tsv);
  static Gazetteer FromEntries(std::vector<GazetteerEntry> entries);
  std::string Serialize() const;

  // Checks entry categories, roles and attribute maps against the ontology.
  void Validate(const Ontology &onto) const;

  const std::vector<GazetteerEntry> &entries() const { return entries_; }
  const std::vector<std::string> &warnings() const { return warnings_; }

  // Case-sensitive match of the whole phrase against specific entries.
  const GazetteerEntry *DirectMatch(const std::string &phrase) const;
  // Binds attributes for a phrase recognised by an entry.
  std::vector<std::pair<std::string, std::string>> Bind(
      const GazetteerEntry &entry, const std::string &token,
      const std::string &phrase) const;
  std::optional<NamedEntity> SecondPassMatch(const std::string &phrase,
                                             const std::string &head) const;

  // Longest relation trigger that prefixes `words`; restricted to `kind`
  // when given.
  const GazetteerEntry *RelationTrigger(
      const std::string &words,
      std::optional<EntryKind> kind = std::nullopt) const;
  std::optional<ContingencyMatch> ContingencyTrigger(
      const std::string &event_cat, const std::string &entity_cat,
      const Ontology &onto) const;

 private:
  void Index();

  std::vector<GazetteerEntry> entries_;
  std::vector<std::string> warnings_;
  std::multimap<std::string, size_t> names_;  // name and alias, non-relation
  std::multimap<std::string, size_t> relations_;
};

}  // namespace nalqa

#endif  // NALQA_GAZETTEER_H_
