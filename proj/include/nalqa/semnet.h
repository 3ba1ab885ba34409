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


#ifndef NALQA_SEMNET_H_
#define NALQA_SEMNET_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nalqa {

inline constexpr char kIsEdge[] = "is";

struct Triple {
  std::string node1;
  std::string edge;
  std::string node2;

  auto operator<=>(const Triple &) const = default;
  bool operator==(const Triple &) const = default;
};

// Leaf-to-root path n1, e1, n2, e2, n3, is, n4.
struct PathSequence {
  std::string n1;  // leaf value
  std::string e1;  // atomic attribute edge
  std::string n2;  // entity object
  std::string e2;  // event attribute edge
  std::string n3;  // event object
  std::string e3 = kIsEdge;
  std::string n4;  // event class

  std::string ToString() const;

  auto operator<=>(const PathSequence &) const = default;
  bool operator==(const PathSequence &) const = default;
};

// Network-bound list of binary terms. Insertion order is preserved so that
// serialization and path enumeration are deterministic.
class SemanticNetwork {
 public:
  // Inserts t unless already present. Returns false for duplicates and
  // throws kKindViolation when t breaks the node-kind rules. `is_a` is
  // stored as `is`.
  bool Insert(Triple t);
  // Checks that every object node carries exactly one `is` edge.
  void Validate() const;

  const std::vector<Triple> &triples() const { return triples_; }
  size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  bool Contains(const Triple &t) const { return set_.count(t) > 0; }

  bool IsObject(const std::string &node) const {
    return out_.count(node) > 0;
  }
  std::optional<std::string> ClassOf(const std::string &object) const;
  // Outgoing triples of node in insertion order, excluding `is`.
  std::vector<const Triple *> Attributes(const std::string &node) const;
  // Objects in order of their first outgoing triple.
  const std::vector<std::string> &objects() const { return objects_; }

  std::string Serialize() const;
  static SemanticNetwork Parse(std::string_view text);

  // Triple-set equality.
  bool operator==(const SemanticNetwork &other) const {
    return set_ == other.set_;
  }

 private:
  std::vector<Triple> triples_;
  std::set<Triple> set_;
  std::map<std::string, std::vector<size_t>> out_;
  std::map<std::string, std::string> class_of_;
  std::set<std::string> class_nodes_;
  std::vector<std::string> objects_;
};

// Every leaf-to-root path with exactly two intermediate nodes: events in
// order of appearance, then their entity edges, then the entity leaves.
std::vector<PathSequence> EnumeratePaths(const SemanticNetwork &net);

// Stable 64-bit FNV-1a content hash rendered as 16 hex digits.
std::string ContentId(std::string_view key);

}  // namespace nalqa

#endif  // NALQA_SEMNET_H_
