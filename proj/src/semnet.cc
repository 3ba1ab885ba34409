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


#include "nalqa/semnet.h"

#include <cstdint>
#include <cstdio>
#include <sstream>

#include "nalqa/error.h"

namespace nalqa {

std::string PathSequence::ToString() const {
  return n1 + ", " + e1 + ", " + n2 + ", " + e2 + ", " + n3 + ", " + e3 +
         ", " + n4;
}

bool SemanticNetwork::Insert(Triple t) {
  if (t.edge == "is_a") t.edge = kIsEdge;
  for (const std::string *f : {&t.node1, &t.edge, &t.node2}) {
    if (f->empty() || f->find_first_of("\t\n\r") != std::string::npos) {
      throw Error(ErrorKind::kInvalidArgument,
                  "triple fields must be non-empty and free of tabs and "
                  "newlines");
    }
  }
  if (set_.count(t)) return false;
  auto violation = [&t](const std::string &why) {
    throw Error(ErrorKind::kKindViolation, "(" + t.node1 + ", " + t.edge +
                                               ", " + t.node2 + "): " + why);
  };
  if (class_nodes_.count(t.node1)) violation("edge out of a class node");
  if (t.edge == kIsEdge) {
    if (t.node1 == t.node2) violation("object cannot be its own class");
    if (out_.count(t.node2)) violation("'is' edge must end at a class node");
    auto it = class_of_.find(t.node1);
    if (it != class_of_.end() && it->second != t.node2) {
      violation("object already belongs to class " + it->second);
    }
    class_of_[t.node1] = t.node2;
    class_nodes_.insert(t.node2);
  }
  auto [slot, fresh] = out_.try_emplace(t.node1);
  if (fresh) objects_.push_back(t.node1);
  slot->second.push_back(triples_.size());
  set_.insert(t);
  triples_.push_back(std::move(t));
  return true;
}

void SemanticNetwork::Validate() const {
  for (const auto &obj : objects_) {
    int count = 0;
    for (size_t i : out_.at(obj)) count += triples_[i].edge == kIsEdge;
    if (count != 1) {
      throw Error(ErrorKind::kKindViolation,
                  "object " + obj + " has " + std::to_string(count) +
                      " 'is' edges");
    }
  }
}

std::optional<std::string> SemanticNetwork::ClassOf(
    const std::string &object) const {
  auto it = class_of_.find(object);
  if (it == class_of_.end()) return std::nullopt;
  return it->second;
}

std::vector<const Triple *> SemanticNetwork::Attributes(
    const std::string &node) const {
  std::vector<const Triple *> out;
  auto it = out_.find(node);
  if (it == out_.end()) return out;
  for (size_t i : it->second) {
    if (triples_[i].edge != kIsEdge) out.push_back(&triples_[i]);
  }
  return out;
}

std::string SemanticNetwork::Serialize() const {
  std::string out;
  for (const auto &t : triples_) {
    out += t.node1 + "\t" + t.edge + "\t" + t.node2 + "\n";
  }
  return out;
}

SemanticNetwork SemanticNetwork::Parse(std::string_view text) {
  SemanticNetwork net;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      f.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (line_no == 1 && f.size() == 3 && f[0] == "sn_node1") continue;
    if (f.size() != 3 || f[0].empty() || f[1].empty() || f[2].empty()) {
      throw Error(ErrorKind::kMalformedLine,
                  "network line " + std::to_string(line_no) +
                      ": expected 3 tab-separated fields");
    }
    try {
      net.Insert({f[0], f[1], f[2]});
    } catch (const Error &e) {
      throw Error(e.kind(),
                  "network line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return net;
}

std::vector<PathSequence> EnumeratePaths(const SemanticNetwork &net) {
  std::vector<PathSequence> paths;
  for (const auto &n3 : net.objects()) {
    auto n4 = net.ClassOf(n3);
    if (!n4) continue;
    for (const Triple *event_edge : net.Attributes(n3)) {
      const std::string &n2 = event_edge->node2;
      if (!net.IsObject(n2)) continue;
      for (const Triple *leaf_edge : net.Attributes(n2)) {
        if (net.IsObject(leaf_edge->node2)) continue;
        paths.push_back({leaf_edge->node2, leaf_edge->edge, n2,
                         event_edge->edge, n3, kIsEdge, *n4});
      }
    }
  }
  return paths;
}

std::string ContentId(std::string_view key) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace nalqa
