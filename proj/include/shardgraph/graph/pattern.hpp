/** Copyright 2026 The shardgraph Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * 	http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shardgraph/core/ids.hpp"
#include "shardgraph/store/predicate.hpp"

namespace shardgraph {

struct AttrConstraint {
  std::string key;
  Predicate predicate;
};

struct PatternVertex {
  std::string var;
  std::vector<AttrConstraint> where;
};

struct PatternEdge {
  std::string src;
  std::string dst;
  std::optional<std::string> label;
  std::vector<AttrConstraint> where;
};

// A connected query graph. Matching is injective: distinct variables bind
// distinct data vertices.
struct Pattern {
  std::vector<PatternVertex> vertices;
  std::vector<PatternEdge> edges;

  // Throws kInvalidArgument for duplicate or unknown variables, or a
  // disconnected pattern.
  void validate() const;

  // {"vertices": [{"var": "a", "where": [{"key": "k", "op": "gt", "value": 1}]}],
  //  "edges": [{"src": "a", "dst": "b", "label": "l", "where": []}]}
  // A range takes "value": [lo, hi].
  static Pattern FromJson(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

using Binding = std::map<std::string, VertexRef>;

}  // namespace shardgraph
