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

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "shardgraph/core/ids.hpp"
#include "shardgraph/core/property_value.hpp"

namespace shardgraph {

struct EgoNeighbor {
  VertexRef ref;
  Direction direction = Direction::kOut;  // relative to root: kOut means root -> ref
};

// One property write produced by a neighborhood function. Targets are the
// root vertex or an edge incident to it.
struct WriteEntry {
  ElementClass target = ElementClass::kVertex;
  ElementId id = 0;
  std::string key;
  PropertyValue value;
};

using WriteSet = std::vector<WriteEntry>;

// The small in-memory graph handed to a neighborhood function: exactly one
// vertex labeled "root", the root's incident edges (as requested), their
// far endpoints, and whichever properties were asked for.
class EgoGraph {
 public:
  static constexpr std::string_view kRootLabel = "root";

  explicit EgoGraph(VertexRef root) : root_(root) {}

  const VertexRef& root() const noexcept { return root_; }

  // "root" for the root vertex, empty for every other vertex.
  std::string_view label(VertexId id) const noexcept {
    return id == root_.id() ? kRootLabel : std::string_view{};
  }

  const std::vector<EgoNeighbor>& neighbors() const noexcept { return neighbors_; }
  const std::vector<EdgeRecord>& edges() const noexcept { return edges_; }

  // Adds an edge touching the root and records its far endpoint as a
  // neighbor. Throws kInvalidArgument for a non-incident edge.
  void add_edge(const EdgeRecord& e);

  void set_vertex_property(VertexId id, std::string key, PropertyValue v);
  void set_edge_property(EdgeId id, std::string key, PropertyValue v);

  std::optional<PropertyValue> vertex_property(VertexId id, std::string_view key) const;
  std::optional<PropertyValue> edge_property(EdgeId id, std::string_view key) const;

  bool contains_vertex(VertexId id) const noexcept;
  bool contains_edge(EdgeId id) const noexcept { return edge_index_.contains(id); }

  size_t property_count() const noexcept { return vertex_props_.size() + edge_props_.size(); }

  void write_root(std::string key, PropertyValue v);
  // Throws kOutOfScopeWrite unless the edge is in this ego graph.
  void write_edge(EdgeId id, std::string key, PropertyValue v);

  const WriteSet& write_set() const noexcept { return write_set_; }
  WriteSet take_write_set() noexcept { return std::move(write_set_); }

  // Checks the structural invariants: every edge is incident to the root,
  // every neighbor is reached by a listed edge, and the write set only
  // targets the root or listed edges. Throws kInvalidArgument.
  void validate() const;

 private:
  struct Key {
    ElementId id;
    std::string name;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const noexcept {
      return std::hash<uint64_t>{}(k.id) ^ (std::hash<std::string>{}(k.name) * 31);
    }
  };

  VertexRef root_;
  std::vector<EgoNeighbor> neighbors_;
  std::vector<EdgeRecord> edges_;
  std::unordered_map<EdgeId, size_t> edge_index_;
  std::unordered_set<VertexId> out_ids_;
  std::unordered_set<VertexId> in_ids_;
  std::unordered_map<Key, PropertyValue, KeyHash> vertex_props_;
  std::unordered_map<Key, PropertyValue, KeyHash> edge_props_;
  WriteSet write_set_;
};

}  // namespace shardgraph
