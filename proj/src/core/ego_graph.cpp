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

#include "shardgraph/core/ego_graph.hpp"

namespace shardgraph {

void EgoGraph::add_edge(const EdgeRecord& e) {
  const bool out = e.src == root_;
  const bool in = e.dst == root_;
  if (!out && !in) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge " + std::to_string(e.id) + " is not incident to root " + std::to_string(root_.id()));
  }
  if (edge_index_.contains(e.id)) return;
  edge_index_.emplace(e.id, edges_.size());
  edges_.push_back(e);
  // A self-loop shows up once per direction.
  if (out && out_ids_.insert(e.dst.id()).second) {
    neighbors_.push_back({e.dst, Direction::kOut});
  }
  if (in && in_ids_.insert(e.src.id()).second) {
    neighbors_.push_back({e.src, Direction::kIn});
  }
}

void EgoGraph::set_vertex_property(VertexId id, std::string key, PropertyValue v) {
  vertex_props_.insert_or_assign(Key{id, std::move(key)}, std::move(v));
}

void EgoGraph::set_edge_property(EdgeId id, std::string key, PropertyValue v) {
  edge_props_.insert_or_assign(Key{id, std::move(key)}, std::move(v));
}

std::optional<PropertyValue> EgoGraph::vertex_property(VertexId id, std::string_view key) const {
  auto it = vertex_props_.find(Key{id, std::string(key)});
  if (it == vertex_props_.end()) return std::nullopt;
  return it->second;
}

std::optional<PropertyValue> EgoGraph::edge_property(EdgeId id, std::string_view key) const {
  auto it = edge_props_.find(Key{id, std::string(key)});
  if (it == edge_props_.end()) return std::nullopt;
  return it->second;
}

bool EgoGraph::contains_vertex(VertexId id) const noexcept {
  if (id == root_.id()) return true;
  return out_ids_.contains(id) || in_ids_.contains(id);
}

void EgoGraph::write_root(std::string key, PropertyValue v) {
  write_set_.push_back({ElementClass::kVertex, root_.id(), std::move(key), std::move(v)});
}

void EgoGraph::write_edge(EdgeId id, std::string key, PropertyValue v) {
  if (!contains_edge(id)) {
    throw Error(ErrorCode::kOutOfScopeWrite,
                "edge " + std::to_string(id) + " is not incident to root " + std::to_string(root_.id()));
  }
  write_set_.push_back({ElementClass::kEdge, id, std::move(key), std::move(v)});
}

void EgoGraph::validate() const {
  for (const auto& e : edges_) {
    if (!(e.src == root_) && !(e.dst == root_)) {
      throw Error(ErrorCode::kInvalidArgument, "non-incident edge " + std::to_string(e.id));
    }
  }
  for (const auto& n : neighbors_) {
    bool reached = false;
    for (const auto& e : edges_) {
      if ((n.direction == Direction::kOut && e.src == root_ && e.dst == n.ref) ||
          (n.direction == Direction::kIn && e.dst == root_ && e.src == n.ref)) {
        reached = true;
        break;
      }
    }
    if (!reached) throw Error(ErrorCode::kInvalidArgument, "dangling neighbor " + std::to_string(n.ref.id()));
  }
  for (const auto& w : write_set_) {
    if (w.target == ElementClass::kVertex ? w.id != root_.id() : !contains_edge(w.id)) {
      throw Error(ErrorCode::kOutOfScopeWrite, "write outside ego graph scope: " + std::to_string(w.id));
    }
  }
}

}  // namespace shardgraph
