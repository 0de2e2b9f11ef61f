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

#include "shardgraph/exec/ego_builder.hpp"

#include <map>
#include <set>

namespace shardgraph {

EgoGraph EgoBuilder::build_one(const VertexRef& root) const {
  auto v = build(std::span(&root, 1));
  return std::move(v.front());
}

std::vector<EgoGraph> EgoBuilder::build(std::span<const VertexRef> roots) const {
  const MachineId self = local_.machine();
  std::vector<EgoGraph> out;
  out.reserve(roots.size());
  for (const auto& root : roots) {
    if (root.home() != self) {
      throw Error(ErrorCode::kWrongHome, "ego graph root " + std::to_string(root.id()) + " is homed on machine " +
                                             std::to_string(root.home().index));
    }
    if (!local_.has_vertex(root.id())) {
      throw Error(ErrorCode::kUnknownVertex, "unknown vertex " + std::to_string(root.id()));
    }
    EgoGraph g(root);
    if (spec_.neighbors) {
      for (const auto& n : local_.neighbors_local(root.id(), *spec_.neighbors)) {
        EdgeRecord e;
        e.id = n.edge;
        e.label = n.label;
        if (n.direction == Direction::kOut) {
          e.src = root;
          e.dst = n.vertex;
        } else {
          e.src = n.vertex;
          e.dst = root;
        }
        g.add_edge(e);
      }
    }
    out.push_back(std::move(g));
  }

  std::vector<std::string> vkeys, ekeys;
  for (const auto& [cls, key] : spec_.fetch) (cls == ElementClass::kVertex ? vkeys : ekeys).push_back(key);
  if (vkeys.empty() && ekeys.empty()) return out;

  // Which ego graphs want which element, grouped by the machine holding it.
  struct Want {
    std::vector<ElementId> ids;
    std::vector<std::vector<size_t>> graphs;
    std::map<ElementId, size_t> slot;
    void add(ElementId id, size_t g) {
      auto [it, fresh] = slot.emplace(id, ids.size());
      if (fresh) {
        ids.push_back(id);
        graphs.emplace_back();
      }
      graphs[it->second].push_back(g);
    }
  };
  std::map<uint32_t, Want> vwant, ewant;
  for (size_t gi = 0; gi < out.size(); ++gi) {
    const auto& g = out[gi];
    if (!vkeys.empty()) {
      vwant[self.index].add(g.root().id(), gi);
      for (const auto& n : g.neighbors()) vwant[n.ref.home().index].add(n.ref.id(), gi);
    }
    if (!ekeys.empty()) {
      for (const auto& e : g.edges()) ewant[e.src.home().index].add(e.id, gi);
    }
  }

  auto fill = [&](ElementClass cls, const std::vector<std::string>& keys, std::map<uint32_t, Want>& wants) {
    for (auto& [machine, want] : wants) {
      std::vector<std::vector<std::optional<PropertyValue>>> rows;
      if (machine == self.index) {
        rows.resize(want.ids.size());
        for (size_t i = 0; i < want.ids.size(); ++i) {
          for (const auto& k : keys) rows[i].push_back(local_.get_property(cls, want.ids[i], k));
        }
      } else {
        rows = remote_.get_props(machine, cls, want.ids, keys);
        ++remote_requests_;
      }
      for (size_t i = 0; i < want.ids.size(); ++i) {
        for (size_t k = 0; k < keys.size(); ++k) {
          if (!rows[i][k]) continue;
          for (size_t gi : want.graphs[i]) {
            if (cls == ElementClass::kVertex) {
              out[gi].set_vertex_property(want.ids[i], keys[k], *rows[i][k]);
            } else {
              out[gi].set_edge_property(want.ids[i], keys[k], *rows[i][k]);
            }
          }
        }
      }
    }
  };
  fill(ElementClass::kVertex, vkeys, vwant);
  fill(ElementClass::kEdge, ekeys, ewant);
  return out;
}

}  // namespace shardgraph
