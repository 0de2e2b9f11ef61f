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

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include <json.hpp>

#include "shardgraph/graph/dgraph.hpp"

namespace shardgraph {

struct ERSpec {
  uint64_t components = 1;
  uint64_t vertices_per_component = 100;
  uint64_t edges_per_component = 1000;
  uint64_t seed = 0;
  // Adds a float "weight" to every edge.
  bool edge_attributes = false;

  nlohmann::json to_json() const;
  static ERSpec FromJson(const nlohmann::json& j);
};

// Component c owns vertex ids [c*n + 1, (c+1)*n] and edge ids
// [c*M + 1, (c+1)*M]. Vertices carry "speed" (float in [0, 1000)) and
// "kind" (int in [0, 8)).
struct ERGraph {
  ERSpec spec;
  std::vector<IngestVertex> vertices;
  std::vector<IngestEdge> edges;
  // Extra draws made to get connected components.
  uint64_t redraws = 0;
  // Components still disconnected after kMaxDraws attempts.
  uint64_t disconnected = 0;

  uint64_t elements() const noexcept { return vertices.size() + edges.size(); }
  uint64_t component_of(VertexId id) const noexcept { return (id - 1) / spec.vertices_per_component; }
};

inline constexpr uint64_t kMaxDraws = 16;

// Per component: G(n, M) with exactly M distinct unordered pairs, each
// oriented by a coin flip. When M >= n - 1 a disconnected draw is repeated
// with the next seed, at most kMaxDraws times in all; near M = n - 1 almost
// every draw is disconnected, so the last one is kept. Throws
// kInvalidArgument when M > n(n-1)/2 or n == 0.
ERGraph GenerateER(const ERSpec& spec);

// vertices.tsv (id TAB json-props), edges.tsv (src TAB dst TAB label TAB
// json-props; the edge id is the 1-based line number) and meta.json.
void WriteGraph(const ERGraph& g, const std::filesystem::path& dir);
ERGraph ReadGraph(const std::filesystem::path& dir);

// Weakly connected components by union-find, each labeled with its least
// vertex id.
std::map<VertexId, VertexId> UnionFindComponents(const std::vector<IngestVertex>& vertices,
                                                 const std::vector<IngestEdge>& edges);

}  // namespace shardgraph
