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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "shardgraph/core/hash.hpp"
#include "shardgraph/core/ids.hpp"
#include "shardgraph/core/property_value.hpp"
#include "shardgraph/store/shard_store.hpp"

namespace shardgraph {

// hash(placement key) mod k.
struct RandomHash {
  uint64_t seed = kPlacementSeed;
};

// Caller picks the machine.
struct Explicit {
  MachineId machine;
};

// hash(canonical bytes of the designated properties) mod k. Float values
// are bucketed to multiples of grid_resolution first (when > 0), so nearby
// coordinates land in the same cell.
struct AttributeHash {
  std::vector<std::string> keys;
  double grid_resolution = 0.0;
  uint64_t seed = kPlacementSeed;
};

using PlacementPolicy = std::variant<RandomHash, Explicit, AttributeHash>;

std::string PolicyName(const PlacementPolicy& p);

/// Deterministic home machine in [0, k). `placement_key` is the vertex id
/// for caller-supplied ids. Throws kMissingAttribute or kOutOfRange.
MachineId Assign(uint64_t placement_key, const PropertyList& props, const PlacementPolicy& policy, uint32_t k);

struct MachineLocality {
  MachineId machine;
  uint64_t origin_edges = 0;
  double local_fraction = 1.0;  // co-located share of edges originating here
  uint64_t edge_cut = 0;        // edges originating here whose target is remote
};

struct LocalityReport {
  std::vector<MachineLocality> per_machine;
  uint64_t total_edges = 0;
  uint64_t edge_cut = 0;
  double overall = 1.0;                // co-located edges / total edges
  double vertex_local_fraction = 1.0;  // local (vertex, neighbor) incidences / all incidences
};

LocalityReport BuildLocalityReport(std::span<const LocalityCounts> counts);

// machine,local_fraction,edge_cut rows, then an "all" row for the cluster.
std::string LocalityCsv(const LocalityReport& r);

}  // namespace shardgraph
