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

#include <array>
#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "shardgraph/core/ids.hpp"
#include "shardgraph/core/property_value.hpp"
#include "shardgraph/store/attribute_table.hpp"
#include "shardgraph/store/predicate.hpp"

namespace shardgraph {

class ShardLog;

enum class HalfRole : uint8_t { kOrigin = 0, kMirror = 1 };

struct Neighbor {
  EdgeId edge = 0;
  VertexRef vertex;
  std::string label;
  Direction direction = Direction::kOut;  // kOut: queried vertex is the source

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct ShardStats {
  uint64_t vertices = 0;
  uint64_t origin_halves = 0;
  uint64_t mirror_halves = 0;
  uint64_t vertex_tables = 0;
  uint64_t edge_tables = 0;
};

// Exact adjacency counts a shard contributes to a locality report.
struct LocalityCounts {
  MachineId machine;
  uint64_t origin_edges = 0;
  uint64_t colocated_edges = 0;
  uint64_t incidences = 0;
  uint64_t local_incidences = 0;
};

// Storage for one machine: adjacency of its vertices (out-lists from origin
// halves, in-lists from co-located origins and mirror halves) plus one
// indexed AttributeTable per property key, kept separately for vertices and
// edges. Vertex attributes live only at the vertex's home; edge attributes
// only at the edge's source home.
//
// Thread-safe. Adjacency is striped by vertex id; each attribute table has
// its own lock.
class ShardStore {
 public:
  // With a log path, existing records are replayed and every later mutation
  // is appended.
  ShardStore(MachineId self, uint32_t cluster_size,
             std::optional<std::filesystem::path> log_path = std::nullopt);
  ~ShardStore();

  ShardStore(const ShardStore&) = delete;
  ShardStore& operator=(const ShardStore&) = delete;

  MachineId machine() const noexcept { return self_; }
  uint32_t cluster_size() const noexcept { return cluster_size_; }

  // Upsert; props are merged. Returns true when the vertex is new.
  bool put_vertex(const VertexRef& ref, const PropertyList& props);
  // Allocates a fresh id homed here, then stores the vertex.
  VertexRef allocate_vertex(const PropertyList& props);

  // Idempotent by edge id. Origin: src homed here, writes out-adjacency
  // (and in-adjacency when dst is also local) plus attributes. Mirror: dst
  // homed here, in-adjacency only, no attributes.
  void put_edge_half(const EdgeRecord& e, HalfRole role, const PropertyList& props);
  // Compensates a mirror whose origin write was rejected.
  void drop_mirror(EdgeId id);

  bool has_vertex(VertexId id) const;
  std::vector<VertexRef> local_vertices() const;  // ascending id
  size_t vertex_count() const;

  // Complete neighbor list of a local vertex. kBoth is the union of both
  // directions, deduplicated by edge id, so a self-loop appears once.
  // Throws kUnknownVertex.
  std::vector<Neighbor> neighbors_local(VertexId id, Direction d) const;
  // Same, but an unknown vertex yields an empty list.
  std::vector<Neighbor> neighbors_or_empty(VertexId id, Direction d) const;

  // Element ids whose value satisfies p; unknown key yields {}.
  std::vector<ElementId> index_scan(ElementClass cls, const std::string& key, const Predicate& p) const;

  // Common neighbors c of a and b (either direction) for which both edges
  // a-c and b-c are stored on this shard. Unioned over all shards this is
  // the full intersection, since c's home stores both edges. Cheap when a
  // or b is local; otherwise scans local adjacency.
  std::vector<VertexRef> joint_neighbors_local(const VertexRef& a, const VertexRef& b) const;
  // Neighbors of a local vertex whose id appears in candidates (sorted).
  std::vector<VertexRef> intersect_neighbors(const VertexRef& v, std::span<const VertexId> candidates) const;

  std::optional<PropertyValue> get_property(ElementClass cls, ElementId id, const std::string& key) const;
  // Element must be stored here (vertex homed here, or edge whose origin
  // half is here). Returns true when the value changed.
  bool set_property(ElementClass cls, ElementId id, const std::string& key, const PropertyValue& v);

  std::vector<std::pair<ElementId, PropertyValue>> scan_all(ElementClass cls, const std::string& key) const;
  std::optional<ValueTag> key_tag(ElementClass cls, const std::string& key) const;
  std::vector<std::string> keys(ElementClass cls) const;
  const AttributeTable* table(ElementClass cls, const std::string& key) const;

  bool has_origin(EdgeId id) const;
  bool has_mirror(EdgeId id) const;
  std::vector<EdgeRecord> origin_edges() const;
  std::vector<EdgeRecord> mirror_edges() const;

  ShardStats stats() const;
  LocalityCounts locality_counts() const;

  void flush();

 private:
  static constexpr size_t kStripes = 64;

  struct AdjEntry {
    EdgeId edge;
    VertexRef other;
    uint32_t label;
  };
  struct Slot {
    bool present = false;
    std::vector<AdjEntry> out;
    std::vector<AdjEntry> in;
  };
  struct Stripe {
    mutable std::shared_mutex mu;
    std::unordered_map<VertexId, Slot> slots;
  };
  struct EdgeStripe {
    mutable std::shared_mutex mu;
    std::unordered_map<EdgeId, EdgeRecord> origins;
    std::unordered_map<EdgeId, EdgeRecord> mirrors;
  };
  struct TableSet {
    mutable std::shared_mutex mu;
    std::map<std::string, std::unique_ptr<AttributeTable>> tables;
  };

  Stripe& StripeFor(VertexId id) { return stripes_[Mix(id) % kStripes]; }
  const Stripe& StripeFor(VertexId id) const { return stripes_[Mix(id) % kStripes]; }
  EdgeStripe& EdgeStripeFor(EdgeId id) { return edge_stripes_[Mix(id) % kStripes]; }
  const EdgeStripe& EdgeStripeFor(EdgeId id) const { return edge_stripes_[Mix(id) % kStripes]; }
  static uint64_t Mix(uint64_t x) { return (x * 0x9E3779B97F4A7C15ULL) >> 32; }

  uint32_t InternLabel(const std::string& label);
  std::string LabelOf(uint32_t id) const;

  AttributeTable& TableFor(ElementClass cls, const std::string& key);
  const AttributeTable* FindTable(ElementClass cls, const std::string& key) const;
  void WriteProps(ElementClass cls, ElementId id, const PropertyList& props);

  void CheckHome(const VertexRef& ref, const char* what) const;
  std::vector<Neighbor> CollectNeighbors(VertexId id, const Slot& slot, Direction d) const;

  // Mutations without logging, shared by live writes and replay.
  bool ApplyPutVertex(const VertexRef& ref, const PropertyList& props);
  void ApplyPutEdgeHalf(const EdgeRecord& e, HalfRole role, const PropertyList& props);
  void ApplyDropMirror(EdgeId id);
  bool ApplySetProperty(ElementClass cls, ElementId id, const std::string& key, const PropertyValue& v);
  void Replay(const std::filesystem::path& path);

  MachineId self_;
  uint32_t cluster_size_;
  std::array<Stripe, kStripes> stripes_;
  std::array<EdgeStripe, kStripes> edge_stripes_;
  std::array<TableSet, 2> tables_;

  mutable std::shared_mutex labels_mu_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, uint32_t> label_ids_;

  std::atomic<uint64_t> next_local_id_{1};
  std::unique_ptr<ShardLog> log_;
};

}  // namespace shardgraph
