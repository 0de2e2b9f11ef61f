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

#include <atomic>
#include <chrono>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "shardgraph/bus/rpc.hpp"
#include "shardgraph/exec/job_driver.hpp"
#include "shardgraph/graph/pattern.hpp"
#include "shardgraph/node/storage_service.hpp"
#include "shardgraph/placement/placement.hpp"

namespace shardgraph {

struct DGraphOptions {
  std::chrono::milliseconds timeout{30000};
  // Seeds placement of vertices whose ids the shards allocate.
  uint64_t id_seed = 0;
  // Elements per ingest request, and concurrent ingest senders (0: one per
  // machine).
  size_t batch_size = 1000;
  size_t senders = 0;
};

struct IngestVertex {
  VertexId id = 0;
  PropertyList props;
};

struct IngestEdge {
  EdgeId id = 0;
  VertexId src = 0;
  VertexId dst = 0;
  std::string label;
  PropertyList props;
};

struct IngestFailure {
  ElementClass cls = ElementClass::kVertex;
  ElementId id = 0;
  ErrorCode code = ErrorCode::kInvalidArgument;
  std::string message;
};

struct IngestResult {
  uint64_t vertices = 0;
  uint64_t edges = 0;
  std::vector<IngestFailure> failures;
  std::chrono::duration<double> elapsed{0};
};

// Client-side view of the whole graph. Every call goes through the bus;
// no client code runs on the machines. Safe for concurrent use.
class DGraph {
 public:
  DGraph(Transport& transport, Manifest manifest = Manifest::Default(), DGraphOptions options = {});

  uint32_t cluster_size() const noexcept { return transport_.cluster_size(); }
  const DGraphOptions& options() const noexcept { return options_; }

  // The shard allocates the id; placement hashes (id_seed, sequence).
  VertexRef add_vertex(const PropertyList& props, const PlacementPolicy& policy);
  // Caller-supplied id below 2^48; placement hashes the id.
  VertexRef add_vertex(VertexId id, const PropertyList& props, const PlacementPolicy& policy);

  // Origin half (with props) at src.home; when the homes differ the mirror
  // is written first at dst.home and dropped if the origin is refused.
  EdgeId add_edge(const VertexRef& src, const VertexRef& dst, const std::string& label,
                  const PropertyList& props = {}, std::optional<EdgeId> id = std::nullopt);

  // One request to ref.home; complete, with remote homes on every ref.
  std::vector<Neighbor> get_neighbors(const VertexRef& ref, Direction d);

  // Scatter to every shard index; ascending ids.
  std::vector<VertexRef> query_by_attribute(const std::string& key, const Predicate& p);

  // Common neighbors over both directions; at most two requests.
  std::vector<VertexRef> joint_neighbors(const VertexRef& a, const VertexRef& b);

  // All injective bindings, in ascending order of the bound ids by
  // variable declaration order.
  std::vector<Binding> match_pattern(const Pattern& p);

  // Finds the home of a vertex by asking every shard.
  std::optional<VertexRef> locate(VertexId id);

  LocalityReport locality_report();
  std::vector<ShardStats> shard_stats();
  // Every stored vertex, ascending id.
  std::vector<VertexRef> all_vertices();

  // Places and stores the vertices in batches; refs come back in input
  // order (placement alone decides them, so they are valid even for
  // entries reported as failures).
  IngestResult ingest_vertices(std::span<const IngestVertex> vertices, const PlacementPolicy& policy,
                               std::vector<VertexRef>* refs = nullptr);
  // Same, for vertices whose homes the caller already chose.
  IngestResult ingest_placed(std::vector<VertexPut> vertices);
  // Mirrors for every cross-shard edge first, then origins. Endpoints are
  // resolved through `homes`; an endpoint missing from it is a failure.
  IngestResult ingest_edges(std::span<const IngestEdge> edges, const std::unordered_map<VertexId, VertexRef>& homes);

  StorageClient& storage() noexcept { return storage_; }
  JobDriver& jobs() noexcept { return jobs_; }
  RpcClient& rpc() noexcept { return rpc_; }

 private:
  template <class Item>
  void SendBatches(std::vector<std::vector<Item>>& per_machine,
                   const std::function<std::vector<BatchFailure>(uint32_t, const std::vector<Item>&)>& send,
                   const std::function<IngestFailure(const Item&, const BatchFailure&)>& fail,
                   IngestResult& result);

  Transport& transport_;
  DGraphOptions options_;
  RpcClient rpc_;
  StorageClient storage_;
  JobDriver jobs_;
  std::atomic<uint64_t> vertex_seq_{0};
  std::atomic<uint64_t> edge_seq_{0};
};

}  // namespace shardgraph
