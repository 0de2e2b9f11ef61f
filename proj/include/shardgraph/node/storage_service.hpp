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

#include <chrono>
#include <future>
#include <span>
#include <vector>

#include "shardgraph/bus/broker.hpp"
#include "shardgraph/bus/rpc.hpp"
#include "shardgraph/node/storage_protocol.hpp"

namespace shardgraph {

// Serves machine/<i>/storage requests against one ShardStore.
class StorageService {
 public:
  StorageService(ShardStore& store, Transport& transport) : store_(store), transport_(transport) {}

  void bind(Broker& broker);

  // Decodes one request and returns the full reply payload (status first).
  Bytes handle(std::span<const uint8_t> request);

 private:
  Bytes Dispatch(BinaryReader& r);

  ShardStore& store_;
  Transport& transport_;
};

struct SetPropsResult {
  std::vector<bool> changed;  // per write; false also for refused writes
  std::vector<BatchFailure> failures;
};

// Typed client side of the storage protocol. Safe for concurrent use.
class StorageClient {
 public:
  StorageClient(RpcClient& rpc, std::chrono::milliseconds timeout) : rpc_(rpc), timeout_(timeout) {}

  uint32_t cluster_size() const noexcept { return rpc_.transport().cluster_size(); }
  std::chrono::milliseconds timeout() const noexcept { return timeout_; }

  std::future<Envelope> send(uint32_t machine, Bytes request);
  // Waits and opens the reply, throwing its carried error or kTimeout.
  Bytes await(std::future<Envelope>& f, uint32_t machine, StorageOp op);
  // Sends one request to every machine concurrently and returns the reply
  // bodies in machine order.
  std::vector<Bytes> scatter(const Bytes& request);

  bool put_vertex(const VertexRef& ref, const PropertyList& props);
  VertexRef alloc_vertex(uint32_t machine, const PropertyList& props);
  std::vector<BatchFailure> put_vertex_batch(uint32_t machine, const std::vector<VertexPut>& batch);
  void put_edge_half(uint32_t machine, const EdgeHalfPut& half);
  std::vector<BatchFailure> put_edge_batch(uint32_t machine, const std::vector<EdgeHalfPut>& batch);
  void drop_mirror(uint32_t machine, EdgeId id);

  std::vector<Neighbor> neighbors(const VertexRef& ref, Direction d);
  std::vector<VertexRef> intersect(const VertexRef& v, std::span<const VertexId> candidates);
  std::vector<VertexRef> joint_local(uint32_t machine, const VertexRef& a, const VertexRef& b);
  std::vector<ElementId> index_scan(uint32_t machine, ElementClass cls, const std::string& key, const Predicate& p);

  // values[i][j] is keys[j] of ids[i].
  std::vector<std::vector<std::optional<PropertyValue>>> get_props(uint32_t machine, ElementClass cls,
                                                                   std::span<const ElementId> ids,
                                                                   std::span<const std::string> keys);
  SetPropsResult set_props(uint32_t machine, ElementClass cls,
                                                           const std::vector<PropertyWrite>& writes);

  std::vector<std::pair<ElementId, PropertyValue>> scan_all(uint32_t machine, ElementClass cls, const std::string& key);
  std::vector<std::pair<std::string, ValueTag>> key_tags(uint32_t machine, ElementClass cls);
  ShardStats stats(uint32_t machine);
  LocalityCounts locality(uint32_t machine);
  bool locate(uint32_t machine, VertexId id);
  std::vector<VertexRef> local_vertices(uint32_t machine);
  void flush(uint32_t machine);
  EdgeAudit edge_audit(uint32_t machine);

  static Bytes EncodeIndexScan(ElementClass cls, const std::string& key, const Predicate& p);
  static Bytes EncodeSimple(StorageOp op);
  static Bytes EncodeLocate(VertexId id);
  static std::vector<ElementId> DecodeIds(const Bytes& body);
  static ShardStats DecodeStats(const Bytes& body);
  static LocalityCounts DecodeLocality(const Bytes& body);
  static EdgeAudit DecodeEdgeAudit(const Bytes& body);
  static std::vector<std::pair<std::string, ValueTag>> DecodeKeyTags(const Bytes& body);

 private:
  Bytes Call(uint32_t machine, Bytes request);

  RpcClient& rpc_;
  std::chrono::milliseconds timeout_;
};

}  // namespace shardgraph
