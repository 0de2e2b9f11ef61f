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
#include <vector>

#include "shardgraph/node/storage_service.hpp"
#include "shardgraph/store/shard_store.hpp"

namespace shardgraph {

// The partial graph local to one machine. Vertex iteration covers local
// vertices only; neighbor and property reads are complete, going to the
// owning shard when the answer is not here.
class JGraphView {
 public:
  JGraphView(const ShardStore& local, StorageClient& remote) : local_(local), remote_(remote) {}

  MachineId machine() const noexcept { return local_.machine(); }
  uint32_t cluster_size() const noexcept { return local_.cluster_size(); }

  std::vector<VertexRef> vertices() const { return local_.local_vertices(); }
  size_t vertex_count() const { return local_.vertex_count(); }
  bool is_local(const VertexRef& ref) const noexcept { return ref.home() == local_.machine(); }

  std::vector<Neighbor> neighbors(const VertexRef& ref, Direction d) const;
  std::optional<PropertyValue> vertex_property(const VertexRef& ref, const std::string& key) const;

  // Local-index query.
  std::vector<VertexRef> query_local(const std::string& key, const Predicate& p) const;

  const ShardStore& store() const noexcept { return local_; }
  // Requests to any machine, this one included.
  StorageClient& remote() const noexcept { return remote_; }

 private:
  const ShardStore& local_;
  StorageClient& remote_;
};

}  // namespace shardgraph
