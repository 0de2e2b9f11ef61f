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

#include <span>
#include <vector>

#include "shardgraph/core/ego_graph.hpp"
#include "shardgraph/exec/registry.hpp"
#include "shardgraph/node/storage_service.hpp"

namespace shardgraph {

// Builds ego graphs for roots homed on this machine. Adjacency comes from
// the local shard; properties held elsewhere are fetched with one request
// per remote shard and element class for the whole batch of roots.
class EgoBuilder {
 public:
  EgoBuilder(const ShardStore& local, StorageClient& remote, EgoSpec spec)
      : local_(local), remote_(remote), spec_(std::move(spec)) {}

  // Throws kWrongHome for a root homed elsewhere, kUnknownVertex for a
  // root the shard does not hold.
  std::vector<EgoGraph> build(std::span<const VertexRef> roots) const;
  EgoGraph build_one(const VertexRef& root) const;

  // Remote property requests issued so far.
  uint64_t remote_requests() const noexcept { return remote_requests_; }

 private:
  const ShardStore& local_;
  StorageClient& remote_;
  EgoSpec spec_;
  mutable std::atomic<uint64_t> remote_requests_{0};
};

}  // namespace shardgraph
