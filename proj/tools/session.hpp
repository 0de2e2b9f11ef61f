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

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "shardgraph/bus/tcp_transport.hpp"
#include "shardgraph/graph/dgraph.hpp"
#include "shardgraph/node/machine_node.hpp"

namespace shardgraph::cli {

struct SessionOptions {
  // Membership file of a running TCP cluster.
  std::optional<std::filesystem::path> connect;
  // Shard logs of an in-process cluster, kept between invocations.
  std::optional<std::filesystem::path> data;
  std::optional<uint32_t> nodes;
  std::optional<std::filesystem::path> manifest;
  size_t threads = 1;
  int timeout_ms = 30000;
};

// The cluster a client verb talks to: either machines in this process,
// optionally persisted under a data directory, or a TCP cluster started
// elsewhere with `cluster start --transport tcp`.
class Session {
 public:
  explicit Session(const SessionOptions& options);
  ~Session();

  DGraph& graph() { return *graph_; }
  uint32_t size() const { return graph_->cluster_size(); }
  std::string mode() const;

 private:
  std::unique_ptr<LocalCluster> local_;
  std::unique_ptr<TcpTransport> tcp_;
  std::unique_ptr<DGraph> graph_;
};

// <data>/cluster.json of an in-process cluster.
std::optional<uint32_t> ReadDataDirSize(const std::filesystem::path& data);
void WriteDataDirSize(const std::filesystem::path& data, uint32_t nodes);

Manifest LoadManifest(const std::optional<std::filesystem::path>& path);

}  // namespace shardgraph::cli
