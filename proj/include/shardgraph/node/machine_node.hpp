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
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "shardgraph/bus/broker.hpp"
#include "shardgraph/bus/rpc.hpp"
#include "shardgraph/bus/transport.hpp"
#include "shardgraph/exec/job_service.hpp"
#include "shardgraph/exec/registry.hpp"
#include "shardgraph/node/storage_service.hpp"

namespace shardgraph {

struct NodeOptions {
  // Workers running one Neighborhood iteration on this machine.
  size_t threads = 1;
  // Broker workers serving storage requests.
  size_t handler_workers = 2;
  // When set, the shard logs to <data_dir>/shard-<i>.log and replays it.
  std::optional<std::filesystem::path> data_dir;
  std::chrono::milliseconds rpc_timeout{30000};
};

// One machine: its shard, its broker, and the services bound to it.
class MachineNode {
 public:
  MachineNode(MachineId id, Transport& transport, const Registry& registry, const NodeOptions& options);
  ~MachineNode();

  MachineNode(const MachineNode&) = delete;
  MachineNode& operator=(const MachineNode&) = delete;

  MachineId id() const noexcept { return store_.machine(); }
  ShardStore& store() noexcept { return store_; }
  Broker& broker() noexcept { return broker_; }

  // Detaches from the transport and stops all threads.
  void shutdown();

 private:
  Transport& transport_;
  ShardStore store_;
  RpcClient rpc_;
  StorageClient remote_;
  StorageService storage_;
  Broker broker_;
  JobService jobs_;
  bool down_ = false;
};

struct LocalClusterOptions {
  uint32_t machines = 1;
  InProcOptions bus;
  NodeOptions node;
  Manifest manifest = Manifest::Default();
  // Implementations offered; restricted to the manifest at start.
  std::optional<Registry> registry;
};

// k machines sharing one in-process transport.
class LocalCluster {
 public:
  explicit LocalCluster(LocalClusterOptions options);
  ~LocalCluster();

  uint32_t size() const noexcept { return static_cast<uint32_t>(nodes_.size()); }
  InProcTransport& transport() noexcept { return *transport_; }
  MachineNode& node(uint32_t i) { return *nodes_.at(i); }
  const Manifest& manifest() const noexcept { return options_.manifest; }
  const LocalClusterOptions& options() const noexcept { return options_; }

  // A disabled machine receives nothing; everything else keeps flowing.
  void set_enabled(uint32_t machine, bool on) { transport_->set_machine_enabled(machine, on); }

 private:
  LocalClusterOptions options_;
  std::unique_ptr<InProcTransport> transport_;
  Registry registry_;
  std::vector<std::unique_ptr<MachineNode>> nodes_;
};

}  // namespace shardgraph
