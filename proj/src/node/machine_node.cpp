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

#include "shardgraph/node/machine_node.hpp"

#include "shardgraph/analytics/analytics.hpp"

namespace shardgraph {

namespace {

std::optional<std::filesystem::path> LogPath(const NodeOptions& o, MachineId id) {
  if (!o.data_dir) return std::nullopt;
  return *o.data_dir / ("shard-" + std::to_string(id.index) + ".log");
}

}  // namespace

MachineNode::MachineNode(MachineId id, Transport& transport, const Registry& registry, const NodeOptions& options)
    : transport_(transport),
      store_(id, transport.cluster_size(), LogPath(options, id)),
      rpc_(transport),
      remote_(rpc_, options.rpc_timeout),
      storage_(store_, transport),
      broker_(Address{TopicScope::kMachine, id.index}, Broker::Options{options.handler_workers}),
      jobs_(store_, transport, remote_, registry, options.threads) {
  storage_.bind(broker_);
  jobs_.bind(broker_);
  transport_.attach(broker_);
}

MachineNode::~MachineNode() { shutdown(); }

void MachineNode::shutdown() {
  if (down_) return;
  down_ = true;
  transport_.detach(broker_.address());
  jobs_.stop();
  broker_.stop();
  store_.flush();
}

LocalCluster::LocalCluster(LocalClusterOptions options) : options_(std::move(options)) {
  if (options_.machines == 0) throw Error(ErrorCode::kInvalidArgument, "a cluster needs at least one machine");
  transport_ = std::make_unique<InProcTransport>(options_.machines, options_.bus);
  registry_ = (options_.registry ? *options_.registry : BuiltinRegistry()).restricted_to(options_.manifest);
  for (uint32_t i = 0; i < options_.machines; ++i) {
    nodes_.push_back(std::make_unique<MachineNode>(MachineId{i}, *transport_, registry_, options_.node));
  }
}

LocalCluster::~LocalCluster() {
  for (auto& n : nodes_) n->shutdown();
  nodes_.clear();
}

}  // namespace shardgraph
