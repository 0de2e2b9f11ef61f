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

#include "shardgraph/bus/transport.hpp"

namespace shardgraph {

namespace {
uint64_t MakeNonce() {
  std::random_device rd;
  return (static_cast<uint64_t>(rd()) & 0xFFFFFF) << 40;
}
}  // namespace

Transport::Transport(uint32_t cluster_size) : cluster_size_(cluster_size), nonce_(MakeNonce()) {
  if (cluster_size == 0) throw Error(ErrorCode::kInvalidArgument, "cluster needs at least one machine");
}

uint64_t Transport::publish(const Topic& topic, Bytes payload, PayloadEncoding encoding,
                            std::optional<uint64_t> correlation_id, std::string reply_to) {
  if (topic.scope == TopicScope::kMachine && topic.index >= cluster_size_) {
    throw Error(ErrorCode::kOutOfRange, "topic " + topic.str() + " names a machine outside cluster of " +
                                            std::to_string(cluster_size_));
  }
  Envelope env;
  env.msg_id = nonce_ | (++seq_ & ((uint64_t{1} << 40) - 1));
  env.topic = topic.str();
  env.correlation_id = correlation_id;
  env.reply_to = std::move(reply_to);
  env.encoding = encoding;
  env.payload = std::move(payload);
  const uint64_t id = env.msg_id;
  ++total_;
  {
    std::lock_guard lock(counters_mu_);
    ++counters_[topic.channel];
  }
  Route(topic, std::move(env));
  return id;
}

void Transport::republish(const Envelope& env) { Route(Topic::Parse(env.topic), env); }

uint64_t Transport::published(const std::string& channel) const {
  std::lock_guard lock(counters_mu_);
  auto it = counters_.find(channel);
  return it == counters_.end() ? 0 : it->second;
}

InProcTransport::InProcTransport(uint32_t cluster_size, InProcOptions options)
    : Transport(cluster_size), options_(options), machines_(cluster_size, nullptr), rng_(options.seed) {}

void InProcTransport::attach(Broker& broker) {
  std::unique_lock lock(mu_);
  const auto& a = broker.address();
  if (a.scope == TopicScope::kMachine) {
    if (a.index >= machines_.size()) throw Error(ErrorCode::kOutOfRange, "machine index outside cluster");
    machines_[a.index] = &broker;
  } else {
    clients_[a.index] = &broker;
  }
}

void InProcTransport::detach(const Address& a) {
  std::unique_lock lock(mu_);
  if (a.scope == TopicScope::kMachine) {
    if (a.index < machines_.size()) machines_[a.index] = nullptr;
  } else {
    clients_.erase(a.index);
  }
}

void InProcTransport::set_machine_enabled(uint32_t machine, bool on) {
  std::shared_lock lock(mu_);
  if (machine < machines_.size() && machines_[machine] != nullptr) machines_[machine]->set_enabled(on);
}

void InProcTransport::DeliverTo(Broker* b, const Envelope& env) {
  if (b == nullptr) return;
  bool dup = false;
  if (options_.duplicate_probability > 0) {
    std::lock_guard lock(rng_mu_);
    dup = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < options_.duplicate_probability;
  }
  b->deliver(env, options_.delay);
  if (dup) {
    ++duplicates_;
    b->deliver(env, options_.delay);
  }
}

void InProcTransport::Route(const Topic& topic, Envelope env) {
  std::shared_lock lock(mu_);
  switch (topic.scope) {
    case TopicScope::kMachine: DeliverTo(machines_.at(topic.index), env); break;
    case TopicScope::kCluster:
      for (auto* b : machines_) DeliverTo(b, env);
      break;
    case TopicScope::kClient: {
      auto it = clients_.find(topic.index);
      if (it != clients_.end()) DeliverTo(it->second, env);
      break;
    }
  }
}

}  // namespace shardgraph
