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
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "shardgraph/bus/broker.hpp"
#include "shardgraph/bus/topic.hpp"

namespace shardgraph {

// Moves envelopes between brokers. There is no coordinator: every broker
// is attached as a peer, and routing of machine/<i> topics is computed
// from the topic alone.
class Transport {
 public:
  explicit Transport(uint32_t cluster_size);
  virtual ~Transport() = default;

  Transport(const Transport&) = delete;
  Transport& operator=(const Transport&) = delete;

  uint32_t cluster_size() const noexcept { return cluster_size_; }

  // Returns once the envelope is queued at the owning broker(s), not after
  // it is handled. Throws kOutOfRange for a machine outside the cluster.
  uint64_t publish(const Topic& topic, Bytes payload, PayloadEncoding encoding = PayloadEncoding::kBinary,
                   std::optional<uint64_t> correlation_id = std::nullopt, std::string reply_to = {});

  // Sends an already-built envelope again, msg id unchanged.
  void republish(const Envelope& env);

  virtual void attach(Broker& broker) = 0;
  virtual void detach(const Address& address) = 0;
  virtual uint32_t new_client_index() = 0;

  // Publish calls per channel name (the last topic segment).
  uint64_t published(const std::string& channel) const;
  uint64_t published_total() const noexcept { return total_; }

 protected:
  virtual void Route(const Topic& topic, Envelope env) = 0;

 private:
  uint32_t cluster_size_;
  const uint64_t nonce_;
  std::atomic<uint64_t> seq_{0};
  std::atomic<uint64_t> total_{0};
  mutable std::mutex counters_mu_;
  std::unordered_map<std::string, uint64_t> counters_;
};

struct InProcOptions {
  // Chance that any single delivery is repeated (same msg id).
  double duplicate_probability = 0.0;
  std::chrono::microseconds delay{0};
  uint64_t seed = 1;
};

// Deterministic in-memory transport for tests and desk-scale benchmarks.
class InProcTransport final : public Transport {
 public:
  InProcTransport(uint32_t cluster_size, InProcOptions options = {});

  void attach(Broker& broker) override;
  void detach(const Address& address) override;
  uint32_t new_client_index() override { return next_client_++; }

  // A disabled machine drops everything sent to it.
  void set_machine_enabled(uint32_t machine, bool on);

  uint64_t duplicates_injected() const noexcept { return duplicates_; }
  const InProcOptions& options() const noexcept { return options_; }

 protected:
  void Route(const Topic& topic, Envelope env) override;

 private:
  void DeliverTo(Broker* b, const Envelope& env);

  InProcOptions options_;
  std::shared_mutex mu_;
  std::vector<Broker*> machines_;
  std::unordered_map<uint32_t, Broker*> clients_;
  std::atomic<uint32_t> next_client_{0};

  std::mutex rng_mu_;
  std::mt19937_64 rng_;
  std::atomic<uint64_t> duplicates_{0};
};

}  // namespace shardgraph
