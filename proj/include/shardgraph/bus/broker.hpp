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
#include <condition_variable>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "shardgraph/bus/topic.hpp"

namespace shardgraph {

using Handler = std::function<void(const Envelope&)>;

// One message broker per endpoint (machine or client inbox). Envelopes are
// deduplicated by msg_id, so at-least-once delivery yields exactly-once
// handler invocation, then dispatched to the handlers subscribed to their
// topic on a pool of worker threads. Different envelopes may be handled
// concurrently, so handlers must be re-entrant.
class Broker {
 public:
  struct Options {
    size_t workers = 1;
    size_t dedup_window = size_t{1} << 20;
    bool dedup = true;
  };

  Broker(Address address, Options options);
  ~Broker();

  Broker(const Broker&) = delete;
  Broker& operator=(const Broker&) = delete;

  const Address& address() const noexcept { return address_; }

  void register_handler(const std::string& name, Handler h);
  // Throws kInvalidArgument for an unregistered handler; repeating a
  // subscription is a no-op. No replay of earlier envelopes.
  void subscribe(const std::string& topic, const std::string& handler_name);

  // Called by transports. Never blocks on handler execution.
  void deliver(Envelope env, std::chrono::microseconds delay = {});

  // A disabled broker silently drops everything addressed to it.
  void set_enabled(bool on) noexcept { enabled_ = on; }
  bool enabled() const noexcept { return enabled_; }

  uint64_t handled() const noexcept { return handled_; }
  uint64_t duplicates_dropped() const noexcept { return duplicates_; }
  uint64_t unrouted() const noexcept { return unrouted_; }

  void stop();

 private:
  struct Item {
    Envelope env;
    std::chrono::steady_clock::time_point ready_at;
  };

  bool FirstSighting(uint64_t msg_id);
  void Run();

  Address address_;
  Options options_;
  std::atomic<bool> enabled_{true};

  std::mutex handlers_mu_;
  std::unordered_map<std::string, Handler> handlers_;
  std::map<std::string, std::vector<std::string>> subscriptions_;

  std::mutex seen_mu_;
  std::unordered_set<uint64_t> seen_;
  std::deque<uint64_t> seen_order_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Item> queue_;
  bool stopping_ = false;
  std::vector<std::thread> workers_;

  std::atomic<uint64_t> handled_{0};
  std::atomic<uint64_t> duplicates_{0};
  std::atomic<uint64_t> unrouted_{0};
};

}  // namespace shardgraph
