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

#include "shardgraph/bus/broker.hpp"

#include <algorithm>
#include <iostream>

namespace shardgraph {

Broker::Broker(Address address, Options options) : address_(address), options_(options) {
  const size_t n = std::max<size_t>(1, options_.workers);
  workers_.reserve(n);
  for (size_t i = 0; i < n; ++i) workers_.emplace_back([this] { Run(); });
}

Broker::~Broker() { stop(); }

void Broker::stop() {
  {
    std::lock_guard lock(mu_);
    if (stopping_) return;
    stopping_ = true;
  }
  cv_.notify_all();
  for (auto& t : workers_) {
    if (t.joinable()) t.join();
  }
}

void Broker::register_handler(const std::string& name, Handler h) {
  std::lock_guard lock(handlers_mu_);
  handlers_[name] = std::move(h);
}

void Broker::subscribe(const std::string& topic, const std::string& handler_name) {
  std::lock_guard lock(handlers_mu_);
  if (!handlers_.contains(handler_name)) {
    throw Error(ErrorCode::kInvalidArgument, "no handler named '" + handler_name + "'");
  }
  auto& subs = subscriptions_[topic];
  if (std::find(subs.begin(), subs.end(), handler_name) == subs.end()) subs.push_back(handler_name);
}

bool Broker::FirstSighting(uint64_t msg_id) {
  std::lock_guard lock(seen_mu_);
  if (!seen_.insert(msg_id).second) return false;
  seen_order_.push_back(msg_id);
  if (seen_order_.size() > options_.dedup_window) {
    seen_.erase(seen_order_.front());
    seen_order_.pop_front();
  }
  return true;
}

void Broker::deliver(Envelope env, std::chrono::microseconds delay) {
  if (!enabled_) return;
  if (options_.dedup && !FirstSighting(env.msg_id)) {
    ++duplicates_;
    return;
  }
  {
    std::lock_guard lock(mu_);
    if (stopping_) return;
    queue_.push_back({std::move(env), std::chrono::steady_clock::now() + delay});
  }
  cv_.notify_one();
}

void Broker::Run() {
  for (;;) {
    Item item;
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      item = std::move(queue_.front());
      queue_.pop_front();
    }
    std::this_thread::sleep_until(item.ready_at);
    if (!enabled_) continue;

    std::vector<Handler> targets;
    {
      std::lock_guard lock(handlers_mu_);
      auto it = subscriptions_.find(item.env.topic);
      if (it != subscriptions_.end()) {
        for (const auto& name : it->second) targets.push_back(handlers_.at(name));
      }
    }
    if (targets.empty()) {
      ++unrouted_;
      continue;
    }
    for (const auto& h : targets) {
      try {
        h(item.env);
      } catch (const std::exception& e) {
        std::cerr << "handler for " << item.env.topic << " failed: " << e.what() << '\n';
      }
    }
    ++handled_;
  }
}

}  // namespace shardgraph
