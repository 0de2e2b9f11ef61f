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
#include <condition_variable>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "shardgraph/bus/broker.hpp"
#include "shardgraph/bus/transport.hpp"

namespace shardgraph {

inline constexpr const char* kReplyChannel = "reply";

// Publishes a reply to req.reply_to echoing its correlation id. No-op when
// the request asked for no reply.
void Reply(Transport& t, const Envelope& req, Bytes payload, PayloadEncoding enc = PayloadEncoding::kBinary);

// Gathers replies that share one correlation id, keyed by the machine that
// sent them.
class ReplyCollector {
 public:
  using KeyFn = std::function<std::optional<uint32_t>(const Envelope&)>;

  explicit ReplyCollector(KeyFn key) : key_(std::move(key)) {}

  void push(const Envelope& env);

  // Waits until `expected` distinct senders replied or the deadline passes,
  // then returns what arrived.
  std::map<uint32_t, Envelope> wait(size_t expected, std::chrono::steady_clock::time_point deadline);

 private:
  KeyFn key_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::map<uint32_t, Envelope> replies_;
};

// Client endpoint: its own inbox broker plus request/reply correlation.
class RpcClient {
 public:
  explicit RpcClient(Transport& transport);
  ~RpcClient();

  RpcClient(const RpcClient&) = delete;
  RpcClient& operator=(const RpcClient&) = delete;

  Transport& transport() noexcept { return transport_; }
  const Topic& reply_topic() const noexcept { return reply_topic_; }

  std::future<Envelope> request(const Topic& to, Bytes payload, PayloadEncoding enc = PayloadEncoding::kBinary);
  // Blocking request; throws kTimeout.
  Envelope call(const Topic& to, Bytes payload, std::chrono::milliseconds timeout,
                PayloadEncoding enc = PayloadEncoding::kBinary);

  uint64_t next_correlation() noexcept { return ++correlation_; }
  std::shared_ptr<ReplyCollector> open_collector(uint64_t correlation, ReplyCollector::KeyFn key);
  void close_collector(uint64_t correlation);

 private:
  void OnReply(const Envelope& env);

  Transport& transport_;
  Topic reply_topic_;
  Broker inbox_;
  std::atomic<uint64_t> correlation_{0};

  std::mutex mu_;
  std::unordered_map<uint64_t, std::promise<Envelope>> pending_;
  std::unordered_map<uint64_t, std::shared_ptr<ReplyCollector>> collectors_;
};

// Waits on a reply future, throwing kTimeout.
Envelope AwaitReply(std::future<Envelope>& f, std::chrono::milliseconds timeout, const std::string& what);

}  // namespace shardgraph
