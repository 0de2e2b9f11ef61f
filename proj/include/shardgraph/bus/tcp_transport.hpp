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
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "shardgraph/bus/transport.hpp"

namespace shardgraph {

struct NodeAddress {
  uint32_t index = 0;
  std::string host;
  uint16_t port = 0;
};

// Static cluster membership: {"machines": [{"index": 0, "host": "...", "port": N}, ...]}.
struct Membership {
  std::vector<NodeAddress> nodes;  // sorted by index, dense from 0

  static Membership Parse(const std::string& json_text);
  static Membership Load(const std::filesystem::path& path);
  std::string ToJson() const;
  uint32_t size() const noexcept { return static_cast<uint32_t>(nodes.size()); }
};

// Frame layout: u32 big-endian length of the rest, u32 big-endian header
// length, UTF-8 JSON header {msgId, topic, correlationId, payloadEncoding,
// replyTo, replyAddr}, then the raw payload bytes.
Bytes EncodeFrame(const Envelope& env, const std::string& reply_addr);
// Decodes the part after the outer length. Returns the envelope and the
// replyAddr field (empty when absent).
std::pair<Envelope, std::string> DecodeFrame(std::span<const uint8_t> body);

// One listener per hosted machine plus one shared listener for this
// process's client inboxes. Client reply routes are learned from the
// replyAddr header of incoming requests, so membership lists machines only.
class TcpTransport final : public Transport {
 public:
  explicit TcpTransport(Membership membership, std::string advertise_host = "127.0.0.1");
  ~TcpTransport() override;

  void attach(Broker& broker) override;
  void detach(const Address& address) override;
  uint32_t new_client_index() override;

  // Closes the machine's listener and its connections, as if it died.
  void stop_machine(uint32_t machine);

  uint64_t send_failures() const noexcept { return send_failures_; }
  const Membership& membership() const noexcept { return membership_; }

 protected:
  void Route(const Topic& topic, Envelope env) override;

 private:
  struct Listener;
  struct Connection;

  std::unique_ptr<Listener> Listen(uint16_t port, int machine);
  void AcceptLoop(Listener* l);
  void ReadLoop(Listener* l, int fd);
  void OnFrame(Listener* l, Envelope env, const std::string& reply_addr);
  void SendTo(const std::string& host, uint16_t port, const Envelope& env);
  std::string ClientReplyAddr(const Envelope& env);

  Membership membership_;
  std::string advertise_host_;
  std::atomic<bool> stopping_{false};

  std::mutex mu_;
  std::map<uint32_t, std::unique_ptr<Listener>> machine_listeners_;
  std::unique_ptr<Listener> client_listener_;
  std::unordered_map<uint32_t, Broker*> machines_;
  std::unordered_map<uint32_t, Broker*> clients_;
  std::unordered_map<uint32_t, std::pair<std::string, uint16_t>> client_routes_;

  std::mutex conn_mu_;
  std::map<std::string, std::shared_ptr<Connection>> connections_;

  std::atomic<uint64_t> send_failures_{0};
};

}  // namespace shardgraph
