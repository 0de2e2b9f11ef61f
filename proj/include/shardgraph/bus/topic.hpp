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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "shardgraph/core/codec.hpp"

namespace shardgraph {

// machine/<i>/<channel> reaches one broker, cluster/<channel> reaches every
// broker, client/<j>/<channel> reaches a client inbox.
enum class TopicScope : uint8_t { kMachine = 0, kCluster = 1, kClient = 2 };

struct Address {
  TopicScope scope = TopicScope::kMachine;
  uint32_t index = 0;
  friend auto operator<=>(const Address&, const Address&) = default;
};

struct Topic {
  TopicScope scope = TopicScope::kMachine;
  uint32_t index = 0;  // unused for cluster scope
  std::string channel;

  static Topic Machine(uint32_t i, std::string channel) { return {TopicScope::kMachine, i, std::move(channel)}; }
  static Topic Cluster(std::string channel) { return {TopicScope::kCluster, 0, std::move(channel)}; }
  static Topic Client(uint32_t j, std::string channel) { return {TopicScope::kClient, j, std::move(channel)}; }

  // Throws kInvalidArgument on malformed input.
  static Topic Parse(std::string_view s);
  std::string str() const;

  friend bool operator==(const Topic&, const Topic&) = default;
};

enum class PayloadEncoding : uint8_t { kBinary = 0, kJson = 1 };

struct Envelope {
  uint64_t msg_id = 0;
  std::string topic;
  std::optional<uint64_t> correlation_id;
  std::string reply_to;
  PayloadEncoding encoding = PayloadEncoding::kBinary;
  Bytes payload;
};

}  // namespace shardgraph
