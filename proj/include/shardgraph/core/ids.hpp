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
#include <functional>
#include <string>

#include "shardgraph/error.hpp"

namespace shardgraph {

using VertexId = uint64_t;
using EdgeId = uint64_t;
using ElementId = uint64_t;

// Dense machine index in [0, clusterSize).
struct MachineId {
  uint32_t index = 0;

  constexpr MachineId() = default;
  constexpr explicit MachineId(uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(MachineId, MachineId) = default;
};

enum class Direction : uint8_t { kOut = 0, kIn = 1, kBoth = 2 };

enum class ElementClass : uint8_t { kVertex = 0, kEdge = 1 };

std::string_view DirectionName(Direction d);
Direction ParseDirection(std::string_view s);

// A vertex identity that carries its home machine, so resolving where a
// vertex lives never needs a lookup.
class VertexRef {
 public:
  constexpr VertexRef() = default;

  VertexId id() const noexcept { return id_; }
  MachineId home() const noexcept { return home_; }

  friend bool operator==(const VertexRef& a, const VertexRef& b) noexcept {
    return a.id_ == b.id_;
  }
  friend auto operator<=>(const VertexRef& a, const VertexRef& b) noexcept {
    return a.id_ <=> b.id_;
  }

  // Unchecked; used by decoders that validate separately.
  static constexpr VertexRef Unchecked(VertexId id, MachineId home) {
    VertexRef r;
    r.id_ = id;
    r.home_ = home;
    return r;
  }

 private:
  VertexId id_ = 0;
  MachineId home_{};
};

/// Builds a ref, rejecting homes outside the cluster.
VertexRef MakeVertexRef(VertexId id, MachineId home, uint32_t cluster_size);

/// Pure: reads the home out of the ref. Never touches the network.
inline MachineId HomeMachine(const VertexRef& ref) noexcept { return ref.home(); }

// Auto-allocated ids: (home.index + 1) in the high 16 bits, a shard-local
// counter in the low 48. Caller-supplied ids must stay below 2^48.
inline constexpr int kLocalIdBits = 48;
inline constexpr uint64_t kLocalIdMask = (uint64_t{1} << kLocalIdBits) - 1;
inline constexpr uint64_t kMaxExternalId = kLocalIdMask;

inline constexpr VertexId ComposeAllocatedId(MachineId home, uint64_t counter) {
  return (static_cast<uint64_t>(home.index + 1) << kLocalIdBits) | (counter & kLocalIdMask);
}

struct EdgeRecord {
  EdgeId id = 0;
  VertexRef src;
  VertexRef dst;
  std::string label;

  bool co_located() const noexcept { return src.home() == dst.home(); }
  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

}  // namespace shardgraph

template <>
struct std::hash<shardgraph::MachineId> {
  size_t operator()(shardgraph::MachineId m) const noexcept {
    return std::hash<uint32_t>{}(m.index);
  }
};

template <>
struct std::hash<shardgraph::VertexRef> {
  size_t operator()(const shardgraph::VertexRef& r) const noexcept {
    return std::hash<uint64_t>{}(r.id());
  }
};
