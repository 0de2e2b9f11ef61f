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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shardgraph/core/codec.hpp"
#include "shardgraph/error.hpp"
#include "shardgraph/store/predicate.hpp"
#include "shardgraph/store/shard_store.hpp"

namespace shardgraph {

inline constexpr const char* kStorageChannel = "storage";

// First byte of every storage request on machine/<i>/storage.
enum class StorageOp : uint8_t {
  kPutVertex = 1,
  kAllocVertex = 2,
  kPutVertexBatch = 3,
  kPutEdgeHalf = 4,
  kPutEdgeBatch = 5,
  kDropMirror = 6,
  kNeighbors = 7,
  kIntersect = 8,
  kJointLocal = 9,
  kIndexScan = 10,
  kGetProps = 11,
  kSetProps = 12,
  kScanAll = 13,
  kKeyTags = 14,
  kStats = 15,
  kLocality = 16,
  kLocate = 17,
  kLocalVertices = 18,
  kFlush = 19,
  kEdgeAudit = 20,
};

std::string_view StorageOpName(StorageOp op);

// One entry of a batch that the shard refused.
struct BatchFailure {
  uint32_t index = 0;
  ErrorCode code = ErrorCode::kInvalidArgument;
  std::string message;
};

struct VertexPut {
  VertexRef ref;
  PropertyList props;
};

struct EdgeHalfPut {
  EdgeRecord edge;
  HalfRole role = HalfRole::kOrigin;
  PropertyList props;
};

struct PropertyWrite {
  ElementId id = 0;
  std::string key;
  PropertyValue value;
};

// Which edges a shard stores and which carry attributes there.
struct EdgeAudit {
  std::vector<EdgeRecord> origins;
  std::vector<EdgeRecord> mirrors;
  std::vector<EdgeId> attributed;  // sorted, unique
};

// Replies start with a status byte: 0 then the body, or an ErrorCode then
// a message string.
inline constexpr uint8_t kStatusOk = 0;

Bytes OkReply(Bytes body);
Bytes ErrorReply(ErrorCode code, std::string_view message);
// Throws the carried Error when the status is not ok; returns the body.
BinaryReader OpenReply(const Bytes& payload);

void WritePredicate(BinaryWriter& w, const Predicate& p);
Predicate ReadPredicate(BinaryReader& r);

void WriteNeighbors(BinaryWriter& w, const std::vector<Neighbor>& ns);
std::vector<Neighbor> ReadNeighbors(BinaryReader& r);

void WriteRefs(BinaryWriter& w, const std::vector<VertexRef>& refs);
std::vector<VertexRef> ReadRefs(BinaryReader& r);

void WriteIds(BinaryWriter& w, std::span<const uint64_t> ids);
std::vector<uint64_t> ReadIds(BinaryReader& r);

void WriteFailures(BinaryWriter& w, const std::vector<BatchFailure>& f);
std::vector<BatchFailure> ReadFailures(BinaryReader& r);

void WriteEdges(BinaryWriter& w, const std::vector<EdgeRecord>& edges);
std::vector<EdgeRecord> ReadEdges(BinaryReader& r);

}  // namespace shardgraph
