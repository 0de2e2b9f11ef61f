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

#include "shardgraph/node/storage_protocol.hpp"

namespace shardgraph {

std::string_view StorageOpName(StorageOp op) {
  switch (op) {
    case StorageOp::kPutVertex: return "put_vertex";
    case StorageOp::kAllocVertex: return "alloc_vertex";
    case StorageOp::kPutVertexBatch: return "put_vertex_batch";
    case StorageOp::kPutEdgeHalf: return "put_edge_half";
    case StorageOp::kPutEdgeBatch: return "put_edge_batch";
    case StorageOp::kDropMirror: return "drop_mirror";
    case StorageOp::kNeighbors: return "neighbors";
    case StorageOp::kIntersect: return "intersect";
    case StorageOp::kJointLocal: return "joint_local";
    case StorageOp::kIndexScan: return "index_scan";
    case StorageOp::kGetProps: return "get_props";
    case StorageOp::kSetProps: return "set_props";
    case StorageOp::kScanAll: return "scan_all";
    case StorageOp::kKeyTags: return "key_tags";
    case StorageOp::kStats: return "stats";
    case StorageOp::kLocality: return "locality";
    case StorageOp::kLocate: return "locate";
    case StorageOp::kLocalVertices: return "local_vertices";
    case StorageOp::kFlush: return "flush";
    case StorageOp::kEdgeAudit: return "edge_audit";
  }
  return "?";
}

Bytes OkReply(Bytes body) {
  body.insert(body.begin(), kStatusOk);
  return body;
}

Bytes ErrorReply(ErrorCode code, std::string_view message) {
  BinaryWriter w;
  w.u8(static_cast<uint8_t>(code));
  w.str(message);
  return w.take();
}

BinaryReader OpenReply(const Bytes& payload) {
  BinaryReader r(payload);
  const uint8_t status = r.u8();
  if (status != kStatusOk) throw Error(static_cast<ErrorCode>(status), r.str());
  return r;
}

void WritePredicate(BinaryWriter& w, const Predicate& p) {
  w.u8(static_cast<uint8_t>(p.op));
  w.value(p.value);
  if (p.op == CompareOp::kRange) w.value(p.upper);
}

Predicate ReadPredicate(BinaryReader& r) {
  const uint8_t op = r.u8();
  if (op > static_cast<uint8_t>(CompareOp::kRange)) throw Error(ErrorCode::kProtocol, "bad compare op");
  Predicate p;
  p.op = static_cast<CompareOp>(op);
  p.value = r.value();
  if (p.op == CompareOp::kRange) p.upper = r.value();
  return p;
}

void WriteNeighbors(BinaryWriter& w, const std::vector<Neighbor>& ns) {
  w.u32(static_cast<uint32_t>(ns.size()));
  for (const auto& n : ns) {
    w.u64(n.edge);
    w.ref(n.vertex);
    w.str(n.label);
    w.u8(static_cast<uint8_t>(n.direction));
  }
}

std::vector<Neighbor> ReadNeighbors(BinaryReader& r) {
  std::vector<Neighbor> ns(r.u32());
  for (auto& n : ns) {
    n.edge = r.u64();
    n.vertex = r.ref();
    n.label = r.str();
    n.direction = static_cast<Direction>(r.u8());
  }
  return ns;
}

void WriteRefs(BinaryWriter& w, const std::vector<VertexRef>& refs) {
  w.u32(static_cast<uint32_t>(refs.size()));
  for (const auto& x : refs) w.ref(x);
}

std::vector<VertexRef> ReadRefs(BinaryReader& r) {
  std::vector<VertexRef> refs;
  const uint32_t n = r.u32();
  refs.reserve(n);
  for (uint32_t i = 0; i < n; ++i) refs.push_back(r.ref());
  return refs;
}

void WriteIds(BinaryWriter& w, std::span<const uint64_t> ids) {
  w.u32(static_cast<uint32_t>(ids.size()));
  for (auto id : ids) w.u64(id);
}

std::vector<uint64_t> ReadIds(BinaryReader& r) {
  std::vector<uint64_t> ids(r.u32());
  for (auto& id : ids) id = r.u64();
  return ids;
}

void WriteFailures(BinaryWriter& w, const std::vector<BatchFailure>& f) {
  w.u32(static_cast<uint32_t>(f.size()));
  for (const auto& x : f) {
    w.u32(x.index);
    w.u8(static_cast<uint8_t>(x.code));
    w.str(x.message);
  }
}

std::vector<BatchFailure> ReadFailures(BinaryReader& r) {
  std::vector<BatchFailure> f(r.u32());
  for (auto& x : f) {
    x.index = r.u32();
    x.code = static_cast<ErrorCode>(r.u8());
    x.message = r.str();
  }
  return f;
}

void WriteEdges(BinaryWriter& w, const std::vector<EdgeRecord>& edges) {
  w.u32(static_cast<uint32_t>(edges.size()));
  for (const auto& e : edges) w.edge(e);
}

std::vector<EdgeRecord> ReadEdges(BinaryReader& r) {
  std::vector<EdgeRecord> edges;
  const uint32_t n = r.u32();
  edges.reserve(n);
  for (uint32_t i = 0; i < n; ++i) edges.push_back(r.edge());
  return edges;
}

}  // namespace shardgraph
