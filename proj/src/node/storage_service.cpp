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

#include "shardgraph/node/storage_service.hpp"

#include <algorithm>

namespace shardgraph {

namespace {

ElementClass ReadClass(BinaryReader& r) {
  const uint8_t c = r.u8();
  if (c > 1) throw Error(ErrorCode::kProtocol, "bad element class");
  return static_cast<ElementClass>(c);
}

Direction ReadDirection(BinaryReader& r) {
  const uint8_t d = r.u8();
  if (d > 2) throw Error(ErrorCode::kProtocol, "bad direction");
  return static_cast<Direction>(d);
}

BatchFailure FailureOf(uint32_t index, const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return {index, err->code(), err->what()};
  return {index, ErrorCode::kInvalidArgument, e.what()};
}

}  // namespace

void StorageService::bind(Broker& broker) {
  broker.register_handler("storage", [this](const Envelope& env) { Reply(transport_, env, handle(env.payload)); });
  broker.subscribe(Topic::Machine(store_.machine().index, kStorageChannel).str(), "storage");
}

Bytes StorageService::handle(std::span<const uint8_t> request) {
  try {
    BinaryReader r(request);
    return OkReply(Dispatch(r));
  } catch (const Error& e) {
    return ErrorReply(e.code(), e.what());
  } catch (const std::exception& e) {
    return ErrorReply(ErrorCode::kInvalidArgument, e.what());
  }
}

Bytes StorageService::Dispatch(BinaryReader& r) {
  BinaryWriter w;
  const auto op = static_cast<StorageOp>(r.u8());
  switch (op) {
    case StorageOp::kPutVertex: {
      auto ref = r.ref();
      auto props = r.props();
      w.boolean(store_.put_vertex(ref, props));
      break;
    }
    case StorageOp::kAllocVertex: {
      w.ref(store_.allocate_vertex(r.props()));
      break;
    }
    case StorageOp::kPutVertexBatch: {
      const uint32_t n = r.u32();
      std::vector<BatchFailure> failures;
      for (uint32_t i = 0; i < n; ++i) {
        auto ref = r.ref();
        auto props = r.props();
        try {
          store_.put_vertex(ref, props);
        } catch (const std::exception& e) {
          failures.push_back(FailureOf(i, e));
        }
      }
      WriteFailures(w, failures);
      break;
    }
    case StorageOp::kPutEdgeHalf: {
      auto e = r.edge();
      auto role = static_cast<HalfRole>(r.u8());
      store_.put_edge_half(e, role, r.props());
      break;
    }
    case StorageOp::kPutEdgeBatch: {
      const uint32_t n = r.u32();
      std::vector<BatchFailure> failures;
      for (uint32_t i = 0; i < n; ++i) {
        auto e = r.edge();
        auto role = static_cast<HalfRole>(r.u8());
        auto props = r.props();
        try {
          store_.put_edge_half(e, role, props);
        } catch (const std::exception& ex) {
          failures.push_back(FailureOf(i, ex));
        }
      }
      WriteFailures(w, failures);
      break;
    }
    case StorageOp::kDropMirror:
      store_.drop_mirror(r.u64());
      break;
    case StorageOp::kNeighbors: {
      const VertexId id = r.u64();
      WriteNeighbors(w, store_.neighbors_local(id, ReadDirection(r)));
      break;
    }
    case StorageOp::kIntersect: {
      auto v = r.ref();
      auto ids = ReadIds(r);
      WriteRefs(w, store_.intersect_neighbors(v, ids));
      break;
    }
    case StorageOp::kJointLocal: {
      auto a = r.ref();
      auto b = r.ref();
      WriteRefs(w, store_.joint_neighbors_local(a, b));
      break;
    }
    case StorageOp::kIndexScan: {
      auto cls = ReadClass(r);
      auto key = r.str();
      auto pred = ReadPredicate(r);
      WriteIds(w, store_.index_scan(cls, key, pred));
      break;
    }
    case StorageOp::kGetProps: {
      auto cls = ReadClass(r);
      auto ids = ReadIds(r);
      std::vector<std::string> keys(r.u32());
      for (auto& k : keys) k = r.str();
      w.u32(static_cast<uint32_t>(ids.size()));
      for (auto id : ids) {
        for (const auto& k : keys) {
          auto v = store_.get_property(cls, id, k);
          w.boolean(v.has_value());
          if (v) w.value(*v);
        }
      }
      break;
    }
    case StorageOp::kSetProps: {
      auto cls = ReadClass(r);
      const uint32_t n = r.u32();
      std::vector<uint8_t> changed(n, 0);
      std::vector<BatchFailure> failures;
      for (uint32_t i = 0; i < n; ++i) {
        const ElementId id = r.u64();
        auto key = r.str();
        auto value = r.value();
        try {
          changed[i] = store_.set_property(cls, id, key, value) ? 1 : 0;
        } catch (const std::exception& e) {
          failures.push_back(FailureOf(i, e));
        }
      }
      w.bytes(changed);
      WriteFailures(w, failures);
      break;
    }
    case StorageOp::kScanAll: {
      auto cls = ReadClass(r);
      auto rows = store_.scan_all(cls, r.str());
      w.u32(static_cast<uint32_t>(rows.size()));
      for (const auto& [id, v] : rows) {
        w.u64(id);
        w.value(v);
      }
      break;
    }
    case StorageOp::kKeyTags: {
      auto cls = ReadClass(r);
      std::vector<std::pair<std::string, ValueTag>> tags;
      for (const auto& k : store_.keys(cls)) {
        if (auto t = store_.key_tag(cls, k)) tags.emplace_back(k, *t);
      }
      w.u32(static_cast<uint32_t>(tags.size()));
      for (const auto& [k, t] : tags) {
        w.str(k);
        w.u8(static_cast<uint8_t>(t));
      }
      break;
    }
    case StorageOp::kStats: {
      auto s = store_.stats();
      w.u64(s.vertices);
      w.u64(s.origin_halves);
      w.u64(s.mirror_halves);
      w.u64(s.vertex_tables);
      w.u64(s.edge_tables);
      break;
    }
    case StorageOp::kLocality: {
      auto c = store_.locality_counts();
      w.u32(c.machine.index);
      w.u64(c.origin_edges);
      w.u64(c.colocated_edges);
      w.u64(c.incidences);
      w.u64(c.local_incidences);
      break;
    }
    case StorageOp::kLocate:
      w.boolean(store_.has_vertex(r.u64()));
      break;
    case StorageOp::kLocalVertices:
      WriteRefs(w, store_.local_vertices());
      break;
    case StorageOp::kFlush:
      store_.flush();
      break;
    case StorageOp::kEdgeAudit: {
      WriteEdges(w, store_.origin_edges());
      WriteEdges(w, store_.mirror_edges());
      std::vector<EdgeId> attributed;
      for (const auto& k : store_.keys(ElementClass::kEdge)) {
        for (const auto& [id, v] : store_.scan_all(ElementClass::kEdge, k)) attributed.push_back(id);
      }
      std::sort(attributed.begin(), attributed.end());
      attributed.erase(std::unique(attributed.begin(), attributed.end()), attributed.end());
      WriteIds(w, attributed);
      break;
    }
    default:
      throw Error(ErrorCode::kProtocol, "unknown storage op " + std::to_string(static_cast<int>(op)));
  }
  if (!r.done()) throw Error(ErrorCode::kProtocol, "trailing bytes in storage request");
  return w.take();
}

std::future<Envelope> StorageClient::send(uint32_t machine, Bytes request) {
  return rpc_.request(Topic::Machine(machine, kStorageChannel), std::move(request));
}

Bytes StorageClient::await(std::future<Envelope>& f, uint32_t machine, StorageOp op) {
  auto env = AwaitReply(f, timeout_, std::string(StorageOpName(op)) + " on machine " + std::to_string(machine));
  OpenReply(env.payload);
  return Bytes(env.payload.begin() + 1, env.payload.end());
}

Bytes StorageClient::Call(uint32_t machine, Bytes request) {
  const auto op = static_cast<StorageOp>(request.at(0));
  auto f = send(machine, std::move(request));
  return await(f, machine, op);
}

std::vector<Bytes> StorageClient::scatter(const Bytes& request) {
  const auto op = static_cast<StorageOp>(request.at(0));
  const uint32_t k = cluster_size();
  std::vector<std::future<Envelope>> fs;
  fs.reserve(k);
  for (uint32_t m = 0; m < k; ++m) fs.push_back(send(m, request));
  std::vector<Bytes> out;
  out.reserve(k);
  for (uint32_t m = 0; m < k; ++m) out.push_back(await(fs[m], m, op));
  return out;
}

namespace {

BinaryWriter Begin(StorageOp op) {
  BinaryWriter w;
  w.u8(static_cast<uint8_t>(op));
  return w;
}

}  // namespace

bool StorageClient::put_vertex(const VertexRef& ref, const PropertyList& props) {
  auto w = Begin(StorageOp::kPutVertex);
  w.ref(ref);
  w.props(props);
  auto body = Call(ref.home().index, w.take());
  BinaryReader r(body);
  return r.boolean();
}

VertexRef StorageClient::alloc_vertex(uint32_t machine, const PropertyList& props) {
  auto w = Begin(StorageOp::kAllocVertex);
  w.props(props);
  auto body = Call(machine, w.take());
  BinaryReader r(body);
  return r.ref();
}

std::vector<BatchFailure> StorageClient::put_vertex_batch(uint32_t machine, const std::vector<VertexPut>& batch) {
  auto w = Begin(StorageOp::kPutVertexBatch);
  w.u32(static_cast<uint32_t>(batch.size()));
  for (const auto& v : batch) {
    w.ref(v.ref);
    w.props(v.props);
  }
  auto body = Call(machine, w.take());
  BinaryReader r(body);
  return ReadFailures(r);
}

void StorageClient::put_edge_half(uint32_t machine, const EdgeHalfPut& half) {
  auto w = Begin(StorageOp::kPutEdgeHalf);
  w.edge(half.edge);
  w.u8(static_cast<uint8_t>(half.role));
  w.props(half.props);
  Call(machine, w.take());
}

std::vector<BatchFailure> StorageClient::put_edge_batch(uint32_t machine, const std::vector<EdgeHalfPut>& batch) {
  auto w = Begin(StorageOp::kPutEdgeBatch);
  w.u32(static_cast<uint32_t>(batch.size()));
  for (const auto& h : batch) {
    w.edge(h.edge);
    w.u8(static_cast<uint8_t>(h.role));
    w.props(h.props);
  }
  auto body = Call(machine, w.take());
  BinaryReader r(body);
  return ReadFailures(r);
}

void StorageClient::drop_mirror(uint32_t machine, EdgeId id) {
  auto w = Begin(StorageOp::kDropMirror);
  w.u64(id);
  Call(machine, w.take());
}

std::vector<Neighbor> StorageClient::neighbors(const VertexRef& ref, Direction d) {
  auto w = Begin(StorageOp::kNeighbors);
  w.u64(ref.id());
  w.u8(static_cast<uint8_t>(d));
  auto body = Call(ref.home().index, w.take());
  BinaryReader r(body);
  return ReadNeighbors(r);
}

std::vector<VertexRef> StorageClient::intersect(const VertexRef& v, std::span<const VertexId> candidates) {
  auto w = Begin(StorageOp::kIntersect);
  w.ref(v);
  WriteIds(w, candidates);
  auto body = Call(v.home().index, w.take());
  BinaryReader r(body);
  return ReadRefs(r);
}

std::vector<VertexRef> StorageClient::joint_local(uint32_t machine, const VertexRef& a, const VertexRef& b) {
  auto w = Begin(StorageOp::kJointLocal);
  w.ref(a);
  w.ref(b);
  auto body = Call(machine, w.take());
  BinaryReader r(body);
  return ReadRefs(r);
}

Bytes StorageClient::EncodeIndexScan(ElementClass cls, const std::string& key, const Predicate& p) {
  auto w = Begin(StorageOp::kIndexScan);
  w.u8(static_cast<uint8_t>(cls));
  w.str(key);
  WritePredicate(w, p);
  return w.take();
}

Bytes StorageClient::EncodeSimple(StorageOp op) { return Begin(op).take(); }

Bytes StorageClient::EncodeLocate(VertexId id) {
  auto w = Begin(StorageOp::kLocate);
  w.u64(id);
  return w.take();
}

std::vector<ElementId> StorageClient::DecodeIds(const Bytes& body) {
  BinaryReader r(body);
  return ReadIds(r);
}

std::vector<ElementId> StorageClient::index_scan(uint32_t machine, ElementClass cls, const std::string& key,
                                                 const Predicate& p) {
  return DecodeIds(Call(machine, EncodeIndexScan(cls, key, p)));
}

std::vector<std::vector<std::optional<PropertyValue>>> StorageClient::get_props(uint32_t machine, ElementClass cls,
                                                                                std::span<const ElementId> ids,
                                                                                std::span<const std::string> keys) {
  auto w = Begin(StorageOp::kGetProps);
  w.u8(static_cast<uint8_t>(cls));
  WriteIds(w, ids);
  w.u32(static_cast<uint32_t>(keys.size()));
  for (const auto& k : keys) w.str(k);
  auto body = Call(machine, w.take());
  BinaryReader r(body);
  std::vector<std::vector<std::optional<PropertyValue>>> out(r.u32());
  for (auto& row : out) {
    row.resize(keys.size());
    for (auto& cell : row) {
      if (r.boolean()) cell = r.value();
    }
  }
  return out;
}

SetPropsResult StorageClient::set_props(uint32_t machine, ElementClass cls,
                                                                        const std::vector<PropertyWrite>& writes) {
  auto w = Begin(StorageOp::kSetProps);
  w.u8(static_cast<uint8_t>(cls));
  w.u32(static_cast<uint32_t>(writes.size()));
  for (const auto& x : writes) {
    w.u64(x.id);
    w.str(x.key);
    w.value(x.value);
  }
  auto body = Call(machine, w.take());
  BinaryReader r(body);
  SetPropsResult out;
  auto flags = r.bytes();
  out.changed.assign(flags.begin(), flags.end());
  out.failures = ReadFailures(r);
  return out;
}

std::vector<std::pair<ElementId, PropertyValue>> StorageClient::scan_all(uint32_t machine, ElementClass cls,
                                                                         const std::string& key) {
  auto w = Begin(StorageOp::kScanAll);
  w.u8(static_cast<uint8_t>(cls));
  w.str(key);
  auto body = Call(machine, w.take());
  BinaryReader r(body);
  std::vector<std::pair<ElementId, PropertyValue>> rows(r.u32());
  for (auto& [id, v] : rows) {
    id = r.u64();
    v = r.value();
  }
  return rows;
}

std::vector<std::pair<std::string, ValueTag>> StorageClient::DecodeKeyTags(const Bytes& body) {
  BinaryReader r(body);
  std::vector<std::pair<std::string, ValueTag>> tags(r.u32());
  for (auto& [k, t] : tags) {
    k = r.str();
    t = static_cast<ValueTag>(r.u8());
  }
  return tags;
}

std::vector<std::pair<std::string, ValueTag>> StorageClient::key_tags(uint32_t machine, ElementClass cls) {
  auto w = Begin(StorageOp::kKeyTags);
  w.u8(static_cast<uint8_t>(cls));
  return DecodeKeyTags(Call(machine, w.take()));
}

ShardStats StorageClient::DecodeStats(const Bytes& body) {
  BinaryReader r(body);
  ShardStats s;
  s.vertices = r.u64();
  s.origin_halves = r.u64();
  s.mirror_halves = r.u64();
  s.vertex_tables = r.u64();
  s.edge_tables = r.u64();
  return s;
}

ShardStats StorageClient::stats(uint32_t machine) { return DecodeStats(Call(machine, EncodeSimple(StorageOp::kStats))); }

LocalityCounts StorageClient::DecodeLocality(const Bytes& body) {
  BinaryReader r(body);
  LocalityCounts c;
  c.machine = MachineId{r.u32()};
  c.origin_edges = r.u64();
  c.colocated_edges = r.u64();
  c.incidences = r.u64();
  c.local_incidences = r.u64();
  return c;
}

LocalityCounts StorageClient::locality(uint32_t machine) {
  return DecodeLocality(Call(machine, EncodeSimple(StorageOp::kLocality)));
}

bool StorageClient::locate(uint32_t machine, VertexId id) {
  auto body = Call(machine, EncodeLocate(id));
  BinaryReader r(body);
  return r.boolean();
}

std::vector<VertexRef> StorageClient::local_vertices(uint32_t machine) {
  auto body = Call(machine, EncodeSimple(StorageOp::kLocalVertices));
  BinaryReader r(body);
  return ReadRefs(r);
}

void StorageClient::flush(uint32_t machine) { Call(machine, EncodeSimple(StorageOp::kFlush)); }

EdgeAudit StorageClient::DecodeEdgeAudit(const Bytes& body) {
  BinaryReader r(body);
  EdgeAudit a;
  a.origins = ReadEdges(r);
  a.mirrors = ReadEdges(r);
  a.attributed = ReadIds(r);
  return a;
}

EdgeAudit StorageClient::edge_audit(uint32_t machine) {
  return DecodeEdgeAudit(Call(machine, EncodeSimple(StorageOp::kEdgeAudit)));
}

}  // namespace shardgraph
