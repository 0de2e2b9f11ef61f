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

#include "shardgraph/store/shard_store.hpp"

#include <algorithm>
#include <unordered_set>

#include "shardgraph/core/codec.hpp"
#include "shardgraph/store/shard_log.hpp"

namespace shardgraph {

ShardStore::ShardStore(MachineId self, uint32_t cluster_size,
                       std::optional<std::filesystem::path> log_path)
    : self_(self), cluster_size_(cluster_size) {
  if (self.index >= cluster_size) {
    throw Error(ErrorCode::kOutOfRange, "shard index " + std::to_string(self.index) +
                                            " outside cluster of " + std::to_string(cluster_size));
  }
  if (log_path) {
    Replay(*log_path);
    log_ = std::make_unique<ShardLog>(*log_path);
  }
}

ShardStore::~ShardStore() {
  if (log_) log_->flush();
}

void ShardStore::flush() {
  if (log_) log_->flush();
}

void ShardStore::CheckHome(const VertexRef& ref, const char* what) const {
  if (ref.home() != self_) {
    throw Error(ErrorCode::kWrongHome, std::string(what) + " " + std::to_string(ref.id()) + " is homed on " +
                                           std::to_string(ref.home().index) + ", not on shard " +
                                           std::to_string(self_.index));
  }
}

uint32_t ShardStore::InternLabel(const std::string& label) {
  {
    std::shared_lock lock(labels_mu_);
    auto it = label_ids_.find(label);
    if (it != label_ids_.end()) return it->second;
  }
  std::unique_lock lock(labels_mu_);
  auto [it, inserted] = label_ids_.try_emplace(label, static_cast<uint32_t>(labels_.size()));
  if (inserted) labels_.push_back(label);
  return it->second;
}

std::string ShardStore::LabelOf(uint32_t id) const {
  std::shared_lock lock(labels_mu_);
  return labels_.at(id);
}

AttributeTable& ShardStore::TableFor(ElementClass cls, const std::string& key) {
  auto& set = tables_[static_cast<size_t>(cls)];
  {
    std::shared_lock lock(set.mu);
    auto it = set.tables.find(key);
    if (it != set.tables.end()) return *it->second;
  }
  std::unique_lock lock(set.mu);
  auto& slot = set.tables[key];
  if (!slot) slot = std::make_unique<AttributeTable>(key);
  return *slot;
}

const AttributeTable* ShardStore::FindTable(ElementClass cls, const std::string& key) const {
  const auto& set = tables_[static_cast<size_t>(cls)];
  std::shared_lock lock(set.mu);
  auto it = set.tables.find(key);
  return it == set.tables.end() ? nullptr : it->second.get();
}

const AttributeTable* ShardStore::table(ElementClass cls, const std::string& key) const {
  return FindTable(cls, key);
}

void ShardStore::WriteProps(ElementClass cls, ElementId id, const PropertyList& props) {
  // Reject the whole list before touching any table.
  for (const auto& [k, v] : props) {
    if (auto t = FindTable(cls, k); t != nullptr) {
      if (auto tag = t->tag(); tag && *tag != v.tag()) {
        throw Error(ErrorCode::kTagMismatch, "attribute '" + k + "' holds " + std::string(ValueTagName(*tag)) +
                                                 " values, got " + std::string(ValueTagName(v.tag())));
      }
    }
  }
  for (const auto& [k, v] : props) TableFor(cls, k).put(id, v);
}

bool ShardStore::ApplyPutVertex(const VertexRef& ref, const PropertyList& props) {
  bool created = false;
  {
    auto& stripe = StripeFor(ref.id());
    std::unique_lock lock(stripe.mu);
    auto& slot = stripe.slots[ref.id()];
    created = !slot.present;
    slot.present = true;
  }
  if ((ref.id() >> kLocalIdBits) == self_.index + 1) {
    const uint64_t next = (ref.id() & kLocalIdMask) + 1;
    uint64_t cur = next_local_id_.load();
    while (cur < next && !next_local_id_.compare_exchange_weak(cur, next)) {
    }
  }
  WriteProps(ElementClass::kVertex, ref.id(), props);
  return created;
}

bool ShardStore::put_vertex(const VertexRef& ref, const PropertyList& props) {
  CheckHome(ref, "vertex");
  const bool created = ApplyPutVertex(ref, props);
  if (log_) {
    BinaryWriter w;
    w.u8(static_cast<uint8_t>(LogRecordType::kPutVertex));
    w.ref(ref);
    w.props(props);
    log_->append(w.data());
  }
  return created;
}

VertexRef ShardStore::allocate_vertex(const PropertyList& props) {
  const auto ref = VertexRef::Unchecked(ComposeAllocatedId(self_, next_local_id_.fetch_add(1)), self_);
  put_vertex(ref, props);
  return ref;
}

void ShardStore::ApplyPutEdgeHalf(const EdgeRecord& e, HalfRole role, const PropertyList& props) {
  if (role == HalfRole::kOrigin) {
    CheckHome(e.src, "edge source");
    if (!has_vertex(e.src.id())) throw Error(ErrorCode::kUnknownVertex, "unknown source vertex " + std::to_string(e.src.id()));
    if (e.co_located() && !has_vertex(e.dst.id())) {
      throw Error(ErrorCode::kUnknownVertex, "unknown target vertex " + std::to_string(e.dst.id()));
    }
    bool inserted = false;
    {
      auto& es = EdgeStripeFor(e.id);
      std::unique_lock lock(es.mu);
      inserted = es.origins.try_emplace(e.id, e).second;
    }
    if (inserted) {
      const uint32_t label = InternLabel(e.label);
      {
        auto& stripe = StripeFor(e.src.id());
        std::unique_lock lock(stripe.mu);
        stripe.slots[e.src.id()].out.push_back({e.id, e.dst, label});
      }
      if (e.co_located()) {
        auto& stripe = StripeFor(e.dst.id());
        std::unique_lock lock(stripe.mu);
        stripe.slots[e.dst.id()].in.push_back({e.id, e.src, label});
      }
    }
    WriteProps(ElementClass::kEdge, e.id, props);
    return;
  }

  CheckHome(e.dst, "edge target");
  if (!props.empty()) {
    throw Error(ErrorCode::kMirrorWithProps,
                "mirror half of edge " + std::to_string(e.id) + " cannot carry attributes");
  }
  if (e.co_located()) {
    throw Error(ErrorCode::kInvalidArgument, "co-located edge " + std::to_string(e.id) + " has no mirror half");
  }
  if (!has_vertex(e.dst.id())) throw Error(ErrorCode::kUnknownVertex, "unknown target vertex " + std::to_string(e.dst.id()));
  bool inserted = false;
  {
    auto& es = EdgeStripeFor(e.id);
    std::unique_lock lock(es.mu);
    inserted = es.mirrors.try_emplace(e.id, e).second;
  }
  if (inserted) {
    const uint32_t label = InternLabel(e.label);
    auto& stripe = StripeFor(e.dst.id());
    std::unique_lock lock(stripe.mu);
    stripe.slots[e.dst.id()].in.push_back({e.id, e.src, label});
  }
}

void ShardStore::put_edge_half(const EdgeRecord& e, HalfRole role, const PropertyList& props) {
  ApplyPutEdgeHalf(e, role, props);
  if (log_) {
    BinaryWriter w;
    w.u8(static_cast<uint8_t>(LogRecordType::kPutEdgeHalf));
    w.edge(e);
    w.u8(static_cast<uint8_t>(role));
    w.props(props);
    log_->append(w.data());
  }
}

void ShardStore::ApplyDropMirror(EdgeId id) {
  std::optional<EdgeRecord> rec;
  {
    auto& es = EdgeStripeFor(id);
    std::unique_lock lock(es.mu);
    auto it = es.mirrors.find(id);
    if (it == es.mirrors.end()) return;
    rec = it->second;
    es.mirrors.erase(it);
  }
  auto& stripe = StripeFor(rec->dst.id());
  std::unique_lock lock(stripe.mu);
  auto& in = stripe.slots[rec->dst.id()].in;
  std::erase_if(in, [&](const AdjEntry& a) { return a.edge == id; });
}

void ShardStore::drop_mirror(EdgeId id) {
  ApplyDropMirror(id);
  if (log_) {
    BinaryWriter w;
    w.u8(static_cast<uint8_t>(LogRecordType::kDropMirror));
    w.u64(id);
    log_->append(w.data());
  }
}

bool ShardStore::has_vertex(VertexId id) const {
  const auto& stripe = StripeFor(id);
  std::shared_lock lock(stripe.mu);
  auto it = stripe.slots.find(id);
  return it != stripe.slots.end() && it->second.present;
}

std::vector<VertexRef> ShardStore::local_vertices() const {
  std::vector<VertexRef> out;
  for (const auto& stripe : stripes_) {
    std::shared_lock lock(stripe.mu);
    for (const auto& [id, slot] : stripe.slots) {
      if (slot.present) out.push_back(VertexRef::Unchecked(id, self_));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

size_t ShardStore::vertex_count() const {
  size_t n = 0;
  for (const auto& stripe : stripes_) {
    std::shared_lock lock(stripe.mu);
    for (const auto& [id, slot] : stripe.slots) n += slot.present ? 1 : 0;
  }
  return n;
}

std::vector<Neighbor> ShardStore::CollectNeighbors(VertexId id, const Slot& slot, Direction d) const {
  std::vector<Neighbor> out;
  out.reserve((d != Direction::kIn ? slot.out.size() : 0) + (d != Direction::kOut ? slot.in.size() : 0));
  if (d != Direction::kIn) {
    for (const auto& a : slot.out) out.push_back({a.edge, a.other, LabelOf(a.label), Direction::kOut});
  }
  if (d != Direction::kOut) {
    for (const auto& a : slot.in) {
      // kBoth dedups by edge id, which only ever collapses self-loops.
      if (d == Direction::kBoth && a.other.id() == id &&
          std::any_of(slot.out.begin(), slot.out.end(), [&](const AdjEntry& o) { return o.edge == a.edge; })) {
        continue;
      }
      out.push_back({a.edge, a.other, LabelOf(a.label), Direction::kIn});
    }
  }
  return out;
}

std::vector<Neighbor> ShardStore::neighbors_local(VertexId id, Direction d) const {
  const auto& stripe = StripeFor(id);
  std::shared_lock lock(stripe.mu);
  auto it = stripe.slots.find(id);
  if (it == stripe.slots.end() || !it->second.present) {
    throw Error(ErrorCode::kUnknownVertex, "vertex " + std::to_string(id) + " is not stored on shard " +
                                               std::to_string(self_.index));
  }
  return CollectNeighbors(id, it->second, d);
}

std::vector<Neighbor> ShardStore::neighbors_or_empty(VertexId id, Direction d) const {
  const auto& stripe = StripeFor(id);
  std::shared_lock lock(stripe.mu);
  auto it = stripe.slots.find(id);
  if (it == stripe.slots.end()) return {};
  return CollectNeighbors(id, it->second, d);
}

std::vector<ElementId> ShardStore::index_scan(ElementClass cls, const std::string& key, const Predicate& p) const {
  const auto* t = FindTable(cls, key);
  if (t == nullptr) return {};
  return t->scan(p);
}

namespace {
std::vector<VertexRef> SortedUnique(std::vector<VertexRef> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}
}  // namespace

std::vector<VertexRef> ShardStore::joint_neighbors_local(const VertexRef& a, const VertexRef& b) const {
  // c qualifies when both a-c and b-c are stored here, i.e. appear in the
  // slot of a local endpoint.
  auto neighbor_refs = [&](VertexId id) {
    std::vector<VertexRef> out;
    for (const auto& n : neighbors_or_empty(id, Direction::kBoth)) out.push_back(n.vertex);
    return SortedUnique(std::move(out));
  };
  auto local_adjacent = [&](VertexId c, VertexId x) {
    const auto& stripe = StripeFor(c);
    std::shared_lock lock(stripe.mu);
    auto it = stripe.slots.find(c);
    if (it == stripe.slots.end()) return false;
    auto hit = [&](const AdjEntry& e) { return e.other.id() == x; };
    return std::any_of(it->second.out.begin(), it->second.out.end(), hit) ||
           std::any_of(it->second.in.begin(), it->second.in.end(), hit);
  };

  const bool a_here = has_vertex(a.id());
  const bool b_here = has_vertex(b.id());
  std::vector<VertexRef> out;
  if (a_here && b_here) {
    auto na = neighbor_refs(a.id()), nb = neighbor_refs(b.id());
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(out));
  } else if (a_here || b_here) {
    const VertexRef& known = a_here ? a : b;
    const VertexRef& other = a_here ? b : a;
    for (const auto& c : neighbor_refs(known.id())) {
      if (c.home() == self_ && local_adjacent(c.id(), other.id())) out.push_back(c);
    }
  } else {
    // Neither endpoint is local: only local common neighbors can qualify.
    for (const auto& stripe : stripes_) {
      std::shared_lock lock(stripe.mu);
      for (const auto& [id, slot] : stripe.slots) {
        if (!slot.present) continue;
        bool sees_a = false, sees_b = false;
        for (const auto* list : {&slot.out, &slot.in}) {
          for (const auto& e : *list) {
            sees_a |= e.other.id() == a.id();
            sees_b |= e.other.id() == b.id();
          }
        }
        if (sees_a && sees_b) out.push_back(VertexRef::Unchecked(id, self_));
      }
    }
  }
  return SortedUnique(std::move(out));
}

std::vector<VertexRef> ShardStore::intersect_neighbors(const VertexRef& v, std::span<const VertexId> candidates) const {
  std::vector<VertexRef> out;
  for (const auto& n : neighbors_or_empty(v.id(), Direction::kBoth)) {
    if (std::binary_search(candidates.begin(), candidates.end(), n.vertex.id())) out.push_back(n.vertex);
  }
  return SortedUnique(std::move(out));
}

std::optional<PropertyValue> ShardStore::get_property(ElementClass cls, ElementId id, const std::string& key) const {
  const auto* t = FindTable(cls, key);
  if (t == nullptr) return std::nullopt;
  return t->get(id);
}

bool ShardStore::ApplySetProperty(ElementClass cls, ElementId id, const std::string& key, const PropertyValue& v) {
  if (cls == ElementClass::kVertex) {
    if (!has_vertex(id)) {
      throw Error(ErrorCode::kUnknownVertex, "vertex " + std::to_string(id) + " is not stored on shard " +
                                                 std::to_string(self_.index));
    }
  } else if (!has_origin(id)) {
    throw Error(ErrorCode::kWrongHome, "edge " + std::to_string(id) + " does not originate on shard " +
                                           std::to_string(self_.index));
  }
  return TableFor(cls, key).put(id, v);
}

bool ShardStore::set_property(ElementClass cls, ElementId id, const std::string& key, const PropertyValue& v) {
  const bool changed = ApplySetProperty(cls, id, key, v);
  if (changed && log_) {
    BinaryWriter w;
    w.u8(static_cast<uint8_t>(LogRecordType::kSetProperty));
    w.u8(static_cast<uint8_t>(cls));
    w.u64(id);
    w.str(key);
    w.value(v);
    log_->append(w.data());
  }
  return changed;
}

std::vector<std::pair<ElementId, PropertyValue>> ShardStore::scan_all(ElementClass cls, const std::string& key) const {
  std::vector<std::pair<ElementId, PropertyValue>> out;
  if (const auto* t = FindTable(cls, key)) {
    t->for_each([&](ElementId id, const PropertyValue& v) { out.emplace_back(id, v); });
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::optional<ValueTag> ShardStore::key_tag(ElementClass cls, const std::string& key) const {
  const auto* t = FindTable(cls, key);
  return t ? t->tag() : std::nullopt;
}

std::vector<std::string> ShardStore::keys(ElementClass cls) const {
  const auto& set = tables_[static_cast<size_t>(cls)];
  std::shared_lock lock(set.mu);
  std::vector<std::string> out;
  for (const auto& [k, t] : set.tables) out.push_back(k);
  return out;
}

bool ShardStore::has_origin(EdgeId id) const {
  const auto& es = EdgeStripeFor(id);
  std::shared_lock lock(es.mu);
  return es.origins.contains(id);
}

bool ShardStore::has_mirror(EdgeId id) const {
  const auto& es = EdgeStripeFor(id);
  std::shared_lock lock(es.mu);
  return es.mirrors.contains(id);
}

std::vector<EdgeRecord> ShardStore::origin_edges() const {
  std::vector<EdgeRecord> out;
  for (const auto& es : edge_stripes_) {
    std::shared_lock lock(es.mu);
    for (const auto& [id, e] : es.origins) out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

std::vector<EdgeRecord> ShardStore::mirror_edges() const {
  std::vector<EdgeRecord> out;
  for (const auto& es : edge_stripes_) {
    std::shared_lock lock(es.mu);
    for (const auto& [id, e] : es.mirrors) out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

ShardStats ShardStore::stats() const {
  ShardStats s;
  s.vertices = vertex_count();
  for (const auto& es : edge_stripes_) {
    std::shared_lock lock(es.mu);
    s.origin_halves += es.origins.size();
    s.mirror_halves += es.mirrors.size();
  }
  for (size_t c = 0; c < tables_.size(); ++c) {
    std::shared_lock lock(tables_[c].mu);
    (c == 0 ? s.vertex_tables : s.edge_tables) = tables_[c].tables.size();
  }
  return s;
}

LocalityCounts ShardStore::locality_counts() const {
  LocalityCounts lc;
  lc.machine = self_;
  for (const auto& es : edge_stripes_) {
    std::shared_lock lock(es.mu);
    for (const auto& [id, e] : es.origins) {
      ++lc.origin_edges;
      if (e.dst.home() == self_) ++lc.colocated_edges;
    }
  }
  for (const auto& stripe : stripes_) {
    std::shared_lock lock(stripe.mu);
    for (const auto& [id, slot] : stripe.slots) {
      if (!slot.present) continue;
      for (const auto& a : slot.out) {
        ++lc.incidences;
        if (a.other.home() == self_) ++lc.local_incidences;
      }
      for (const auto& a : slot.in) {
        ++lc.incidences;
        if (a.other.home() == self_) ++lc.local_incidences;
      }
    }
  }
  return lc;
}

void ShardStore::Replay(const std::filesystem::path& path) {
  ShardLog::ForEach(path, [&](std::span<const uint8_t> rec) {
    BinaryReader r(rec);
    switch (static_cast<LogRecordType>(r.u8())) {
      case LogRecordType::kPutVertex: {
        auto ref = r.ref();
        ApplyPutVertex(ref, r.props());
        break;
      }
      case LogRecordType::kPutEdgeHalf: {
        auto e = r.edge();
        auto role = static_cast<HalfRole>(r.u8());
        ApplyPutEdgeHalf(e, role, r.props());
        break;
      }
      case LogRecordType::kSetProperty: {
        auto cls = static_cast<ElementClass>(r.u8());
        auto id = r.u64();
        auto key = r.str();
        ApplySetProperty(cls, id, key, r.value());
        break;
      }
      case LogRecordType::kDropMirror: ApplyDropMirror(r.u64()); break;
      default: throw Error(ErrorCode::kIo, "corrupt shard log record in " + path.string());
    }
  });
}

}  // namespace shardgraph
