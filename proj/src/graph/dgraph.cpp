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

#include "shardgraph/graph/dgraph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "shardgraph/bus/thread_pool.hpp"
#include "shardgraph/core/hash.hpp"

namespace shardgraph {

DGraph::DGraph(Transport& transport, Manifest manifest, DGraphOptions options)
    : transport_(transport),
      options_(options),
      rpc_(transport),
      storage_(rpc_, options.timeout),
      jobs_(rpc_, std::move(manifest), options.timeout) {}

VertexRef DGraph::add_vertex(const PropertyList& props, const PlacementPolicy& policy) {
  const uint64_t key = HashId(vertex_seq_.fetch_add(1), options_.id_seed);
  const MachineId home = Assign(key, props, policy, cluster_size());
  return storage_.alloc_vertex(home.index, props);
}

VertexRef DGraph::add_vertex(VertexId id, const PropertyList& props, const PlacementPolicy& policy) {
  if (id > kMaxExternalId) throw Error(ErrorCode::kOutOfRange, "caller-supplied vertex ids must be below 2^48");
  const MachineId home = Assign(id, props, policy, cluster_size());
  const auto ref = MakeVertexRef(id, home, cluster_size());
  storage_.put_vertex(ref, props);
  return ref;
}

EdgeId DGraph::add_edge(const VertexRef& src, const VertexRef& dst, const std::string& label,
                        const PropertyList& props, std::optional<EdgeId> id) {
  EdgeRecord e;
  e.id = id ? *id : (uint64_t{rpc_.reply_topic().index + 1} << 40) | edge_seq_.fetch_add(1);
  e.src = src;
  e.dst = dst;
  e.label = label;
  if (e.co_located()) {
    storage_.put_edge_half(src.home().index, {e, HalfRole::kOrigin, props});
    return e.id;
  }
  storage_.put_edge_half(dst.home().index, {e, HalfRole::kMirror, {}});
  try {
    storage_.put_edge_half(src.home().index, {e, HalfRole::kOrigin, props});
  } catch (const Error&) {
    try {
      storage_.drop_mirror(dst.home().index, e.id);
    } catch (const Error&) {
      // the original error is the one worth reporting
    }
    throw;
  }
  return e.id;
}

std::vector<Neighbor> DGraph::get_neighbors(const VertexRef& ref, Direction d) { return storage_.neighbors(ref, d); }

std::vector<VertexRef> DGraph::query_by_attribute(const std::string& key, const Predicate& p) {
  auto bodies = storage_.scatter(StorageClient::EncodeIndexScan(ElementClass::kVertex, key, p));
  std::vector<VertexRef> out;
  for (uint32_t m = 0; m < bodies.size(); ++m) {
    for (auto id : StorageClient::DecodeIds(bodies[m])) out.push_back(VertexRef::Unchecked(id, MachineId{m}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexRef> DGraph::joint_neighbors(const VertexRef& a, const VertexRef& b) {
  if (a.home() == b.home()) return storage_.joint_local(a.home().index, a, b);
  std::vector<VertexId> ids;
  for (const auto& n : storage_.neighbors(a, Direction::kBoth)) ids.push_back(n.vertex.id());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return storage_.intersect(b, ids);
}

std::optional<VertexRef> DGraph::locate(VertexId id) {
  auto bodies = storage_.scatter(StorageClient::EncodeLocate(id));
  for (uint32_t m = 0; m < bodies.size(); ++m) {
    BinaryReader r(bodies[m]);
    if (r.boolean()) return VertexRef::Unchecked(id, MachineId{m});
  }
  return std::nullopt;
}

LocalityReport DGraph::locality_report() {
  std::vector<LocalityCounts> counts;
  for (const auto& b : storage_.scatter(StorageClient::EncodeSimple(StorageOp::kLocality))) {
    counts.push_back(StorageClient::DecodeLocality(b));
  }
  return BuildLocalityReport(counts);
}

std::vector<ShardStats> DGraph::shard_stats() {
  std::vector<ShardStats> out;
  for (const auto& b : storage_.scatter(StorageClient::EncodeSimple(StorageOp::kStats))) {
    out.push_back(StorageClient::DecodeStats(b));
  }
  return out;
}

std::vector<VertexRef> DGraph::all_vertices() {
  std::vector<VertexRef> out;
  for (const auto& b : storage_.scatter(StorageClient::EncodeSimple(StorageOp::kLocalVertices))) {
    BinaryReader r(b);
    auto refs = ReadRefs(r);
    out.insert(out.end(), refs.begin(), refs.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class Item>
void DGraph::SendBatches(std::vector<std::vector<Item>>& per_machine,
                         const std::function<std::vector<BatchFailure>(uint32_t, const std::vector<Item>&)>& send,
                         const std::function<IngestFailure(const Item&, const BatchFailure&)>& fail,
                         IngestResult& result) {
  struct Batch {
    uint32_t machine;
    std::vector<Item> items;
  };
  std::vector<Batch> batches;
  const size_t size = std::max<size_t>(1, options_.batch_size);
  for (uint32_t m = 0; m < per_machine.size(); ++m) {
    auto& items = per_machine[m];
    for (size_t i = 0; i < items.size(); i += size) {
      Batch b{m, {}};
      const size_t end = std::min(items.size(), i + size);
      b.items.assign(std::make_move_iterator(items.begin() + static_cast<std::ptrdiff_t>(i)),
                     std::make_move_iterator(items.begin() + static_cast<std::ptrdiff_t>(end)));
      batches.push_back(std::move(b));
    }
  }
  // Interleave machines so concurrent senders spread over the shards.
  std::vector<size_t> order;
  {
    std::vector<std::vector<size_t>> by_machine(per_machine.size());
    for (size_t i = 0; i < batches.size(); ++i) by_machine[batches[i].machine].push_back(i);
    for (size_t round = 0; order.size() < batches.size(); ++round) {
      for (auto& q : by_machine)
        if (round < q.size()) order.push_back(q[round]);
    }
  }

  std::mutex mu;
  const size_t senders = options_.senders == 0 ? per_machine.size() : options_.senders;
  ThreadPool pool(std::min(senders, std::max<size_t>(1, batches.size())));
  pool.parallel_for(order.size(), [&](size_t i) {
    const auto& b = batches[order[i]];
    std::vector<IngestFailure> local;
    try {
      for (const auto& f : send(b.machine, b.items)) local.push_back(fail(b.items.at(f.index), f));
    } catch (const Error& e) {
      for (const auto& item : b.items) local.push_back(fail(item, BatchFailure{0, e.code(), e.what()}));
    }
    std::lock_guard lock(mu);
    for (auto& f : local) result.failures.push_back(std::move(f));
  });
}

IngestResult DGraph::ingest_vertices(std::span<const IngestVertex> vertices, const PlacementPolicy& policy,
                                     std::vector<VertexRef>* refs) {
  const uint32_t k = cluster_size();
  std::vector<VertexPut> placed;
  placed.reserve(vertices.size());
  if (refs) refs->clear();
  for (const auto& v : vertices) {
    if (v.id > kMaxExternalId) throw Error(ErrorCode::kOutOfRange, "caller-supplied vertex ids must be below 2^48");
    const auto ref = MakeVertexRef(v.id, Assign(v.id, v.props, policy, k), k);
    if (refs) refs->push_back(ref);
    placed.push_back({ref, v.props});
  }
  return ingest_placed(std::move(placed));
}

IngestResult DGraph::ingest_placed(std::vector<VertexPut> vertices) {
  const auto start = std::chrono::steady_clock::now();
  const uint32_t k = cluster_size();
  IngestResult result;
  std::vector<std::vector<VertexPut>> per_machine(k);
  for (auto& v : vertices) {
    if (v.ref.home().index >= k) throw Error(ErrorCode::kOutOfRange, "vertex placed outside the cluster");
    per_machine[v.ref.home().index].push_back(std::move(v));
  }
  SendBatches<VertexPut>(
      per_machine, [&](uint32_t m, const std::vector<VertexPut>& b) { return storage_.put_vertex_batch(m, b); },
      [](const VertexPut& v, const BatchFailure& f) {
        return IngestFailure{ElementClass::kVertex, v.ref.id(), f.code, f.message};
      },
      result);
  result.vertices = vertices.size() - result.failures.size();
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

IngestResult DGraph::ingest_edges(std::span<const IngestEdge> edges,
                                  const std::unordered_map<VertexId, VertexRef>& homes) {
  const auto start = std::chrono::steady_clock::now();
  const uint32_t k = cluster_size();
  IngestResult result;
  std::vector<std::vector<EdgeHalfPut>> mirrors(k), origins(k);
  for (const auto& e : edges) {
    auto s = homes.find(e.src);
    auto d = homes.find(e.dst);
    if (s == homes.end() || d == homes.end()) {
      result.failures.push_back({ElementClass::kEdge, e.id, ErrorCode::kUnknownVertex,
                                 "endpoint " + std::to_string(s == homes.end() ? e.src : e.dst) + " was never placed"});
      continue;
    }
    EdgeRecord rec{e.id, s->second, d->second, e.label};
    if (!rec.co_located()) mirrors[rec.dst.home().index].push_back({rec, HalfRole::kMirror, {}});
    origins[rec.src.home().index].push_back({rec, HalfRole::kOrigin, e.props});
  }
  auto send = [&](uint32_t m, const std::vector<EdgeHalfPut>& b) { return storage_.put_edge_batch(m, b); };
  auto fail = [](const EdgeHalfPut& h, const BatchFailure& f) {
    return IngestFailure{ElementClass::kEdge, h.edge.id, f.code, f.message};
  };
  SendBatches<EdgeHalfPut>(mirrors, send, fail, result);
  std::set<EdgeId> failed;
  for (const auto& f : result.failures) failed.insert(f.id);
  SendBatches<EdgeHalfPut>(origins, send, fail, result);
  for (const auto& f : result.failures) failed.insert(f.id);
  result.edges = edges.size() - failed.size();
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

namespace {

class Matcher {
 public:
  Matcher(StorageClient& s, const Pattern& p) : s_(s), p_(p) {}

  std::vector<Binding> run() {
    p_.validate();
    CheckTags();
    const size_t n = p_.vertices.size();
    for (size_t i = 0; i < n; ++i) var_index_[p_.vertices[i].var] = i;

    size_t seed = 0;
    for (size_t i = 1; i < n; ++i)
      if (p_.vertices[i].where.size() > p_.vertices[seed].where.size()) seed = i;
    PlanOrder(seed);

    std::vector<std::optional<VertexRef>> bound(n);
    for (const auto& c : Seeds(seed)) {
      bound[seed] = c;
      Extend(1, bound);
    }
    std::sort(results_.begin(), results_.end());
    results_.erase(std::unique(results_.begin(), results_.end()), results_.end());
    std::vector<Binding> out;
    out.reserve(results_.size());
    for (const auto& row : results_) {
      Binding b;
      for (size_t i = 0; i < n; ++i) b[p_.vertices[i].var] = row[i];
      out.push_back(std::move(b));
    }
    return out;
  }

 private:
  struct Step {
    size_t var;
    size_t via_edge;  // pattern edge linking var to an earlier one
  };

  void CheckTags() {
    const uint32_t k = s_.cluster_size();
    std::map<std::string, std::set<ValueTag>> vtags, etags;
    for (uint32_t m = 0; m < k; ++m) {
      for (const auto& [key, t] : s_.key_tags(m, ElementClass::kVertex)) vtags[key].insert(t);
      for (const auto& [key, t] : s_.key_tags(m, ElementClass::kEdge)) etags[key].insert(t);
    }
    auto check = [](const std::map<std::string, std::set<ValueTag>>& tags, const AttrConstraint& c) {
      auto it = tags.find(c.key);
      if (it == tags.end()) return;
      for (auto t : it->second) {
        if (t != c.predicate.tag()) {
          throw Error(ErrorCode::kTagMismatch, "constraint on '" + c.key + "' compares " +
                                                   std::string(ValueTagName(c.predicate.tag())) + " with stored " +
                                                   std::string(ValueTagName(t)) + " values");
        }
      }
    };
    for (const auto& v : p_.vertices)
      for (const auto& c : v.where) check(vtags, c);
    for (const auto& e : p_.edges)
      for (const auto& c : e.where) check(etags, c);
  }

  void PlanOrder(size_t seed) {
    std::vector<bool> placed(p_.vertices.size(), false);
    placed[seed] = true;
    order_.push_back({seed, 0});
    for (size_t head = 0; head < order_.size(); ++head) {
      const size_t u = order_[head].var;
      for (size_t ei = 0; ei < p_.edges.size(); ++ei) {
        const auto& e = p_.edges[ei];
        const size_t a = var_index_.at(e.src), b = var_index_.at(e.dst);
        const size_t other = a == u ? b : (b == u ? a : SIZE_MAX);
        if (other == SIZE_MAX || placed[other]) continue;
        placed[other] = true;
        order_.push_back({other, ei});
      }
    }
  }

  std::vector<VertexRef> Seeds(size_t var) {
    const auto& where = p_.vertices[var].where;
    std::vector<VertexRef> out;
    if (where.empty()) {
      for (const auto& b : s_.scatter(StorageClient::EncodeSimple(StorageOp::kLocalVertices))) {
        BinaryReader r(b);
        auto refs = ReadRefs(r);
        out.insert(out.end(), refs.begin(), refs.end());
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    // Intersect the index answers of every constraint, shard by shard.
    std::vector<std::vector<ElementId>> per_machine;
    for (size_t ci = 0; ci < where.size(); ++ci) {
      auto bodies = s_.scatter(StorageClient::EncodeIndexScan(ElementClass::kVertex, where[ci].key, where[ci].predicate));
      for (uint32_t m = 0; m < bodies.size(); ++m) {
        auto ids = StorageClient::DecodeIds(bodies[m]);
        if (ci == 0) {
          per_machine.push_back(std::move(ids));
        } else {
          std::vector<ElementId> both;
          std::set_intersection(per_machine[m].begin(), per_machine[m].end(), ids.begin(), ids.end(),
                                std::back_inserter(both));
          per_machine[m] = std::move(both);
        }
      }
    }
    for (uint32_t m = 0; m < per_machine.size(); ++m) {
      for (auto id : per_machine[m]) out.push_back(VertexRef::Unchecked(id, MachineId{m}));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  const std::vector<Neighbor>& Adjacency(const VertexRef& v) {
    auto it = adj_.find(v.id());
    if (it == adj_.end()) it = adj_.emplace(v.id(), s_.neighbors(v, Direction::kBoth)).first;
    return it->second;
  }

  // Loads the given vertex properties for every ref not cached yet, one
  // request per machine.
  void Prefetch(const std::vector<VertexRef>& refs, const std::vector<AttrConstraint>& where) {
    std::vector<std::string> keys;
    for (const auto& c : where) keys.push_back(c.key);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::map<uint32_t, std::vector<ElementId>> need;
    for (const auto& r : refs) {
      for (const auto& k : keys) {
        if (!vprops_.contains({r.id(), k})) {
          need[r.home().index].push_back(r.id());
          break;
        }
      }
    }
    for (auto& [m, ids] : need) {
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      auto rows = s_.get_props(m, ElementClass::kVertex, ids, keys);
      for (size_t i = 0; i < ids.size(); ++i)
        for (size_t j = 0; j < keys.size(); ++j) vprops_[{ids[i], keys[j]}] = rows[i][j];
    }
  }

  bool VertexOk(const VertexRef& v, const std::vector<AttrConstraint>& where) {
    for (const auto& c : where) {
      auto it = vprops_.find({v.id(), c.key});
      if (it == vprops_.end()) {
        Prefetch({v}, where);
        it = vprops_.find({v.id(), c.key});
      }
      if (!it->second || !c.predicate.matches(*it->second)) return false;
    }
    return true;
  }

  std::optional<PropertyValue> EdgeProp(const VertexRef& src, EdgeId e, const std::string& key) {
    auto it = eprops_.find({e, key});
    if (it != eprops_.end()) return it->second;
    const ElementId id = e;
    auto rows = s_.get_props(src.home().index, ElementClass::kEdge, std::span(&id, 1), std::span(&key, 1));
    return eprops_[{e, key}] = rows.at(0).at(0);
  }

  // Some data edge src -> dst satisfies the pattern edge.
  bool EdgeOk(const PatternEdge& pe, const VertexRef& src, const VertexRef& dst) {
    for (const auto& n : Adjacency(src)) {
      if (n.direction != Direction::kOut || n.vertex.id() != dst.id()) continue;
      if (pe.label && n.label != *pe.label) continue;
      bool ok = true;
      for (const auto& c : pe.where) {
        auto v = EdgeProp(src, n.edge, c.key);
        if (!v || !c.predicate.matches(*v)) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  }

  bool EdgesOk(size_t var, const std::vector<std::optional<VertexRef>>& bound) {
    for (const auto& pe : p_.edges) {
      const size_t a = var_index_.at(pe.src), b = var_index_.at(pe.dst);
      if (a != var && b != var) continue;
      if (!bound[a] || !bound[b]) continue;
      if (!EdgeOk(pe, *bound[a], *bound[b])) return false;
    }
    return true;
  }

  void Extend(size_t pos, std::vector<std::optional<VertexRef>>& bound) {
    const auto& seed_where = p_.vertices[order_[0].var].where;
    if (pos == 1 && !VertexOk(*bound[order_[0].var], seed_where)) return;
    if (pos == 1 && !EdgesOk(order_[0].var, bound)) return;
    if (pos == order_.size()) {
      std::vector<VertexRef> row;
      for (const auto& b : bound) row.push_back(*b);
      results_.push_back(std::move(row));
      return;
    }
    const auto [var, via] = order_[pos];
    const auto& pe = p_.edges[via];
    const bool forward = var_index_.at(pe.dst) == var;  // anchor -> var
    const size_t anchor = forward ? var_index_.at(pe.src) : var_index_.at(pe.dst);

    std::vector<VertexRef> cands;
    for (const auto& n : Adjacency(*bound[anchor])) {
      if (n.direction != (forward ? Direction::kOut : Direction::kIn)) continue;
      if (pe.label && n.label != *pe.label) continue;
      cands.push_back(n.vertex);
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::erase_if(cands, [&](const VertexRef& c) {
      return std::any_of(bound.begin(), bound.end(), [&](const auto& b) { return b && *b == c; });
    });
    const auto& where = p_.vertices[var].where;
    if (!where.empty()) Prefetch(cands, where);

    for (const auto& c : cands) {
      if (!VertexOk(c, where)) continue;
      bound[var] = c;
      if (EdgesOk(var, bound)) Extend(pos + 1, bound);
      bound[var].reset();
    }
  }

  StorageClient& s_;
  const Pattern& p_;
  std::map<std::string, size_t> var_index_;
  std::vector<Step> order_;
  std::unordered_map<VertexId, std::vector<Neighbor>> adj_;
  std::map<std::pair<ElementId, std::string>, std::optional<PropertyValue>> vprops_;
  std::map<std::pair<ElementId, std::string>, std::optional<PropertyValue>> eprops_;
  std::vector<std::vector<VertexRef>> results_;
};

}  // namespace

std::vector<Binding> DGraph::match_pattern(const Pattern& p) { return Matcher(storage_, p).run(); }

}  // namespace shardgraph
