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

#include "shardgraph/placement/placement.hpp"

#include <cmath>
#include <sstream>

#include "shardgraph/core/codec.hpp"

namespace shardgraph {

std::string PolicyName(const PlacementPolicy& p) {
  struct {
    std::string operator()(const RandomHash&) const { return "random"; }
    std::string operator()(const Explicit& e) const { return "explicit:" + std::to_string(e.machine.index); }
    std::string operator()(const AttributeHash& a) const {
      std::string s = "attr:";
      for (size_t i = 0; i < a.keys.size(); ++i) s += (i ? "," : "") + a.keys[i];
      return s;
    }
  } visitor;
  return std::visit(visitor, p);
}

MachineId Assign(uint64_t placement_key, const PropertyList& props, const PlacementPolicy& policy, uint32_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "cluster size must be at least 1");
  if (const auto* e = std::get_if<Explicit>(&policy)) {
    if (e->machine.index >= k) {
      throw Error(ErrorCode::kOutOfRange, "explicit target " + std::to_string(e->machine.index) +
                                              " outside cluster of " + std::to_string(k));
    }
    return e->machine;
  }
  if (const auto* r = std::get_if<RandomHash>(&policy)) {
    return MachineId{static_cast<uint32_t>(HashId(placement_key, r->seed) % k)};
  }
  const auto& a = std::get<AttributeHash>(policy);
  if (a.keys.empty()) throw Error(ErrorCode::kInvalidArgument, "attribute placement needs at least one key");
  BinaryWriter w;
  for (const auto& key : a.keys) {
    const PropertyValue* found = nullptr;
    for (const auto& [k2, v] : props) {
      if (k2 == key) found = &v;
    }
    if (found == nullptr) throw Error(ErrorCode::kMissingAttribute, "placement attribute '" + key + "' missing");
    if (found->tag() == ValueTag::kFloat && a.grid_resolution > 0) {
      w.value(PropertyValue(static_cast<int64_t>(std::floor(found->as_float() / a.grid_resolution))));
    } else {
      w.value(*found);
    }
  }
  return MachineId{static_cast<uint32_t>(HashBytes(w.data(), a.seed) % k)};
}

LocalityReport BuildLocalityReport(std::span<const LocalityCounts> counts) {
  LocalityReport r;
  uint64_t colocated = 0, incidences = 0, local_incidences = 0;
  for (const auto& c : counts) {
    MachineLocality m;
    m.machine = c.machine;
    m.origin_edges = c.origin_edges;
    m.edge_cut = c.origin_edges - c.colocated_edges;
    m.local_fraction = c.origin_edges == 0 ? 1.0 : static_cast<double>(c.colocated_edges) / c.origin_edges;
    r.per_machine.push_back(m);
    r.total_edges += c.origin_edges;
    r.edge_cut += m.edge_cut;
    colocated += c.colocated_edges;
    incidences += c.incidences;
    local_incidences += c.local_incidences;
  }
  r.overall = r.total_edges == 0 ? 1.0 : static_cast<double>(colocated) / r.total_edges;
  r.vertex_local_fraction = incidences == 0 ? 1.0 : static_cast<double>(local_incidences) / incidences;
  return r;
}

std::string LocalityCsv(const LocalityReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed;
  os << "machine,local_fraction,edge_cut\n";
  for (const auto& m : r.per_machine) os << m.machine.index << ',' << m.local_fraction << ',' << m.edge_cut << '\n';
  os << "all," << r.overall << ',' << r.edge_cut << '\n';
  return os.str();
}

}  // namespace shardgraph
