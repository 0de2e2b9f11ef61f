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

#include "shardgraph/bench/bench.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace shardgraph {

PlacementChoice PlacementChoice::Parse(const std::string& s) {
  if (s == "random") return {Kind::kRandom, {}};
  if (s == "explicit-components") return {Kind::kComponents, {}};
  if (s.rfind("attr:", 0) == 0 && s.size() > 5) return {Kind::kAttribute, s.substr(5)};
  throw Error(ErrorCode::kInvalidArgument, "unknown placement '" + s + "' (random, explicit-components, attr:KEY)");
}

std::string PlacementChoice::name() const {
  switch (kind) {
    case Kind::kRandom: return "random";
    case Kind::kComponents: return "explicit-components";
    case Kind::kAttribute: return "attr:" + key;
  }
  return "?";
}

std::string BenchReport::csv() const {
  std::ostringstream os;
  os << "cluster_size,bench,placement,graph_elements,elapsed_s,throughput\n";
  os << std::fixed;
  for (const auto& r : rows) {
    os << r.cluster_size << ',' << r.bench << ',' << r.placement << ',' << r.elements << ',' << std::setprecision(6)
       << r.seconds << ',' << std::setprecision(1) << r.throughput << '\n';
  }
  return os.str();
}

namespace {

std::vector<VertexPut> Place(const ERGraph& g, const PlacementChoice& p, uint32_t k) {
  std::vector<VertexPut> out;
  out.reserve(g.vertices.size());
  for (const auto& v : g.vertices) {
    MachineId home;
    switch (p.kind) {
      case PlacementChoice::Kind::kRandom: home = Assign(v.id, v.props, RandomHash{}, k); break;
      case PlacementChoice::Kind::kComponents:
        home = MachineId{static_cast<uint32_t>(g.component_of(v.id) % k)};
        break;
      case PlacementChoice::Kind::kAttribute: home = Assign(v.id, v.props, AttributeHash{{p.key}}, k); break;
    }
    out.push_back({MakeVertexRef(v.id, home, k), v.props});
  }
  return out;
}

}  // namespace

BenchRow BenchIngest(DGraph& dg, const ERGraph& g, const PlacementChoice& placement, IngestCheck* check) {
  const uint32_t k = dg.cluster_size();
  auto placed = Place(g, placement, k);
  std::unordered_map<VertexId, VertexRef> homes;
  homes.reserve(placed.size());
  uint64_t expected_mirrors = 0;
  for (const auto& v : placed) homes.emplace(v.ref.id(), v.ref);
  for (const auto& e : g.edges) expected_mirrors += homes.at(e.src).home() == homes.at(e.dst).home() ? 0 : 1;

  const auto before = dg.shard_stats();
  const auto start = std::chrono::steady_clock::now();
  auto vr = dg.ingest_placed(std::move(placed));
  auto er = dg.ingest_edges(g.edges, homes);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  std::ostringstream diff;
  for (const auto* r : {&vr, &er}) {
    for (size_t i = 0; i < r->failures.size() && i < 10; ++i) {
      const auto& f = r->failures[i];
      diff << (f.cls == ElementClass::kVertex ? "vertex " : "edge ") << f.id << ": " << f.message << '\n';
    }
  }
  const auto stats = dg.shard_stats();
  uint64_t vertices = 0, origins = 0, mirrors = 0;
  IngestCheck local;
  // Deltas, so a cluster that already holds data is checked too.
  for (size_t i = 0; i < stats.size(); ++i) {
    const auto& s = stats[i];
    const auto& b = before.at(i);
    vertices += s.vertices - b.vertices;
    origins += s.origin_halves - b.origin_halves;
    mirrors += s.mirror_halves - b.mirror_halves;
    local.vertices_per_shard.push_back(s.vertices - b.vertices);
    local.elements_per_shard.push_back(s.vertices - b.vertices + s.origin_halves - b.origin_halves);
  }
  local.mirrors = mirrors;
  if (!vr.failures.empty() || !er.failures.empty() || vertices != g.vertices.size() || origins != g.edges.size() ||
      mirrors != expected_mirrors) {
    diff << "stored vertices " << vertices << " of " << g.vertices.size() << ", origin halves " << origins << " of "
         << g.edges.size() << ", mirrors " << mirrors << " of " << expected_mirrors;
    throw Error(ErrorCode::kInvalidArgument, "ingest lost elements:\n" + diff.str());
  }
  const double mean = static_cast<double>(g.elements()) / k;
  for (auto c : local.elements_per_shard) {
    local.max_imbalance = std::max(local.max_imbalance, std::abs(static_cast<double>(c) - mean) / mean);
  }
  if (check) *check = local;

  BenchRow row{"ingest", placement.name(), k, g.elements(), elapsed.count(), 0};
  row.throughput = row.seconds > 0 ? static_cast<double>(row.elements) / row.seconds : 0;
  return row;
}

CCBench BenchCC(DGraph& dg, const ERGraph& g) {
  CCBench b;
  b.cc = ConnectedComponents(dg.jobs(), dg.storage());
  double seconds = 0;
  uint64_t processed = 0;
  for (size_t i = 1; i < b.cc.stats.size(); ++i) {
    seconds += b.cc.stats[i].elapsed.count();
    processed += b.cc.stats[i].vertices_processed;
  }
  b.row = {"cc", "", dg.cluster_size(), g.elements(), seconds, seconds > 0 ? processed / seconds : 0};
  if (g.vertices.size() <= 1'000'000) {
    const auto want = UnionFindComponents(g.vertices, g.edges);
    if (want != b.cc.labels) {
      std::ostringstream os;
      size_t shown = 0;
      for (const auto& [id, label] : want) {
        auto it = b.cc.labels.find(id);
        if (it == b.cc.labels.end() || it->second != label) {
          os << "\n  vertex " << id << ": want " << label << ", got "
             << (it == b.cc.labels.end() ? std::string("none") : std::to_string(it->second));
          if (++shown == 10) break;
        }
      }
      throw Error(ErrorCode::kInvalidArgument, "component labels differ from union-find:" + os.str());
    }
    b.verified = true;
  }
  return b;
}

std::pair<LocalityReport, LocalityReport> BenchLocality(const ERGraph& g, uint32_t k, const PlacementChoice& a,
                                                        const PlacementChoice& b, const NodeOptions& node) {
  auto one = [&](const PlacementChoice& p) {
    LocalClusterOptions o;
    o.machines = k;
    o.node = node;
    LocalCluster cluster(o);
    DGraph dg(cluster.transport(), cluster.manifest());
    BenchIngest(dg, g, p);
    return dg.locality_report();
  };
  return {one(a), one(b)};
}

std::string LocalityPairCsv(const LocalityReport& a, const std::string& name_a, const LocalityReport& b,
                            const std::string& name_b) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  os << "machine," << name_a << "_local_fraction," << name_a << "_edge_cut," << name_b << "_local_fraction,"
     << name_b << "_edge_cut\n";
  for (size_t i = 0; i < a.per_machine.size() && i < b.per_machine.size(); ++i) {
    os << i << ',' << a.per_machine[i].local_fraction << ',' << a.per_machine[i].edge_cut << ','
       << b.per_machine[i].local_fraction << ',' << b.per_machine[i].edge_cut << '\n';
  }
  os << "all," << a.overall << ',' << a.edge_cut << ',' << b.overall << ',' << b.edge_cut << '\n';
  return os.str();
}

}  // namespace shardgraph
