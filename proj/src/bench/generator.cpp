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

#include "shardgraph/bench/generator.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "shardgraph/core/hash.hpp"
#include "shardgraph/core/json_props.hpp"

namespace shardgraph {

using nlohmann::json;

json ERSpec::to_json() const {
  return {{"components", components},
          {"verticesPerComponent", vertices_per_component},
          {"edgesPerComponent", edges_per_component},
          {"seed", seed},
          {"edgeAttributes", edge_attributes}};
}

ERSpec ERSpec::FromJson(const json& j) {
  ERSpec s;
  s.components = j.at("components").get<uint64_t>();
  s.vertices_per_component = j.at("verticesPerComponent").get<uint64_t>();
  s.edges_per_component = j.at("edgesPerComponent").get<uint64_t>();
  s.seed = j.at("seed").get<uint64_t>();
  s.edge_attributes = j.value("edgeAttributes", false);
  return s;
}

namespace {

// SplitMix64 stream; spelled out so the output is the same everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next() { return Mix64(state_ += 0x9E3779B97F4A7C15ULL); }
  // Uniform in [0, n) by rejection.
  uint64_t below(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

struct Dsu {
  std::vector<uint64_t> parent;
  explicit Dsu(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  uint64_t find(uint64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(uint64_t a, uint64_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// Pair index p in [0, n(n-1)/2) to (i, j), i < j, row-major.
std::pair<uint64_t, uint64_t> PairAt(uint64_t p, uint64_t n) {
  uint64_t i = 0;
  uint64_t row = n - 1;
  while (p >= row) {
    p -= row;
    ++i;
    --row;
  }
  return {i, i + 1 + p};
}

}  // namespace

ERGraph GenerateER(const ERSpec& spec) {
  const uint64_t n = spec.vertices_per_component;
  const uint64_t m = spec.edges_per_component;
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "components need at least one vertex");
  const uint64_t pairs = n * (n - 1) / 2;
  if (m > pairs) {
    throw Error(ErrorCode::kInvalidArgument, std::to_string(m) + " edges do not fit in " + std::to_string(n) +
                                                 " vertices (" + std::to_string(pairs) + " pairs)");
  }
  if (spec.components * n > kMaxExternalId) throw Error(ErrorCode::kOutOfRange, "too many vertices");

  ERGraph g;
  g.spec = spec;
  g.vertices.reserve(spec.components * n);
  g.edges.reserve(spec.components * m);
  const bool want_connected = m + 1 >= n;

  for (uint64_t c = 0; c < spec.components; ++c) {
    const VertexId base = c * n + 1;
    Rng props(Mix64(spec.seed) ^ Mix64(c * 2 + 1));
    for (uint64_t i = 0; i < n; ++i) {
      g.vertices.push_back({base + i,
                            {{"kind", PropertyValue(static_cast<int64_t>(props.below(8)))},
                             {"speed", PropertyValue(props.unit() * 1000.0)}}});
    }

    std::vector<std::pair<uint64_t, uint64_t>> drawn;
    for (uint64_t attempt = 0;; ++attempt) {
      Rng rng(Mix64(spec.seed + attempt) ^ Mix64(c * 2));
      // Floyd's sampling of m distinct pair indices.
      std::unordered_set<uint64_t> chosen;
      std::vector<uint64_t> order;
      order.reserve(m);
      for (uint64_t j = pairs - m; j < pairs; ++j) {
        const uint64_t t = rng.below(j + 1);
        const uint64_t pick = chosen.insert(t).second ? t : j;
        if (pick == j) chosen.insert(j);
        order.push_back(pick);
      }
      drawn.clear();
      Dsu dsu(n);
      uint64_t merges = 0;
      for (uint64_t p : order) {
        auto [i, j] = PairAt(p, n);
        if (rng.next() & 1) std::swap(i, j);
        drawn.emplace_back(i, j);
        merges += dsu.unite(i, j) ? 1 : 0;
      }
      if (!want_connected || merges == n - 1) break;
      if (attempt + 1 == kMaxDraws) {
        ++g.disconnected;
        break;
      }
      ++g.redraws;
    }

    Rng weights(Mix64(spec.seed) ^ Mix64(c * 2 + 1) ^ 0x5EEDULL);
    for (uint64_t j = 0; j < drawn.size(); ++j) {
      IngestEdge e;
      e.id = c * m + j + 1;
      e.src = base + drawn[j].first;
      e.dst = base + drawn[j].second;
      e.label = "link";
      if (spec.edge_attributes) e.props = {{"weight", PropertyValue(weights.unit())}};
      g.edges.push_back(std::move(e));
    }
  }
  return g;
}

void WriteGraph(const ERGraph& g, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "vertices.tsv", std::ios::binary);
    for (const auto& v : g.vertices) out << v.id << '\t' << PropsToJson(v.props).dump() << '\n';
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + (dir / "vertices.tsv").string());
  }
  {
    std::ofstream out(dir / "edges.tsv", std::ios::binary);
    for (const auto& e : g.edges) {
      out << e.src << '\t' << e.dst << '\t' << e.label << '\t' << PropsToJson(e.props).dump() << '\n';
    }
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + (dir / "edges.tsv").string());
  }
  json meta = {{"generator", g.spec.to_json()},
               {"vertices", g.vertices.size()},
               {"edges", g.edges.size()},
               {"redraws", g.redraws},
               {"disconnected", g.disconnected}};
  std::ofstream(dir / "meta.json") << meta.dump(2) << '\n';
}

namespace {

std::vector<std::string> SplitTabs(const std::string& line, size_t expected, const std::string& where) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    const size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  if (out.size() != expected) {
    throw Error(ErrorCode::kInvalidArgument, where + ": expected " + std::to_string(expected) + " fields");
  }
  return out;
}

}  // namespace

ERGraph ReadGraph(const std::filesystem::path& dir) {
  ERGraph g;
  std::ifstream meta_in(dir / "meta.json");
  if (meta_in) {
    auto meta = json::parse(meta_in);
    g.spec = ERSpec::FromJson(meta.at("generator"));
    g.redraws = meta.value("redraws", uint64_t{0});
    g.disconnected = meta.value("disconnected", uint64_t{0});
  }
  std::ifstream vin(dir / "vertices.tsv");
  if (!vin) throw Error(ErrorCode::kIo, "cannot read " + (dir / "vertices.tsv").string());
  std::string line;
  for (size_t no = 1; std::getline(vin, line); ++no) {
    if (line.empty()) continue;
    auto f = SplitTabs(line, 2, "vertices.tsv:" + std::to_string(no));
    g.vertices.push_back({std::stoull(f[0]), PropsFromJson(json::parse(f[1]))});
  }
  std::ifstream ein(dir / "edges.tsv");
  if (!ein) throw Error(ErrorCode::kIo, "cannot read " + (dir / "edges.tsv").string());
  for (size_t no = 1; std::getline(ein, line); ++no) {
    if (line.empty()) continue;
    auto f = SplitTabs(line, 4, "edges.tsv:" + std::to_string(no));
    g.edges.push_back({no, std::stoull(f[0]), std::stoull(f[1]), f[2], PropsFromJson(json::parse(f[3]))});
  }
  return g;
}

std::map<VertexId, VertexId> UnionFindComponents(const std::vector<IngestVertex>& vertices,
                                                 const std::vector<IngestEdge>& edges) {
  std::unordered_map<VertexId, uint64_t> slot;
  std::vector<VertexId> ids;
  for (const auto& v : vertices) {
    if (slot.emplace(v.id, ids.size()).second) ids.push_back(v.id);
  }
  Dsu dsu(ids.size());
  for (const auto& e : edges) dsu.unite(slot.at(e.src), slot.at(e.dst));
  std::unordered_map<uint64_t, VertexId> least;
  for (uint64_t i = 0; i < ids.size(); ++i) {
    auto [it, fresh] = least.emplace(dsu.find(i), ids[i]);
    if (!fresh) it->second = std::min(it->second, ids[i]);
  }
  std::map<VertexId, VertexId> out;
  for (uint64_t i = 0; i < ids.size(); ++i) out[ids[i]] = least.at(dsu.find(i));
  return out;
}

}  // namespace shardgraph
