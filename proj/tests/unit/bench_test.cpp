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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "shardgraph/bench/bench.hpp"

namespace shardgraph {
namespace {

using namespace std::chrono_literals;

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path TempDir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("shardgraph-bench-" + std::to_string(::getpid()) + "-" + name);
  std::filesystem::remove_all(p);
  return p;
}

TEST(Generator, SizesAndIdRanges) {
  auto g = GenerateER({3, 100, 1000, 1});
  EXPECT_EQ(g.vertices.size(), 300u);
  EXPECT_EQ(g.edges.size(), 3000u);
  EXPECT_EQ(g.elements(), 3u * 1100u);
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (const auto& e : g.edges) {
    EXPECT_NE(e.src, e.dst);
    EXPECT_EQ(g.component_of(e.src), g.component_of(e.dst));
    EXPECT_EQ(g.component_of(e.src), (e.id - 1) / 1000);
    EXPECT_TRUE(pairs.emplace(std::min(e.src, e.dst), std::max(e.src, e.dst)).second);
  }
  for (const auto& v : g.vertices) {
    ASSERT_EQ(v.props.size(), 2u);
  }
}

TEST(Generator, ComponentsAreConnected) {
  auto g = GenerateER({5, 50, 150, 2});
  auto labels = UnionFindComponents(g.vertices, g.edges);
  std::set<VertexId> distinct;
  for (const auto& [v, c] : labels) distinct.insert(c);
  EXPECT_EQ(distinct.size(), 5u);
  EXPECT_EQ(g.disconnected, 0u);
  // A tree's worth of edges is almost never connected: bounded draws, reported.
  auto tight = GenerateER({3, 50, 49, 2});
  EXPECT_EQ(tight.disconnected, 3u);
  EXPECT_EQ(tight.redraws, 3 * (kMaxDraws - 1));
  // Too few edges to connect: drawn once, left disconnected.
  auto sparse = GenerateER({1, 50, 10, 2});
  EXPECT_EQ(sparse.redraws, 0u);
  EXPECT_EQ(sparse.edges.size(), 10u);
}

TEST(Generator, RejectsImpossibleSpecs) {
  EXPECT_THROW(GenerateER({1, 10, 46, 0}), Error);
  EXPECT_NO_THROW(GenerateER({1, 10, 45, 0}));
  EXPECT_THROW(GenerateER({1, 0, 0, 0}), Error);
}

TEST(Generator, DeterministicFiles) {
  ERSpec spec{2, 40, 120, 77, true};
  auto a = TempDir("a");
  auto b = TempDir("b");
  WriteGraph(GenerateER(spec), a);
  WriteGraph(GenerateER(spec), b);
  for (const char* f : {"vertices.tsv", "edges.tsv", "meta.json"}) {
    EXPECT_FALSE(Slurp(a / f).empty());
    EXPECT_EQ(Slurp(a / f), Slurp(b / f)) << f;
  }
  auto other = TempDir("c");
  spec.seed = 78;
  WriteGraph(GenerateER(spec), other);
  EXPECT_NE(Slurp(a / "edges.tsv"), Slurp(other / "edges.tsv"));

  auto back = ReadGraph(a);
  auto orig = GenerateER({2, 40, 120, 77, true});
  ASSERT_EQ(back.vertices.size(), orig.vertices.size());
  ASSERT_EQ(back.edges.size(), orig.edges.size());
  for (size_t i = 0; i < orig.edges.size(); ++i) {
    EXPECT_EQ(back.edges[i].id, orig.edges[i].id);
    EXPECT_EQ(back.edges[i].src, orig.edges[i].src);
    EXPECT_EQ(back.edges[i].dst, orig.edges[i].dst);
    EXPECT_EQ(back.edges[i].props, orig.edges[i].props);
  }
  for (size_t i = 0; i < orig.vertices.size(); ++i) EXPECT_EQ(back.vertices[i].props, orig.vertices[i].props);
  EXPECT_EQ(back.spec.to_json(), orig.spec.to_json());
  for (const auto& d : {a, b, other}) std::filesystem::remove_all(d);
}

TEST(UnionFind, LabelsWithLeastId) {
  std::vector<IngestVertex> v{{5, {}}, {2, {}}, {9, {}}, {4, {}}};
  std::vector<IngestEdge> e{{1, 5, 2, "x", {}}, {2, 9, 9, "x", {}}};
  EXPECT_EQ(UnionFindComponents(v, e), (std::map<VertexId, VertexId>{{2, 2}, {4, 4}, {5, 2}, {9, 9}}));
}

struct Cluster {
  std::unique_ptr<LocalCluster> cluster;
  std::unique_ptr<DGraph> dg;

  explicit Cluster(uint32_t k) {
    LocalClusterOptions o;
    o.machines = k;
    cluster = std::make_unique<LocalCluster>(o);
    DGraphOptions d;
    d.timeout = 10s;
    dg = std::make_unique<DGraph>(cluster->transport(), o.manifest, d);
  }
};

TEST(Bench, IngestCountsAndBalance) {
  Cluster c(4);
  auto g = GenerateER({10, 100, 1000, 3});
  IngestCheck check;
  auto row = BenchIngest(*c.dg, g, PlacementChoice::Parse("random"), &check);
  EXPECT_EQ(row.elements, 11000u);
  EXPECT_EQ(row.cluster_size, 4u);
  uint64_t total = 0;
  for (auto n : check.vertices_per_shard) total += n;
  EXPECT_EQ(total, 1000u);
  EXPECT_LE(check.max_imbalance, 0.10);
  EXPECT_EQ(check.mirrors, c.dg->locality_report().edge_cut);
}

TEST(Bench, PlacementsGiveExpectedLocality) {
  auto g = GenerateER({20, 50, 200, 4});
  auto [random, aligned] = BenchLocality(g, 4, PlacementChoice::Parse("random"),
                                         PlacementChoice::Parse("explicit-components"));
  EXPECT_GT(random.overall, 0.15);
  EXPECT_LT(random.overall, 0.35);
  EXPECT_DOUBLE_EQ(aligned.overall, 1.0);
  EXPECT_EQ(aligned.edge_cut, 0u);
  auto [one, one_b] = BenchLocality(g, 1, PlacementChoice::Parse("random"), PlacementChoice::Parse("random"));
  EXPECT_DOUBLE_EQ(one.overall, 1.0);
  const auto csv = LocalityPairCsv(random, "random", aligned, "components");
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "machine,random_local_fraction,random_edge_cut,components_local_fraction,components_edge_cut");
}

TEST(Bench, AttributePlacementKeepsEqualValuesTogether) {
  Cluster c(3);
  auto g = GenerateER({2, 30, 60, 5});
  BenchIngest(*c.dg, g, PlacementChoice::Parse("attr:kind"));
  std::map<int64_t, std::set<uint32_t>> homes;
  for (const auto& v : c.dg->all_vertices()) {
    auto rows = c.dg->storage().get_props(v.home().index, ElementClass::kVertex, std::vector<ElementId>{v.id()},
                                          std::vector<std::string>{"kind"});
    homes[rows[0][0]->as_int()].insert(v.home().index);
  }
  for (const auto& [kind, ms] : homes) EXPECT_EQ(ms.size(), 1u) << kind;
  EXPECT_THROW(PlacementChoice::Parse("by-magic"), Error);
}

TEST(Bench, CCVerifiesAndReports) {
  Cluster c(2);
  auto g = GenerateER({3, 20, 40, 6});
  BenchIngest(*c.dg, g, PlacementChoice::Parse("random"));
  auto r = BenchCC(*c.dg, g);
  EXPECT_TRUE(r.verified);
  EXPECT_EQ(r.row.bench, "cc");
  EXPECT_GT(r.row.throughput, 0.0);

  BenchReport report;
  report.rows.push_back({"ingest", "random", 4, 11000, 2.0, 5500.0});
  const auto csv = report.csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "cluster_size,bench,placement,graph_elements,elapsed_s,throughput");
  EXPECT_NE(csv.find("4,ingest,random,11000,"), std::string::npos);
}

TEST(Bench, PersistentShardsReplay) {
  auto dir = TempDir("persist");
  auto g = GenerateER({2, 20, 40, 7});
  LocalityReport before;
  {
    LocalClusterOptions o;
    o.machines = 2;
    o.node.data_dir = dir;
    LocalCluster cluster(o);
    DGraph dg(cluster.transport(), o.manifest, {});
    BenchIngest(dg, g, PlacementChoice::Parse("random"));
    ConnectedComponents(dg.jobs(), dg.storage());
    before = dg.locality_report();
  }
  LocalClusterOptions o;
  o.machines = 2;
  o.node.data_dir = dir;
  LocalCluster cluster(o);
  DGraph dg(cluster.transport(), o.manifest, {});
  EXPECT_EQ(dg.all_vertices().size(), 40u);
  EXPECT_EQ(dg.locality_report().edge_cut, before.edge_cut);
  EXPECT_EQ(GatherIntProperty(dg.storage(), kComponentKey).size(), 40u);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace shardgraph
