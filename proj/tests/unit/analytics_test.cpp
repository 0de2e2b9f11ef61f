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

#include <sstream>

#include "oracles.hpp"
#include "shardgraph/analytics/analytics.hpp"
#include "shardgraph/bench/bench.hpp"

namespace shardgraph {
namespace {

using namespace std::chrono_literals;

struct Cluster {
  std::unique_ptr<LocalCluster> cluster;
  std::unique_ptr<DGraph> dg;

  explicit Cluster(uint32_t k, size_t threads = 1) {
    LocalClusterOptions o;
    o.machines = k;
    o.node.threads = threads;
    cluster = std::make_unique<LocalCluster>(o);
    DGraphOptions d;
    d.timeout = 10s;
    dg = std::make_unique<DGraph>(cluster->transport(), o.manifest, d);
  }
};

ERGraph Handmade(std::vector<VertexId> vertices, std::vector<std::pair<VertexId, VertexId>> edges) {
  ERGraph g;
  g.spec.vertices_per_component = vertices.empty() ? 1 : *std::max_element(vertices.begin(), vertices.end());
  for (auto v : vertices) g.vertices.push_back({v, {}});
  EdgeId id = 1;
  for (auto [s, d] : edges) g.edges.push_back({id++, s, d, "link", {}});
  return g;
}

CCResult RunCC(uint32_t k, const ERGraph& g, const std::string& placement = "random") {
  Cluster c(k);
  BenchIngest(*c.dg, g, PlacementChoice::Parse(placement));
  return ConnectedComponents(c.dg->jobs(), c.dg->storage());
}

TEST(ConnectedComponents, PathTrace) {
  for (uint32_t k : {1u, 2u, 3u}) {
    auto r = RunCC(k, Handmade({1, 2, 3}, {{1, 2}, {2, 3}}));
    EXPECT_EQ(r.labels, (std::map<VertexId, VertexId>{{1, 1}, {2, 1}, {3, 1}})) << "k=" << k;
    EXPECT_EQ(r.changed, (std::vector<uint64_t>{3, 1, 0}));
    EXPECT_EQ(r.iterations, 3u);
  }
}

TEST(ConnectedComponents, IsolatedVertexKeepsItsId) {
  auto r = RunCC(2, Handmade({4, 9}, {}));
  EXPECT_EQ(r.labels, (std::map<VertexId, VertexId>{{4, 4}, {9, 9}}));
  EXPECT_EQ(r.changed, (std::vector<uint64_t>{2, 0}));
}

TEST(ConnectedComponents, EmptyGraph) {
  auto r = RunCC(2, Handmade({}, {}));
  EXPECT_TRUE(r.labels.empty());
  EXPECT_EQ(r.iterations, 1u);
}

TEST(ConnectedComponents, DirectionIsIgnored) {
  // 5 -> 4 -> 3 <- 1: weakly connected, least id 1.
  auto r = RunCC(3, Handmade({1, 3, 4, 5}, {{5, 4}, {4, 3}, {1, 3}}));
  for (const auto& [v, c] : r.labels) EXPECT_EQ(c, 1u);
}

TEST(ConnectedComponents, ConvergesWithinDiameterPlusTwo) {
  // Path 8-7-...-1: the label of 1 travels 7 hops.
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId v = 8; v > 1; --v) e.emplace_back(v, v - 1);
  auto r = RunCC(4, Handmade({1, 2, 3, 4, 5, 6, 7, 8}, e));
  for (const auto& [v, c] : r.labels) EXPECT_EQ(c, 1u);
  EXPECT_LE(r.iterations, 7u + 2u);
  EXPECT_EQ(r.changed.back(), 0u);
  for (size_t i = 1; i + 1 < r.changed.size(); ++i) EXPECT_GT(r.changed[i], 0u);
}

TEST(ConnectedComponents, MatchesUnionFindOnGeneratedGraphs) {
  auto g = GenerateER({10, 100, 300, 21});
  auto r = RunCC(4, g);
  EXPECT_EQ(r.labels, UnionFindComponents(g.vertices, g.edges));
  std::set<VertexId> distinct;
  for (const auto& [v, c] : r.labels) distinct.insert(c);
  EXPECT_EQ(distinct.size(), 10u);
}

TEST(ConnectedComponents, SameAnswerAcrossClusterShapes) {
  auto g = GenerateER({4, 30, 40, 22});
  auto base = RunCC(1, g);
  for (uint32_t k : {2u, 4u}) {
    for (const char* p : {"random", "explicit-components"}) {
      auto r = RunCC(k, g, p);
      EXPECT_EQ(r.labels, base.labels) << k << " " << p;
      EXPECT_EQ(r.iterations, base.iterations) << k << " " << p;
      EXPECT_EQ(r.changed, base.changed) << k << " " << p;
    }
  }
}

TEST(DegreeCount, SmallCases) {
  {
    Cluster c(2);
    BenchIngest(*c.dg, Handmade({7}, {}), PlacementChoice::Parse("random"));
    EXPECT_EQ(DegreeCount(c.dg->jobs(), c.dg->storage()), (std::map<VertexId, Degree>{{7, {0, 0}}}));
  }
  {
    Cluster c(3);
    BenchIngest(*c.dg, Handmade({1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}}), PlacementChoice::Parse("random"));
    auto d = DegreeCount(c.dg->jobs(), c.dg->storage());
    for (VertexId v : {1, 2, 3}) EXPECT_EQ(d[v], (Degree{1, 1}));
  }
  {
    // A self-loop counts once in each direction.
    Cluster c(2);
    BenchIngest(*c.dg, Handmade({1, 2}, {{1, 1}, {1, 2}}), PlacementChoice::Parse("random"));
    auto d = DegreeCount(c.dg->jobs(), c.dg->storage());
    EXPECT_EQ(d[1], (Degree{1, 2}));
    EXPECT_EQ(d[2], (Degree{1, 0}));
  }
}

TEST(DegreeCount, MatchesEdgeTallies) {
  auto g = GenerateER({3, 40, 200, 23});
  std::map<VertexId, Degree> want;
  for (const auto& v : g.vertices) want[v.id];
  for (const auto& e : g.edges) {
    ++want[e.src].out;
    ++want[e.dst].in;
  }
  Cluster c(4, 2);
  BenchIngest(*c.dg, g, PlacementChoice::Parse("random"));
  EXPECT_EQ(DegreeCount(c.dg->jobs(), c.dg->storage()), want);
}

TEST(ConnectedComponents, CsvOutput) {
  std::ostringstream out;
  WriteComponentsCsv(out, {{3, 1}, {1, 1}, {8, 8}});
  EXPECT_EQ(out.str(), "vertexId,component\n1,1\n3,1\n8,8\n");
}

}  // namespace
}  // namespace shardgraph
