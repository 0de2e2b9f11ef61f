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

#include <random>

#include "oracles.hpp"
#include "shardgraph/bench/bench.hpp"
#include "shardgraph/graph/dgraph.hpp"
#include "shardgraph/node/machine_node.hpp"

namespace shardgraph {
namespace {

using oracle::PlainGraph;

std::unique_ptr<LocalCluster> MakeCluster(uint32_t k, InProcOptions bus = {}) {
  LocalClusterOptions o;
  o.machines = k;
  o.bus = bus;
  return std::make_unique<LocalCluster>(o);
}

struct Loaded {
  std::unique_ptr<LocalCluster> cluster;
  std::unique_ptr<DGraph> dg;
  ERGraph g;
  PlainGraph plain;
  std::unordered_map<VertexId, VertexRef> refs;
};

Loaded Load(uint32_t k, const ERSpec& spec, const std::string& placement = "random") {
  Loaded l;
  l.cluster = MakeCluster(k);
  l.dg = std::make_unique<DGraph>(l.cluster->transport());
  l.g = GenerateER(spec);
  l.plain = PlainGraph(l.g.vertices, l.g.edges);
  BenchIngest(*l.dg, l.g, PlacementChoice::Parse(placement));
  for (const auto& r : l.dg->all_vertices()) l.refs.emplace(r.id(), r);
  return l;
}

uint64_t StorageRequests(LocalCluster& c) { return c.transport().published(kStorageChannel); }

TEST(DGraph, AddVertexPlacement) {
  auto c = MakeCluster(4);
  DGraph dg(c->transport());
  EXPECT_EQ(dg.add_vertex({{"x", PropertyValue(1)}}, Explicit{MachineId{1}}).home().index, 1u);
  EXPECT_EQ(dg.add_vertex(77, {}, Explicit{MachineId{3}}).home().index, 3u);
  EXPECT_THROW(dg.add_vertex({}, Explicit{MachineId{4}}), Error);

  AttributeHash grid{{"lat", "lon"}, 1.0};
  auto a = dg.add_vertex({{"lat", PropertyValue(40.1)}, {"lon", PropertyValue(-74.2)}}, grid);
  auto b = dg.add_vertex({{"lat", PropertyValue(40.7)}, {"lon", PropertyValue(-74.9)}}, grid);
  EXPECT_EQ(a.home(), b.home());
  EXPECT_THROW(dg.add_vertex({{"lat", PropertyValue(1.0)}}, grid), Error);
}

TEST(DGraph, RandomHashPlacementRepeatsAcrossRuns) {
  std::vector<uint32_t> first, second;
  for (auto* out : {&first, &second}) {
    auto c = MakeCluster(4);
    DGraphOptions o;
    o.id_seed = 99;
    DGraph dg(c->transport(), Manifest::Default(), o);
    for (int i = 0; i < 50; ++i) out->push_back(dg.add_vertex({}, RandomHash{}).home().index);
  }
  EXPECT_EQ(first, second);
  EXPECT_GT(std::set<uint32_t>(first.begin(), first.end()).size(), 1u);
}

TEST(DGraph, AddEdgeWritesAtMostTwoHalves) {
  auto c = MakeCluster(3);
  DGraph dg(c->transport());
  auto a = dg.add_vertex(1, {}, Explicit{MachineId{0}});
  auto b = dg.add_vertex(2, {}, Explicit{MachineId{0}});
  auto x = dg.add_vertex(3, {}, Explicit{MachineId{2}});

  uint64_t before = StorageRequests(*c);
  auto local = dg.add_edge(a, b, "l", {{"w", PropertyValue(1.5)}});
  EXPECT_EQ(StorageRequests(*c) - before, 1u);
  EXPECT_TRUE(c->node(0).store().has_origin(local));
  EXPECT_EQ(c->node(0).store().stats().mirror_halves, 0u);

  before = StorageRequests(*c);
  auto cross = dg.add_edge(a, x, "l", {{"w", PropertyValue(2.5)}});
  EXPECT_EQ(StorageRequests(*c) - before, 2u);
  EXPECT_TRUE(c->node(0).store().has_origin(cross));
  EXPECT_TRUE(c->node(2).store().has_mirror(cross));
  EXPECT_FALSE(c->node(2).store().get_property(ElementClass::kEdge, cross, "w").has_value());
  EXPECT_EQ(c->node(0).store().get_property(ElementClass::kEdge, cross, "w")->as_float(), 2.5);
}

TEST(DGraph, AddEdgeToUnknownEndpointLeavesNoMirror) {
  auto c = MakeCluster(2);
  DGraph dg(c->transport());
  auto known = dg.add_vertex(1, {}, Explicit{MachineId{1}});
  auto ghost = MakeVertexRef(2, MachineId{0}, 2);
  try {
    dg.add_edge(ghost, known, "l", {}, EdgeId{500});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownVertex);
  }
  EXPECT_FALSE(c->node(1).store().has_mirror(500));
  EXPECT_TRUE(dg.get_neighbors(known, Direction::kIn).empty());
  EXPECT_THROW(dg.add_edge(known, ghost, "l"), Error);
}

TEST(DGraph, SelfLoopAppearsOncePerDirection) {
  auto c = MakeCluster(2);
  DGraph dg(c->transport());
  auto v = dg.add_vertex(5, {}, Explicit{MachineId{1}});
  const uint64_t before = StorageRequests(*c);
  auto e = dg.add_edge(v, v, "self");
  EXPECT_EQ(StorageRequests(*c) - before, 1u);
  auto out = dg.get_neighbors(v, Direction::kOut);
  auto in = dg.get_neighbors(v, Direction::kIn);
  auto both = dg.get_neighbors(v, Direction::kBoth);
  ASSERT_EQ(out.size(), 1u);
  ASSERT_EQ(in.size(), 1u);
  EXPECT_EQ(both.size(), 1u);  // kBoth dedupes by edge id
  EXPECT_EQ(out[0].edge, e);
  EXPECT_EQ(out[0].vertex, v);
}

TEST(DGraph, GetNeighborsIsOneRequestAndComplete) {
  auto l = Load(4, {6, 12, 30, 5});
  auto& dg = *l.dg;
  for (const auto& [id, ref] : l.refs) {
    for (auto d : {Direction::kOut, Direction::kIn, Direction::kBoth}) {
      const uint64_t before = StorageRequests(*l.cluster);
      auto ns = dg.get_neighbors(ref, d);
      ASSERT_EQ(StorageRequests(*l.cluster) - before, 1u);
      std::multiset<std::tuple<EdgeId, VertexId, Direction>> got;
      for (const auto& n : ns) {
        got.emplace(n.edge, n.vertex.id(), n.direction);
        EXPECT_EQ(n.vertex.home(), l.refs.at(n.vertex.id()).home());
      }
      ASSERT_EQ(got, l.plain.incidences(id, d)) << "vertex " << id;
    }
  }
}

TEST(DGraph, IsolatedVertexAndUnknownVertex) {
  auto c = MakeCluster(2);
  DGraph dg(c->transport());
  auto v = dg.add_vertex(8, {}, Explicit{MachineId{0}});
  EXPECT_TRUE(dg.get_neighbors(v, Direction::kBoth).empty());
  try {
    dg.get_neighbors(MakeVertexRef(9, MachineId{1}, 2), Direction::kOut);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownVertex);
  }
}

TEST(DGraph, QueryByAttributeEqualsFullScan) {
  auto l = Load(4, {20, 100, 300, 3});
  auto& dg = *l.dg;
  EXPECT_EQ(oracle::Ids(dg.query_by_attribute("speed", Predicate::Gt(500.0))),
            l.plain.scan("speed", Predicate::Gt(500.0)));
  EXPECT_TRUE(dg.query_by_attribute("speed", Predicate::Gt(5000.0)).empty());
  EXPECT_TRUE(dg.query_by_attribute("absent", Predicate::Eq(1)).empty());

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> speed(-50, 1050);
  std::uniform_int_distribution<int> kind(-1, 8), op(0, 5);
  for (int i = 0; i < 200; ++i) {
    Predicate p;
    std::string key;
    if (i % 2 == 0) {
      key = "speed";
      double a = speed(rng), b = speed(rng);
      p = {static_cast<CompareOp>(op(rng)), PropertyValue(std::min(a, b)), PropertyValue(std::max(a, b))};
    } else {
      key = "kind";
      int a = kind(rng), b = kind(rng);
      p = {static_cast<CompareOp>(op(rng)), PropertyValue(std::min(a, b)), PropertyValue(std::max(a, b))};
    }
    ASSERT_EQ(oracle::Ids(dg.query_by_attribute(key, p)), l.plain.scan(key, p)) << key << ' ' << p.to_string();
  }
}

TEST(DGraph, QueryTagMismatchPropagates) {
  auto l = Load(2, {2, 10, 20, 1});
  try {
    l.dg->query_by_attribute("speed", Predicate::Gt(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTagMismatch);
  }
}

TEST(DGraph, JointNeighborsTriangle) {
  auto c = MakeCluster(3);
  DGraph dg(c->transport());
  auto a = dg.add_vertex(1, {}, Explicit{MachineId{0}});
  auto b = dg.add_vertex(2, {}, Explicit{MachineId{1}});
  auto x = dg.add_vertex(3, {}, Explicit{MachineId{2}});
  dg.add_edge(a, b, "t");
  dg.add_edge(b, x, "t");
  dg.add_edge(a, x, "t");
  const uint64_t before = StorageRequests(*c);
  auto j = dg.joint_neighbors(a, b);
  EXPECT_LE(StorageRequests(*c) - before, 2u);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0], x);
  EXPECT_EQ(j[0].home().index, 2u);
}

TEST(DGraph, JointNeighborsMatchBruteForce) {
  for (const char* placement : {"random", "explicit-components"}) {
    auto l = Load(4, {3, 30, 120, 11}, placement);
    std::vector<VertexRef> all;
    for (const auto& [id, r] : l.refs) all.push_back(r);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
      const auto& a = all[rng() % all.size()];
      const auto& b = all[rng() % all.size()];
      const uint64_t before = StorageRequests(*l.cluster);
      auto got = l.dg->joint_neighbors(a, b);
      ASSERT_LE(StorageRequests(*l.cluster) - before, 2u);
      ASSERT_EQ(oracle::Ids(got), l.plain.joint(a.id(), b.id())) << a.id() << ',' << b.id();
      for (const auto& r : got) EXPECT_EQ(r.home(), l.refs.at(r.id()).home());
    }
  }
}

TEST(DGraph, MatchTriangleWithConstraintEqualsBruteForce) {
  auto l = Load(3, {1, 50, 200, 21});
  for (auto p : {oracle::Triangle(), oracle::Triangle({{"speed", Predicate::Gt(400.0)}}),
                 oracle::TwoPath({{"kind", Predicate::Le(3)}}), oracle::TwoPath()}) {
    auto got = l.dg->match_pattern(p);
    auto want = l.plain.match(p);
    EXPECT_FALSE(want.empty());
    EXPECT_EQ(oracle::Rows(p, got), want);
    EXPECT_EQ(got.size(), want.size());
  }
}

TEST(DGraph, MatchEdgeConstraintsAndLabels) {
  ERSpec spec{2, 20, 60, 4};
  spec.edge_attributes = true;
  auto l = Load(2, spec);
  Pattern p;
  p.vertices = {{"a", {}}, {"b", {{"kind", Predicate::Ge(2)}}}};
  p.edges = {{"a", "b", std::string("link"), {{"weight", Predicate::Lt(0.5)}}}};
  EXPECT_EQ(oracle::Rows(p, l.dg->match_pattern(p)), l.plain.match(p));
  p.edges[0].label = "other";
  EXPECT_TRUE(l.dg->match_pattern(p).empty());
}

TEST(DGraph, MatchSingleVertexAbsentKeyIsEmpty) {
  auto l = Load(2, {1, 10, 20, 2});
  Pattern p;
  p.vertices = {{"v", {{"nope", Predicate::Eq(1)}}}};
  EXPECT_TRUE(l.dg->match_pattern(p).empty());
}

TEST(DGraph, MatchSingleEdgeGivesOnePerDirectedEdge) {
  auto l = Load(4, {2, 15, 40, 8});
  Pattern p;
  p.vertices = {{"s", {}}, {"d", {}}};
  p.edges = {{"s", "d", std::nullopt, {}}};
  auto got = l.dg->match_pattern(p);
  std::set<std::vector<VertexId>> want;
  for (const auto& e : l.g.edges)
    if (e.src != e.dst) want.insert({e.src, e.dst});
  EXPECT_EQ(oracle::Rows(p, got), want);
  EXPECT_EQ(got.size(), l.g.edges.size());
}

TEST(DGraph, MatchRejectsCrossTagAndBadPatterns) {
  auto l = Load(2, {1, 10, 20, 2});
  Pattern p;
  p.vertices = {{"v", {{"speed", Predicate::Eq(3)}}}};
  try {
    l.dg->match_pattern(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTagMismatch);
  }
  Pattern disconnected;
  disconnected.vertices = {{"a", {}}, {"b", {}}};
  EXPECT_THROW(l.dg->match_pattern(disconnected), Error);
  Pattern dup;
  dup.vertices = {{"a", {}}, {"a", {}}};
  EXPECT_THROW(dup.validate(), Error);
}

TEST(Pattern, JsonRoundTrip) {
  auto j = nlohmann::json::parse(R"({
    "vertices": [{"var": "a", "where": [{"key": "speed", "op": "gt", "value": 500.0}]},
                 {"var": "b", "where": [{"key": "kind", "op": "range", "value": [1, 3]}]}],
    "edges": [{"src": "a", "dst": "b", "label": "link", "where": []}]})");
  auto p = Pattern::FromJson(j);
  ASSERT_EQ(p.vertices.size(), 2u);
  EXPECT_EQ(p.vertices[1].where[0].predicate.op, CompareOp::kRange);
  EXPECT_EQ(p.vertices[1].where[0].predicate.upper.as_int(), 3);
  EXPECT_EQ(p.edges[0].label, "link");
  auto back = Pattern::FromJson(p.to_json());
  EXPECT_EQ(back.to_json(), p.to_json());
  EXPECT_THROW(Pattern::FromJson(nlohmann::json::parse(R"({"vertices": [{"var": "a"}], "edges": [{"src": "a", "dst": "z"}]})")),
               Error);
}

TEST(DGraph, LocateAndLocality) {
  auto l = Load(1, {2, 10, 30, 1});
  EXPECT_EQ(l.dg->locate(3)->home().index, 0u);
  EXPECT_FALSE(l.dg->locate(1000).has_value());
  EXPECT_DOUBLE_EQ(l.dg->locality_report().overall, 1.0);
}

}  // namespace
}  // namespace shardgraph
