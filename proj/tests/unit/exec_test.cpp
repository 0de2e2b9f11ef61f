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

#include "oracles.hpp"
#include "shardgraph/analytics/analytics.hpp"
#include "shardgraph/bench/bench.hpp"
#include "shardgraph/exec/ego_builder.hpp"
#include "shardgraph/exec/jgraph_view.hpp"

namespace shardgraph {
namespace {

using namespace std::chrono_literals;

// Builtins plus a few functions that misbehave on purpose.
Manifest TestManifest() {
  auto j = nlohmann::json::parse(Manifest::Default().ToJson());
  j["analytics"].push_back(nlohmann::json::object({{"name", "touch-edges"}, {"kind", "neighborhood"}}));
  j["analytics"].push_back(nlohmann::json::object({{"name", "bad-edge-write"}, {"kind", "neighborhood"}}));
  j["analytics"].push_back(nlohmann::json::object({{"name", "fail-odd"}, {"kind", "neighborhood"}}));
  j["analytics"].push_back(nlohmann::json::object({{"name", "neighbor-sum"}, {"kind", "neighborhood"}}));
  j["analytics"].push_back(nlohmann::json::object({{"name", "throws"}, {"kind", "jgraph"}}));
  return Manifest::Parse(j.dump());
}

Registry TestRegistry() {
  Registry r = BuiltinRegistry();
  r.add_neighborhood("touch-edges", [](EgoGraph& g, const JobContext&) {
    for (const auto& e : g.edges()) g.write_edge(e.id, "seen", PropertyValue(1));
  });
  r.add_neighborhood("bad-edge-write", [](EgoGraph& g, const JobContext&) {
    g.write_edge(0xDEAD, "x", PropertyValue(1));
  });
  r.add_neighborhood("fail-odd", [](EgoGraph& g, const JobContext&) {
    if (g.root().id() % 2 == 1) throw std::runtime_error("odd root");
    g.write_root("even", PropertyValue(true));
  });
  // Root's new value is the sum of neighbor values (synchronous update).
  r.add_neighborhood("neighbor-sum", [](EgoGraph& g, const JobContext&) {
    int64_t sum = 0;
    for (const auto& n : g.neighbors()) sum += g.vertex_property(n.ref.id(), "x").value_or(PropertyValue(0)).as_int();
    g.write_root("x", PropertyValue(sum % 1000003));
  });
  r.add_jgraph("throws", [](JGraphView& v, const JobContext&) -> nlohmann::json {
    if (v.machine().index == 1) throw std::runtime_error("machine one refuses");
    return {{"ok", true}};
  });
  return r;
}

struct Env {
  std::unique_ptr<LocalCluster> cluster;
  std::unique_ptr<DGraph> dg;
  ERGraph g;

  Env(uint32_t k, const ERSpec& spec, size_t threads = 1, const std::string& placement = "random") {
    LocalClusterOptions o;
    o.machines = k;
    o.node.threads = threads;
    o.manifest = TestManifest();
    o.registry = TestRegistry();
    cluster = std::make_unique<LocalCluster>(o);
    DGraphOptions d;
    d.timeout = 10s;
    dg = std::make_unique<DGraph>(cluster->transport(), o.manifest, d);
    g = GenerateER(spec);
    BenchIngest(*dg, g, PlacementChoice::Parse(placement));
  }
};

TEST(JGraph, CountLocalVerticesPartitions) {
  Env env(4, {1, 100, 300, 1});
  auto r = env.dg->jobs().run_jgraph("count-local-vertices");
  ASSERT_TRUE(r.complete());
  ASSERT_EQ(r.results.size(), 4u);
  uint64_t sum = 0;
  for (const auto& [m, body] : r.results) sum += body.at("count").get<uint64_t>();
  EXPECT_EQ(sum, 100u);
}

TEST(JGraph, EdgeCutCountsEachCutEdgeTwice) {
  Env env(4, {5, 20, 60, 2});
  auto r = env.dg->jobs().run_jgraph("local-edge-cut");
  uint64_t sum = 0;
  for (const auto& [m, body] : r.results) sum += body.at("cut").get<uint64_t>();
  EXPECT_EQ(sum, 2 * env.dg->locality_report().edge_cut);
  EXPECT_GT(sum, 0u);
}

TEST(JGraph, SingleMachineMatchesStandalone) {
  Env env(1, {3, 20, 50, 3});
  auto r = env.dg->jobs().run_jgraph("local-degree-sum");
  ASSERT_EQ(r.results.size(), 1u);
  EXPECT_EQ(r.results[0].at("outDegreeSum").get<uint64_t>(), env.g.edges.size());
}

TEST(JGraph, ViewIsLocalIterationWithCompleteNeighbors) {
  Env env(3, {4, 15, 40, 4});
  oracle::PlainGraph plain(env.g.vertices, env.g.edges);
  std::set<VertexId> seen;
  for (uint32_t m = 0; m < 3; ++m) {
    RpcClient rpc(env.cluster->transport());
    StorageClient sc(rpc, 5s);
    JGraphView view(env.cluster->node(m).store(), sc);
    for (const auto& v : view.vertices()) {
      EXPECT_TRUE(view.is_local(v));
      EXPECT_TRUE(seen.insert(v.id()).second);
      std::set<VertexId> ns;
      for (const auto& n : view.neighbors(v, Direction::kBoth)) {
        ns.insert(n.vertex.id());
        if (!view.is_local(n.vertex)) {
          // remote neighbors are readable through the view too
          EXPECT_EQ(view.neighbors(n.vertex, Direction::kBoth).empty(), false);
          EXPECT_TRUE(view.vertex_property(n.vertex, "speed").has_value());
        }
      }
      EXPECT_EQ(ns, plain.neighbors(v.id(), Direction::kBoth));
    }
  }
  EXPECT_EQ(seen.size(), env.g.vertices.size());
}

TEST(JGraph, FailuresAndMissingMachinesAreReported) {
  Env env(3, {1, 10, 20, 5});
  auto r = env.dg->jobs().run_jgraph("throws");
  EXPECT_EQ(r.results.size(), 2u);
  ASSERT_TRUE(r.failures.contains(1));
  EXPECT_NE(r.failures[1].find("refuses"), std::string::npos);

  DGraphOptions quick;
  quick.timeout = 200ms;
  DGraph dg(env.cluster->transport(), TestManifest(), quick);
  env.cluster->set_enabled(2, false);
  auto partial = dg.jobs().run_jgraph("count-local-vertices");
  EXPECT_EQ(partial.results.size(), 2u);
  ASSERT_EQ(partial.missing, std::vector<uint32_t>{2});
  auto live = dg.jobs().run_jgraph("count-local-vertices", {}, {0, 1});
  EXPECT_TRUE(live.complete());
}

TEST(JGraph, UnknownAnalytic) {
  Env env(4, {1, 10, 20, 6});
  try {
    env.dg->jobs().run_jgraph("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownAnalytic);
  }
  // Bypassing the manifest, every machine reports the error itself.
  JobSpec s;
  s.kind = "jgraph";
  s.analytic = "nope";
  auto g = env.dg->jobs().channel().run(s, 2s);
  ASSERT_EQ(g.results.size(), 4u);
  EXPECT_EQ(g.failed().size(), 4u);
}

TEST(JGraph, ResultsNotWanted) {
  Env env(2, {1, 10, 20, 6});
  JobSpec s;
  s.kind = "jgraph";
  s.analytic = "count-local-vertices";
  s.results_wanted = false;
  auto& ch = env.dg->jobs().channel();
  const auto start = std::chrono::steady_clock::now();
  auto id = ch.broadcast(s);
  auto g = ch.gather(id, {}, 1s);
  EXPECT_TRUE(g.results.empty());
  EXPECT_LT(std::chrono::steady_clock::now() - start, 500ms);
}

TEST(JGraph, ManifestValidatesParameters) {
  const auto m = Manifest::Default();
  EXPECT_NO_THROW(m.validate("cc-step", JobKind::kNeighborhood, {{"key", PropertyValue("c")}}));
  EXPECT_THROW(m.validate("cc-step", JobKind::kNeighborhood, {{"key", PropertyValue(3)}}), Error);
  EXPECT_THROW(m.validate("cc-step", JobKind::kNeighborhood, {{"other", PropertyValue("c")}}), Error);
  EXPECT_THROW(m.validate("cc-step", JobKind::kJGraph, {}), Error);
  EXPECT_THROW(Manifest::Parse(R"({"analytics": [{"name": "x", "kind": "batch"}]})"), Error);
  EXPECT_THROW(BuiltinRegistry().restricted_to(TestManifest()), Error);
  EXPECT_EQ(Manifest::Parse(m.ToJson()).ToJson(), m.ToJson());
}

TEST(EgoGraph, BuilderHonorsRequest) {
  Env env(3, {2, 20, 100, 7});
  oracle::PlainGraph plain(env.g.vertices, env.g.edges);
  RpcClient rpc(env.cluster->transport());
  StorageClient sc(rpc, 5s);
  auto& store = env.cluster->node(1).store();
  auto roots = store.local_vertices();
  ASSERT_FALSE(roots.empty());

  EgoBuilder none(store, sc, EgoSpec{});
  auto g0 = none.build_one(roots[0]);
  EXPECT_TRUE(g0.edges().empty());
  EXPECT_TRUE(g0.neighbors().empty());
  EXPECT_EQ(g0.label(roots[0].id()), "root");

  EgoBuilder both(store, sc, EgoSpec{Direction::kBoth, {{ElementClass::kVertex, "kind"}}});
  auto gs = both.build(roots);
  for (const auto& g : gs) {
    EXPECT_EQ(g.edges().size(), plain.incidences(g.root().id(), Direction::kBoth).size());
    EXPECT_TRUE(g.vertex_property(g.root().id(), "kind").has_value());
    for (const auto& n : g.neighbors()) {
      EXPECT_TRUE(g.vertex_property(n.ref.id(), "kind").has_value());
      EXPECT_FALSE(g.vertex_property(n.ref.id(), "speed").has_value());
    }
    g.validate();
  }
  // One request per remote shard for the whole batch.
  EXPECT_LE(both.remote_requests(), 2u);

  EgoBuilder out(store, sc, EgoSpec{Direction::kOut, {}});
  for (const auto& g : out.build(roots)) {
    for (const auto& e : g.edges()) EXPECT_EQ(e.src, g.root());
  }

  auto foreign = env.cluster->node(0).store().local_vertices().at(0);
  try {
    both.build_one(foreign);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWrongHome);
  }
  EXPECT_THROW(both.build_one(MakeVertexRef(999999, MachineId{1}, 3)), Error);
}

TEST(Neighborhood, IdentityChangesNothing) {
  Env env(3, {2, 20, 60, 8});
  auto s = env.dg->jobs().run_neighborhood("identity", EgoSpec{Direction::kBoth, {}});
  EXPECT_EQ(s.vertices_processed, 40u);
  EXPECT_EQ(s.vertices_changed, 0u);
  EXPECT_TRUE(s.failures.empty());
  EXPECT_TRUE(env.dg->query_by_attribute("c", Predicate::Eq(1)).empty());
}

TEST(Neighborhood, SetConstantCoversEveryVertex) {
  Env env(4, {3, 30, 90, 9}, 2);
  Params p{{"key", PropertyValue("c")}, {"value", PropertyValue(1)}};
  auto s = env.dg->jobs().run_neighborhood("set-constant", EgoSpec{}, p);
  EXPECT_EQ(s.vertices_processed, 90u);
  EXPECT_EQ(s.vertices_changed, 90u);
  uint64_t sum = 0;
  for (const auto& [m, n] : s.processed_per_machine) sum += n;
  EXPECT_EQ(sum, 90u);
  EXPECT_EQ(env.dg->query_by_attribute("c", Predicate::Eq(1)).size(), 90u);
  auto again = env.dg->jobs().run_neighborhood("set-constant", EgoSpec{}, p);
  EXPECT_EQ(again.vertices_changed, 0u);
}

TEST(Neighborhood, RunsOnTheRootsHome) {
  Env env(4, {2, 25, 50, 10}, 3);
  env.dg->jobs().run_neighborhood("record-machine", EgoSpec{});
  size_t checked = 0;
  for (const auto& v : env.dg->all_vertices()) {
    auto rows = env.dg->storage().get_props(v.home().index, ElementClass::kVertex, std::vector<ElementId>{v.id()},
                                            std::vector<std::string>{"ran_on"});
    ASSERT_TRUE(rows[0][0].has_value());
    EXPECT_EQ(rows[0][0]->as_int(), static_cast<int64_t>(v.home().index));
    ++checked;
  }
  EXPECT_EQ(checked, 50u);
}

TEST(Neighborhood, EdgeWritesLandAtTheSourceHome) {
  Env env(3, {2, 15, 40, 11});
  auto s = env.dg->jobs().run_neighborhood("touch-edges", EgoSpec{Direction::kBoth, {}});
  EXPECT_TRUE(s.failures.empty());
  for (uint32_t m = 0; m < 3; ++m) {
    auto audit = env.dg->storage().edge_audit(m);
    std::set<EdgeId> origins;
    for (const auto& e : audit.origins) origins.insert(e.id);
    EXPECT_EQ(std::set<EdgeId>(audit.attributed.begin(), audit.attributed.end()), origins);
  }
}

TEST(Neighborhood, FailuresAreRecordedPerVertex) {
  Env env(2, {1, 20, 40, 12});
  auto bad = env.dg->jobs().run_neighborhood("bad-edge-write", EgoSpec{Direction::kBoth, {}});
  EXPECT_EQ(bad.failures.size(), 20u);
  EXPECT_EQ(bad.vertices_changed, 0u);

  auto odd = env.dg->jobs().run_neighborhood("fail-odd", EgoSpec{});
  EXPECT_EQ(odd.vertices_processed, 20u);
  EXPECT_EQ(odd.failures.size(), 10u);
  for (const auto& f : odd.failures) EXPECT_EQ(f.vertex % 2, 1u);
  EXPECT_EQ(odd.vertices_changed, 10u);
}

TEST(Neighborhood, UnavailableMachineAbortsTheIteration) {
  Env env(3, {1, 12, 30, 13});
  DGraphOptions quick;
  quick.timeout = 200ms;
  DGraph dg(env.cluster->transport(), TestManifest(), quick);
  env.cluster->set_enabled(1, false);
  try {
    dg.jobs().run_neighborhood("set-constant", EgoSpec{}, {{"key", PropertyValue("z")}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnavailable);
    EXPECT_NE(std::string(e.what()).find('1'), std::string::npos);
  }
  env.cluster->set_enabled(1, true);
  EXPECT_TRUE(dg.query_by_attribute("z", Predicate::Eq(1)).empty());
}

// Synchronous model: every vertex reads the previous iteration's values.
std::map<VertexId, int64_t> SimulateNeighborSum(const ERGraph& g, std::map<VertexId, int64_t> x, int iterations) {
  oracle::PlainGraph plain(g.vertices, g.edges);
  for (int it = 0; it < iterations; ++it) {
    std::map<VertexId, int64_t> next;
    for (const auto& v : g.vertices) {
      int64_t sum = 0;
      for (const auto& [e, other, d] : plain.incidences(v.id, Direction::kBoth)) sum += x[other];
      next[v.id] = sum % 1000003;
    }
    x = std::move(next);
  }
  return x;
}

TEST(Neighborhood, WritesBecomeVisibleAtTheNextIteration) {
  Env env(4, {3, 20, 50, 14}, 2);
  std::map<VertexId, int64_t> x;
  std::vector<PropertyWrite> writes;
  for (const auto& v : env.g.vertices) x[v.id] = static_cast<int64_t>(v.id % 7);
  for (const auto& v : env.dg->all_vertices()) {
    env.dg->storage().set_props(v.home().index, ElementClass::kVertex, {{v.id(), "x", PropertyValue(x[v.id()])}});
  }
  EgoSpec spec{Direction::kBoth, {{ElementClass::kVertex, "x"}}};
  for (int it = 1; it <= 3; ++it) {
    env.dg->jobs().run_neighborhood("neighbor-sum", spec);
    EXPECT_EQ(GatherIntProperty(env.dg->storage(), "x"), SimulateNeighborSum(env.g, x, it)) << "iteration " << it;
  }
}

TEST(Neighborhood, OutcomeIndependentOfOrder) {
  std::vector<std::map<VertexId, int64_t>> states;
  for (uint64_t shuffle : {0ULL, 17ULL, 99ULL}) {
    Env env(3, {4, 20, 60, 15}, 4);
    auto& jobs = env.dg->jobs();
    jobs.run_neighborhood("cc-init", EgoSpec{Direction::kBoth, {}}, {}, shuffle);
    jobs.run_neighborhood("cc-step", EgoSpec{Direction::kBoth, {{ElementClass::kVertex, kComponentKey}}}, {}, shuffle);
    states.push_back(GatherIntProperty(env.dg->storage(), kComponentKey));
  }
  EXPECT_EQ(states[0], states[1]);
  EXPECT_EQ(states[0], states[2]);
}

}  // namespace
}  // namespace shardgraph
