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

// shardgraph: cluster lifecycle, graph generation, ingest, queries and
// benchmarks. Every verb prints a JSON summary on stdout; verbs with --out
// also write CSV files there.

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "session.hpp"
#include "shardgraph/bench/bench.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace shardgraph;
using shardgraph::cli::Session;
using shardgraph::cli::SessionOptions;

std::atomic<bool> g_stop{false};

void OnSignal(int) { g_stop = true; }

void WriteFile(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

void Emit(const json& j) { std::cout << j.dump(2) << std::endl; }

json CheckJson(const IngestCheck& c) {
  return {{"verticesPerShard", c.vertices_per_shard},
          {"elementsPerShard", c.elements_per_shard},
          {"mirrors", c.mirrors},
          {"maxImbalance", c.max_imbalance}};
}

json LocalityJson(const LocalityReport& r) {
  json per = json::array();
  for (const auto& m : r.per_machine) {
    per.push_back({{"machine", m.machine.index}, {"localFraction", m.local_fraction}, {"edgeCut", m.edge_cut}});
  }
  return {{"overall", r.overall},
          {"vertexLocalFraction", r.vertex_local_fraction},
          {"edgeCut", r.edge_cut},
          {"totalEdges", r.total_edges},
          {"perMachine", per}};
}

json RowJson(const BenchRow& r) {
  return {{"clusterSize", r.cluster_size}, {"bench", r.bench},         {"placement", r.placement},
          {"elements", r.elements},        {"elapsedSeconds", r.seconds}, {"throughput", r.throughput}};
}

// Flags shared by every verb that talks to a cluster.
void AddSessionFlags(CLI::App* app, SessionOptions& s) {
  app->add_option("--connect", s.connect, "membership file of a running TCP cluster");
  app->add_option("--data", s.data, "directory holding the shard logs of an in-process cluster");
  app->add_option("--nodes", s.nodes, "machines of an in-process cluster (default 4)");
  app->add_option("--manifest", s.manifest, "analytic manifest (default: builtins)");
  app->add_option("--threads", s.threads, "workers per machine for neighborhood jobs");
  app->add_option("--timeout-ms", s.timeout_ms, "reply timeout");
}

struct ClusterStartArgs {
  uint32_t nodes = 0;
  std::string transport = "inproc";
  std::optional<fs::path> config;
  std::optional<fs::path> data;
  std::optional<fs::path> manifest;
  std::vector<uint32_t> host;
  uint16_t base_port = 7400;
  size_t threads = 1;
  double duration = 0;
};

int ClusterStart(const ClusterStartArgs& a) {
  if (a.transport == "inproc") {
    SessionOptions s;
    s.data = a.data;
    if (a.nodes > 0) s.nodes = a.nodes;
    s.manifest = a.manifest;
    Session session(s);
    json stats = json::array();
    for (const auto& st : session.graph().shard_stats()) {
      stats.push_back({{"vertices", st.vertices}, {"originHalves", st.origin_halves}, {"mirrorHalves", st.mirror_halves}});
    }
    Emit({{"transport", "inproc"}, {"nodes", session.size()}, {"data", a.data ? a.data->string() : ""}, {"shards", stats}});
    return 0;
  }
  if (a.transport != "tcp") throw Error(ErrorCode::kInvalidArgument, "unknown transport '" + a.transport + "'");
  if (!a.config) throw Error(ErrorCode::kInvalidArgument, "--transport tcp needs --config");

  Membership membership;
  if (fs::exists(*a.config)) {
    membership = Membership::Load(*a.config);
    if (a.nodes > 0 && a.nodes != membership.size()) {
      throw Error(ErrorCode::kInvalidArgument, a.config->string() + " lists " + std::to_string(membership.size()) +
                                                   " machines, not " + std::to_string(a.nodes));
    }
  } else {
    if (a.nodes == 0) throw Error(ErrorCode::kInvalidArgument, "--nodes is needed to create " + a.config->string());
    for (uint32_t i = 0; i < a.nodes; ++i) {
      membership.nodes.push_back({i, "127.0.0.1", static_cast<uint16_t>(a.base_port + i)});
    }
    WriteFile(*a.config, membership.ToJson() + "\n");
  }

  std::vector<uint32_t> hosted = a.host;
  if (hosted.empty()) {
    for (uint32_t i = 0; i < membership.size(); ++i) hosted.push_back(i);
  }
  const auto manifest = cli::LoadManifest(a.manifest);
  const auto registry = BuiltinRegistry().restricted_to(manifest);
  NodeOptions node;
  node.threads = a.threads;
  node.data_dir = a.data;

  TcpTransport transport(membership);
  std::vector<std::unique_ptr<MachineNode>> nodes;
  for (auto i : hosted) {
    if (i >= membership.size()) throw Error(ErrorCode::kOutOfRange, "machine " + std::to_string(i) + " not in config");
    nodes.push_back(std::make_unique<MachineNode>(MachineId{i}, transport, registry, node));
  }
  Emit({{"transport", "tcp"}, {"config", a.config->string()}, {"nodes", membership.size()}, {"hosted", hosted}});

  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  const auto until = std::chrono::steady_clock::now() + std::chrono::duration<double>(a.duration);
  while (!g_stop && (a.duration <= 0 || std::chrono::steady_clock::now() < until)) {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  for (auto& n : nodes) n->shutdown();
  return 0;
}

struct GenArgs {
  ERSpec spec;
  fs::path out;
};

int GenEr(const GenArgs& a) {
  const auto g = GenerateER(a.spec);
  WriteGraph(g, a.out);
  Emit({{"out", a.out.string()},
        {"vertices", g.vertices.size()},
        {"edges", g.edges.size()},
        {"elements", g.elements()},
        {"redraws", g.redraws},
        {"disconnected", g.disconnected},
        {"generator", g.spec.to_json()}});
  return 0;
}

int Ingest(const SessionOptions& s, const fs::path& in, const std::string& placement) {
  const auto g = ReadGraph(in);
  Session session(s);
  IngestCheck check;
  const auto row = BenchIngest(session.graph(), g, PlacementChoice::Parse(placement), &check);
  Emit({{"mode", session.mode()}, {"ingest", RowJson(row)}, {"check", CheckJson(check)},
        {"locality", LocalityJson(session.graph().locality_report())}});
  return 0;
}

struct BenchArgs {
  ERSpec spec{10, 100, 1000, 0, false};
  std::vector<uint32_t> nodes{1, 2, 4};
  std::string placement = "random";
  std::string policy_a = "random";
  std::string policy_b = "explicit-components";
  size_t threads = 1;
  std::optional<fs::path> out;
};

std::unique_ptr<LocalCluster> FreshCluster(uint32_t k, size_t threads) {
  LocalClusterOptions o;
  o.machines = k;
  o.node.threads = threads;
  return std::make_unique<LocalCluster>(o);
}

int Bench(const std::string& kind, const BenchArgs& a) {
  const auto g = GenerateER(a.spec);
  BenchReport report;
  report.summary["generator"] = a.spec.to_json();
  report.summary["bench"] = kind;

  if (kind == "locality") {
    const uint32_t k = a.nodes.empty() ? 4 : a.nodes.back();
    NodeOptions node;
    node.threads = a.threads;
    const auto pa = PlacementChoice::Parse(a.policy_a);
    const auto pb = PlacementChoice::Parse(a.policy_b);
    const auto [ra, rb] = BenchLocality(g, k, pa, pb, node);
    report.summary["clusterSize"] = k;
    report.summary[pa.name()] = LocalityJson(ra);
    report.summary[pb.name()] = LocalityJson(rb);
    if (a.out) {
      WriteFile(*a.out / "locality.csv", LocalityPairCsv(ra, pa.name(), rb, pb.name()));
      WriteFile(*a.out / "summary.json", report.summary.dump(2) + "\n");
    }
    Emit(report.summary);
    return 0;
  }
  if (kind != "ingest" && kind != "cc") throw Error(ErrorCode::kInvalidArgument, "unknown bench '" + kind + "'");

  const auto placement = PlacementChoice::Parse(a.placement);
  json configs = json::array();
  for (auto k : a.nodes) {
    auto cluster = FreshCluster(k, a.threads);
    DGraph dg(cluster->transport(), cluster->manifest());
    IngestCheck check;
    auto row = BenchIngest(dg, g, placement, &check);
    json c = {{"ingest", RowJson(row)}, {"check", CheckJson(check)}};
    if (kind == "cc") {
      auto cc = BenchCC(dg, g);
      cc.row.placement = placement.name();
      row = cc.row;
      c["cc"] = RowJson(row);
      c["iterations"] = cc.cc.iterations;
      c["changed"] = cc.cc.changed;
      c["verified"] = cc.verified;
    }
    report.rows.push_back(row);
    configs.push_back(c);
  }
  report.summary["configurations"] = configs;
  if (a.out) {
    WriteFile(*a.out / ("bench-" + kind + ".csv"), report.csv());
    WriteFile(*a.out / "summary.json", report.summary.dump(2) + "\n");
  }
  Emit(report.summary);
  return 0;
}

int QueryPattern(const SessionOptions& s, const fs::path& file, size_t limit) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + file.string());
  json pj;
  try {
    pj = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, "bad pattern file: " + std::string(e.what()));
  }
  const auto pattern = Pattern::FromJson(pj);
  Session session(s);
  const auto bindings = session.graph().match_pattern(pattern);
  json rows = json::array();
  for (size_t i = 0; i < bindings.size() && (limit == 0 || i < limit); ++i) {
    json b = json::object();
    for (const auto& [var, ref] : bindings[i]) b[var] = ref.id();
    rows.push_back(b);
  }
  Emit({{"count", bindings.size()}, {"bindings", rows}});
  return 0;
}

int QueryJoint(const SessionOptions& s, VertexId a, VertexId b) {
  Session session(s);
  auto& dg = session.graph();
  const auto ra = dg.locate(a);
  const auto rb = dg.locate(b);
  if (!ra) throw Error(ErrorCode::kUnknownVertex, "vertex " + std::to_string(a) + " not found");
  if (!rb) throw Error(ErrorCode::kUnknownVertex, "vertex " + std::to_string(b) + " not found");
  std::vector<VertexId> ids;
  for (const auto& r : dg.joint_neighbors(*ra, *rb)) ids.push_back(r.id());
  Emit({{"a", a}, {"b", b}, {"joint", ids}});
  return 0;
}

int CcRun(const SessionOptions& s, bool verify, const std::optional<fs::path>& out) {
  Session session(s);
  auto& dg = session.graph();
  const auto cc = ConnectedComponents(dg.jobs(), dg.storage());
  std::set<VertexId> labels;
  double seconds = 0;
  for (const auto& [v, c] : cc.labels) labels.insert(c);
  for (const auto& st : cc.stats) seconds += st.elapsed.count();
  json summary = {{"vertices", cc.labels.size()},
                  {"components", labels.size()},
                  {"iterations", cc.iterations},
                  {"changed", cc.changed},
                  {"elapsedSeconds", seconds}};
  if (verify) {
    // The oracle sees exactly what the shards store.
    std::vector<IngestVertex> vertices;
    std::vector<IngestEdge> edges;
    for (const auto& v : dg.all_vertices()) vertices.push_back({v.id(), {}});
    for (uint32_t m = 0; m < dg.cluster_size(); ++m) {
      for (const auto& e : dg.storage().edge_audit(m).origins) edges.push_back({e.id, e.src.id(), e.dst.id(), e.label, {}});
    }
    const bool ok = UnionFindComponents(vertices, edges) == cc.labels;
    summary["verified"] = ok;
    if (!ok) {
      Emit(summary);
      std::cerr << "labels differ from union-find\n";
      return 1;
    }
  }
  if (out) {
    std::ostringstream csv;
    WriteComponentsCsv(csv, cc.labels);
    WriteFile(*out, csv.str());
    summary["out"] = out->string();
  }
  Emit(summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shardgraph: a sharded property-graph engine"};
  app.require_subcommand(1);

  auto* cluster = app.add_subcommand("cluster", "cluster lifecycle");
  cluster->require_subcommand(1);
  ClusterStartArgs start;
  auto* cstart = cluster->add_subcommand("start", "start machines");
  cstart->add_option("--nodes", start.nodes, "machines in the cluster");
  cstart->add_option("--transport", start.transport, "inproc or tcp")->check(CLI::IsMember({"inproc", "tcp"}));
  cstart->add_option("--config", start.config, "membership file; created when missing");
  cstart->add_option("--data", start.data, "directory for shard logs");
  cstart->add_option("--manifest", start.manifest, "analytic manifest");
  cstart->add_option("--host", start.host, "machine indices to run here (default: all)")->delimiter(',');
  cstart->add_option("--base-port", start.base_port, "first port when creating a config");
  cstart->add_option("--threads", start.threads, "workers per machine for neighborhood jobs");
  cstart->add_option("--duration", start.duration, "seconds to serve; 0 waits for a signal");

  auto* gen = app.add_subcommand("gen", "generate graphs");
  gen->require_subcommand(1);
  GenArgs gargs;
  auto* ger = gen->add_subcommand("er", "Erdos-Renyi G(n, M) components");
  ger->add_option("--components", gargs.spec.components)->required();
  ger->add_option("--vpc", gargs.spec.vertices_per_component, "vertices per component");
  ger->add_option("--epc", gargs.spec.edges_per_component, "edges per component");
  ger->add_option("--seed", gargs.spec.seed);
  ger->add_flag("--edge-attrs", gargs.spec.edge_attributes, "add a float weight to every edge");
  ger->add_option("--out", gargs.out)->required();

  SessionOptions session;
  fs::path ingest_in;
  std::string ingest_placement = "random";
  auto* ingest = app.add_subcommand("ingest", "load a generated graph");
  AddSessionFlags(ingest, session);
  ingest->add_option("--in", ingest_in, "directory written by gen er")->required();
  ingest->add_option("--placement", ingest_placement, "random, explicit-components or attr:KEY");

  BenchArgs bargs;
  std::string bench_kind;
  auto* bench = app.add_subcommand("bench", "benchmarks on fresh in-process clusters");
  bench->add_option("kind", bench_kind, "ingest, cc or locality")
      ->required()
      ->check(CLI::IsMember({"ingest", "cc", "locality"}));
  bench->add_option("--components", bargs.spec.components);
  bench->add_option("--vpc", bargs.spec.vertices_per_component);
  bench->add_option("--epc", bargs.spec.edges_per_component);
  bench->add_option("--seed", bargs.spec.seed);
  bench->add_option("--nodes", bargs.nodes, "cluster sizes, e.g. 1,2,4 (locality uses the last)")->delimiter(',');
  bench->add_option("--placement", bargs.placement);
  bench->add_option("--policy-a", bargs.policy_a);
  bench->add_option("--policy-b", bargs.policy_b);
  bench->add_option("--threads", bargs.threads);
  bench->add_option("--out", bargs.out, "directory for CSV and summary.json");

  auto* query = app.add_subcommand("query", "queries against a cluster");
  query->require_subcommand(1);
  fs::path pattern_file;
  size_t limit = 0;
  auto* qpattern = query->add_subcommand("pattern", "attribute-constrained subgraph match");
  AddSessionFlags(qpattern, session);
  qpattern->add_option("--file", pattern_file)->required();
  qpattern->add_option("--limit", limit, "bindings to print; 0 prints all");
  VertexId joint_a = 0, joint_b = 0;
  auto* qjoint = query->add_subcommand("joint", "common neighbors of two vertices");
  AddSessionFlags(qjoint, session);
  qjoint->add_option("--a", joint_a)->required();
  qjoint->add_option("--b", joint_b)->required();

  auto* cc = app.add_subcommand("cc", "connected components");
  cc->require_subcommand(1);
  bool verify = false;
  std::optional<fs::path> cc_out;
  auto* ccrun = cc->add_subcommand("run", "label propagation until stable");
  AddSessionFlags(ccrun, session);
  ccrun->add_flag("--verify", verify, "compare with union-find over the stored edges");
  ccrun->add_option("--out", cc_out, "vertexId,component CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cstart->parsed()) return ClusterStart(start);
    if (ger->parsed()) return GenEr(gargs);
    if (ingest->parsed()) return Ingest(session, ingest_in, ingest_placement);
    if (bench->parsed()) return Bench(bench_kind, bargs);
    if (qpattern->parsed()) return QueryPattern(session, pattern_file, limit);
    if (qjoint->parsed()) return QueryJoint(session, joint_a, joint_b);
    if (ccrun->parsed()) return CcRun(session, verify, cc_out);
  } catch (const Error& e) {
    std::cerr << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
