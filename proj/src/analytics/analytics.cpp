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

#include "shardgraph/analytics/analytics.hpp"

#include <algorithm>

#include "shardgraph/exec/jgraph_view.hpp"

namespace shardgraph {

using nlohmann::json;

namespace {

std::string KeyParam(const JobContext& ctx, const char* fallback) {
  auto it = ctx.params.find("key");
  return it == ctx.params.end() ? std::string(fallback) : it->second.as_string();
}

int64_t AsSigned(VertexId id) { return static_cast<int64_t>(id); }

}  // namespace

void RegisterBuiltins(Registry& r) {
  r.add_jgraph("count-local-vertices", [](JGraphView& g, const JobContext&) -> json {
    return {{"count", g.vertex_count()}};
  });
  // Each cut edge is counted once by each of its two machines.
  r.add_jgraph("local-edge-cut", [](JGraphView& g, const JobContext&) -> json {
    const auto c = g.store().locality_counts();
    const auto s = g.store().stats();
    return {{"cut", c.origin_edges - c.colocated_edges + s.mirror_halves}};
  });
  r.add_jgraph("local-degree-sum", [](JGraphView& g, const JobContext&) -> json {
    uint64_t out = 0;
    for (const auto& v : g.vertices()) out += g.neighbors(v, Direction::kOut).size();
    return {{"outDegreeSum", out}};
  });

  r.add_neighborhood("identity", [](EgoGraph&, const JobContext&) {});
  r.add_neighborhood("set-constant", [](EgoGraph& g, const JobContext& ctx) {
    auto it = ctx.params.find("value");
    g.write_root(KeyParam(ctx, "c"), it == ctx.params.end() ? PropertyValue(int64_t{1}) : it->second);
  });
  r.add_neighborhood("record-machine", [](EgoGraph& g, const JobContext& ctx) {
    g.write_root(KeyParam(ctx, "ran_on"), PropertyValue(static_cast<int64_t>(ctx.machine.index)));
  });

  r.add_neighborhood("cc-init", [](EgoGraph& g, const JobContext& ctx) {
    VertexId best = g.root().id();
    for (const auto& n : g.neighbors()) best = std::min(best, n.ref.id());
    g.write_root(KeyParam(ctx, kComponentKey), PropertyValue(AsSigned(best)));
  });
  r.add_neighborhood("cc-step", [](EgoGraph& g, const JobContext& ctx) {
    const std::string key = KeyParam(ctx, kComponentKey);
    auto own = g.vertex_property(g.root().id(), key);
    if (!own) throw Error(ErrorCode::kMissingAttribute, "root has no '" + key + "'");
    int64_t best = own->as_int();
    for (const auto& n : g.neighbors()) {
      if (auto c = g.vertex_property(n.ref.id(), key)) best = std::min(best, c->as_int());
    }
    if (best < own->as_int()) g.write_root(key, PropertyValue(best));
  });

  r.add_neighborhood("degree-count", [](EgoGraph& g, const JobContext&) {
    int64_t in = 0, out = 0;
    for (const auto& n : g.neighbors()) (n.direction == Direction::kOut ? out : in) += 1;
    g.write_root(kInDegreeKey, PropertyValue(in));
    g.write_root(kOutDegreeKey, PropertyValue(out));
  });
}

Registry BuiltinRegistry() {
  Registry r;
  RegisterBuiltins(r);
  return r;
}

std::map<VertexId, int64_t> GatherIntProperty(StorageClient& storage, const std::string& key) {
  std::map<VertexId, int64_t> out;
  for (uint32_t m = 0; m < storage.cluster_size(); ++m) {
    for (const auto& [id, v] : storage.scan_all(m, ElementClass::kVertex, key)) out[id] = v.as_int();
  }
  return out;
}

CCResult ConnectedComponents(JobDriver& jobs, StorageClient& storage, const std::string& key) {
  CCResult res;
  const Params params{{"key", PropertyValue(key)}};
  EgoSpec init_spec{Direction::kBoth, {}};
  EgoSpec step_spec{Direction::kBoth, {{ElementClass::kVertex, key}}};

  auto init = jobs.run_neighborhood("cc-init", init_spec, params);
  res.iterations = 1;
  res.changed.push_back(init.vertices_changed);
  res.stats.push_back(init);
  if (!init.failures.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cc-init failed on vertex " + std::to_string(init.failures.front().vertex) +
                                                 ": " + init.failures.front().error);
  }
  // The initial pass always runs a follow-up, so stale labels from an
  // earlier run that happen to equal the initial ones are still propagated.
  if (init.vertices_processed > 0) {
    for (;;) {
      auto step = jobs.run_neighborhood("cc-step", step_spec, params);
      ++res.iterations;
      res.changed.push_back(step.vertices_changed);
      res.stats.push_back(step);
      if (!step.failures.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "cc-step failed on vertex " +
                                                     std::to_string(step.failures.front().vertex) + ": " +
                                                     step.failures.front().error);
      }
      if (step.vertices_changed == 0) break;
    }
  }
  for (const auto& [id, c] : GatherIntProperty(storage, key)) res.labels[id] = static_cast<VertexId>(c);
  return res;
}

std::map<VertexId, Degree> DegreeCount(JobDriver& jobs, StorageClient& storage) {
  jobs.run_neighborhood("degree-count", EgoSpec{Direction::kBoth, {}});
  auto in = GatherIntProperty(storage, kInDegreeKey);
  auto out = GatherIntProperty(storage, kOutDegreeKey);
  std::map<VertexId, Degree> res;
  for (const auto& [id, v] : in) res[id].in = static_cast<uint64_t>(v);
  for (const auto& [id, v] : out) res[id].out = static_cast<uint64_t>(v);
  return res;
}

void WriteComponentsCsv(std::ostream& out, const std::map<VertexId, VertexId>& labels) {
  out << "vertexId,component\n";
  for (const auto& [id, c] : labels) out << id << ',' << c << '\n';
}

}  // namespace shardgraph
