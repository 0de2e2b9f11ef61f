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

#include "shardgraph/exec/job_driver.hpp"

#include <sstream>

namespace shardgraph {

using nlohmann::json;

namespace {

std::string MachineList(const std::vector<uint32_t>& ms) {
  std::ostringstream os;
  for (size_t i = 0; i < ms.size(); ++i) os << (i ? ", " : "") << ms[i];
  return os.str();
}

void CollectFailures(const json& body, std::vector<VertexFailure>& out) {
  for (const auto& f : body.value("failures", json::array())) {
    out.push_back({f.at("vertex").get<VertexId>(), f.at("error").get<std::string>()});
  }
}

}  // namespace

JGraphJobReport JobDriver::run_jgraph(const std::string& name, const Params& params,
                                      const std::vector<uint32_t>& targets) {
  manifest_.validate(name, JobKind::kJGraph, params);
  JobSpec spec;
  spec.kind = "jgraph";
  spec.analytic = name;
  spec.params = ParamsToJson(params);
  auto g = channel_.run(std::move(spec), timeout_, targets);
  JGraphJobReport report;
  report.missing = g.missing;
  for (auto& [m, r] : g.results) {
    if (r.ok) {
      report.results[m] = std::move(r.body);
    } else {
      report.failures[m] = r.error;
    }
  }
  return report;
}

JobStats JobDriver::run_neighborhood(const std::string& name, const EgoSpec& ego, const Params& params,
                                     uint64_t shuffle_seed) {
  manifest_.validate(name, JobKind::kNeighborhood, params);
  const auto start = std::chrono::steady_clock::now();

  JobSpec compute;
  compute.kind = "nbr-compute";
  compute.analytic = name;
  compute.params = ParamsToJson(params);
  compute.ego = ego.to_json();
  compute.shuffle_seed = shuffle_seed;
  const uint64_t compute_id = channel_.broadcast(std::move(compute));
  auto phase1 = channel_.gather(compute_id, {}, timeout_);

  auto abort = [&](const std::string& why) {
    JobSpec a;
    a.kind = "nbr-abort";
    a.analytic = name;
    a.params = {{"computeJob", compute_id}};
    a.results_wanted = false;
    channel_.broadcast(std::move(a));
    throw Error(ErrorCode::kUnavailable, why);
  };
  if (phase1.partial()) abort("no compute reply from machine(s) " + MachineList(phase1.missing));
  if (auto bad = phase1.failed(); !bad.empty()) {
    abort("compute failed on machine " + std::to_string(bad.front()) + ": " + phase1.results[bad.front()].error);
  }

  JobStats stats;
  for (const auto& [m, r] : phase1.results) {
    const uint64_t n = r.body.at("processed").get<uint64_t>();
    stats.processed_per_machine[m] = n;
    stats.vertices_processed += n;
    stats.remote_fetches += r.body.value("remoteFetches", uint64_t{0});
    CollectFailures(r.body, stats.failures);
  }

  JobSpec commit;
  commit.kind = "nbr-commit";
  commit.analytic = name;
  commit.params = {{"computeJob", compute_id}};
  auto phase2 = channel_.run(std::move(commit), timeout_);
  if (phase2.partial()) {
    throw Error(ErrorCode::kUnavailable, "no commit reply from machine(s) " + MachineList(phase2.missing));
  }
  for (const auto& [m, r] : phase2.results) {
    if (!r.ok) throw Error(ErrorCode::kUnavailable, "commit failed on machine " + std::to_string(m) + ": " + r.error);
    stats.vertices_changed += r.body.at("changed").get<uint64_t>();
    CollectFailures(r.body, stats.failures);
  }
  stats.elapsed = std::chrono::steady_clock::now() - start;
  return stats;
}

}  // namespace shardgraph
