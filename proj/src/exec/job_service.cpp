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

#include "shardgraph/exec/job_service.hpp"

#include <algorithm>
#include <random>

#include "shardgraph/exec/ego_builder.hpp"
#include "shardgraph/exec/jgraph_view.hpp"

namespace shardgraph {

using nlohmann::json;

namespace {
constexpr size_t kChunk = 256;
}

JobService::JobService(ShardStore& store, Transport& transport, StorageClient& remote, const Registry& registry,
                       size_t threads)
    : store_(store), transport_(transport), remote_(remote), registry_(registry), pool_(threads) {
  runner_ = std::thread([this] { Run(); });
}

JobService::~JobService() { stop(); }

void JobService::stop() {
  {
    std::lock_guard lock(mu_);
    if (stopping_) return;
    stopping_ = true;
  }
  cv_.notify_all();
  runner_.join();
}

void JobService::bind(Broker& broker) {
  broker.register_handler("jobs", [this](const Envelope& env) {
    {
      std::lock_guard lock(mu_);
      queue_.push_back(env);
    }
    cv_.notify_one();
  });
  broker.subscribe(Topic::Cluster(kJobsChannel).str(), "jobs");
  broker.subscribe(Topic::Machine(store_.machine().index, kJobsChannel).str(), "jobs");
}

void JobService::Run() {
  for (;;) {
    Envelope env;
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      env = std::move(queue_.front());
      queue_.pop_front();
    }
    JobResult result;
    JobSpec spec;
    try {
      spec = JobSpec::FromJson(json::parse(env.payload.begin(), env.payload.end()));
      result = execute(spec);
    } catch (const std::exception& e) {
      result = {store_.machine().index, false, e.what(), nullptr};
    }
    if (spec.results_wanted) ReplyJob(transport_, env, result);
  }
}

JobResult JobService::execute(const JobSpec& spec) {
  try {
    if (spec.kind == "jgraph") return RunJGraph(spec);
    if (spec.kind == "nbr-compute") return Compute(spec);
    if (spec.kind == "nbr-commit") return Commit(spec);
    if (spec.kind == "nbr-abort") {
      std::lock_guard lock(pending_mu_);
      pending_.erase(spec.params.at("computeJob").get<uint64_t>());
      return {store_.machine().index, true, {}, nullptr};
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown job kind '" + spec.kind + "'");
  } catch (const std::exception& e) {
    return {store_.machine().index, false, e.what(), nullptr};
  }
}

JobResult JobService::RunJGraph(const JobSpec& spec) {
  const auto* fn = registry_.jgraph(spec.analytic);
  if (fn == nullptr) throw Error(ErrorCode::kUnknownAnalytic, "unknown analytic '" + spec.analytic + "'");
  const Params params = ParamsFromJson(spec.params);
  JGraphView view(store_, remote_);
  JobContext ctx{store_.machine(), params};
  return {store_.machine().index, true, {}, (*fn)(view, ctx)};
}

JobResult JobService::Compute(const JobSpec& spec) {
  const auto* fn = registry_.neighborhood(spec.analytic);
  if (fn == nullptr) throw Error(ErrorCode::kUnknownAnalytic, "unknown analytic '" + spec.analytic + "'");
  const Params params = ParamsFromJson(spec.params);
  const EgoBuilder builder(store_, remote_, EgoSpec::FromJson(spec.ego));
  const MachineId self = store_.machine();

  std::vector<VertexRef> roots = store_.local_vertices();
  if (spec.shuffle_seed != 0) {
    std::mt19937_64 rng(spec.shuffle_seed ^ self.index);
    std::shuffle(roots.begin(), roots.end(), rng);
  }

  const size_t chunks = (roots.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<PendingWrite>> chunk_writes(chunks);
  std::vector<json> chunk_failures(chunks, json::array());
  pool_.parallel_for(chunks, [&](size_t c) {
    const size_t begin = c * kChunk;
    const size_t end = std::min(roots.size(), begin + kChunk);
    std::vector<EgoGraph> egos;
    try {
      egos = builder.build(std::span(roots).subspan(begin, end - begin));
    } catch (const std::exception& e) {
      for (size_t i = begin; i < end; ++i) chunk_failures[c].push_back({{"vertex", roots[i].id()}, {"error", e.what()}});
      return;
    }
    JobContext ctx{self, params};
    for (size_t i = 0; i < egos.size(); ++i) {
      auto& g = egos[i];
      try {
        (*fn)(g, ctx);
        g.validate();
      } catch (const std::exception& e) {
        chunk_failures[c].push_back({{"vertex", g.root().id()}, {"error", e.what()}});
        continue;
      }
      const std::map<EdgeId, const EdgeRecord*> edges = [&] {
        std::map<EdgeId, const EdgeRecord*> m;
        for (const auto& e : g.edges()) m[e.id] = &e;
        return m;
      }();
      for (auto& w : g.take_write_set()) {
        const uint32_t target =
            w.target == ElementClass::kVertex ? self.index : edges.at(w.id)->src.home().index;
        chunk_writes[c].push_back({target, w.target, {w.id, std::move(w.key), std::move(w.value)}, begin + i});
      }
    }
  });

  Pending pending;
  pending.roots.reserve(roots.size());
  for (const auto& r : roots) pending.roots.push_back(r.id());
  json failures = json::array();
  for (size_t c = 0; c < chunks; ++c) {
    for (auto& w : chunk_writes[c]) pending.writes.push_back(std::move(w));
    for (auto& f : chunk_failures[c]) failures.push_back(std::move(f));
  }
  const size_t writes = pending.writes.size();
  {
    std::lock_guard lock(pending_mu_);
    pending_[spec.job_id] = std::move(pending);
  }
  return {self.index, true, {},
          {{"processed", roots.size()}, {"writes", writes}, {"failures", failures},
           {"remoteFetches", builder.remote_requests()}}};
}

JobResult JobService::Commit(const JobSpec& spec) {
  const uint64_t compute_id = spec.params.at("computeJob").get<uint64_t>();
  Pending pending;
  {
    std::lock_guard lock(pending_mu_);
    auto it = pending_.find(compute_id);
    if (it == pending_.end()) {
      throw Error(ErrorCode::kInvalidArgument, "no computed iteration " + std::to_string(compute_id));
    }
    pending = std::move(it->second);
    pending_.erase(it);
  }
  const uint32_t self = store_.machine().index;
  std::vector<bool> root_changed(pending.roots.size(), false);
  json failures = json::array();

  // Remote edge writes, batched per machine.
  std::map<uint32_t, std::vector<size_t>> remote;
  for (size_t i = 0; i < pending.writes.size(); ++i) {
    auto& w = pending.writes[i];
    if (w.machine != self) {
      remote[w.machine].push_back(i);
      continue;
    }
    try {
      if (store_.set_property(w.cls, w.write.id, w.write.key, w.write.value)) root_changed[w.root] = true;
    } catch (const std::exception& e) {
      failures.push_back({{"vertex", pending.roots[w.root]}, {"error", e.what()}});
    }
  }
  for (const auto& [machine, idx] : remote) {
    std::vector<PropertyWrite> batch;
    batch.reserve(idx.size());
    for (size_t i : idx) batch.push_back(pending.writes[i].write);
    try {
      auto res = remote_.set_props(machine, ElementClass::kEdge, batch);
      for (size_t j = 0; j < idx.size(); ++j) {
        if (res.changed[j]) root_changed[pending.writes[idx[j]].root] = true;
      }
      for (const auto& f : res.failures) {
        failures.push_back({{"vertex", pending.roots[pending.writes[idx[f.index]].root]}, {"error", f.message}});
      }
    } catch (const std::exception& e) {
      for (size_t i : idx) failures.push_back({{"vertex", pending.roots[pending.writes[i].root]}, {"error", e.what()}});
    }
  }
  const auto changed = static_cast<uint64_t>(std::count(root_changed.begin(), root_changed.end(), true));
  return {self, true, {}, {{"changed", changed}, {"failures", failures}}};
}

}  // namespace shardgraph
