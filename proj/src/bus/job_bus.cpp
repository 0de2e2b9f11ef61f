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

#include "shardgraph/bus/job_bus.hpp"

#include <numeric>

namespace shardgraph {

using nlohmann::json;

json JobSpec::to_json() const {
  return {{"jobId", job_id},     {"kind", kind},
          {"analytic", analytic}, {"params", params},
          {"ego", ego},           {"resultsWanted", results_wanted},
          {"shuffleSeed", shuffle_seed}};
}

JobSpec JobSpec::FromJson(const json& j) {
  try {
    JobSpec s;
    s.job_id = j.at("jobId").get<uint64_t>();
    s.kind = j.at("kind").get<std::string>();
    s.analytic = j.at("analytic").get<std::string>();
    s.params = j.value("params", json::object());
    s.ego = j.value("ego", json());
    s.results_wanted = j.value("resultsWanted", true);
    s.shuffle_seed = j.value("shuffleSeed", uint64_t{0});
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kProtocol, std::string("bad job message: ") + e.what());
  }
}

json JobResult::to_json() const {
  json j = {{"machine", machine}, {"ok", ok}, {"body", body}};
  if (!ok) j["error"] = error;
  return j;
}

JobResult JobResult::FromJson(const json& j) {
  JobResult r;
  r.machine = j.at("machine").get<uint32_t>();
  r.ok = j.at("ok").get<bool>();
  r.error = j.value("error", std::string());
  r.body = j.value("body", json());
  return r;
}

std::vector<uint32_t> GatherReport::failed() const {
  std::vector<uint32_t> out;
  for (const auto& [m, r] : results)
    if (!r.ok) out.push_back(m);
  return out;
}

uint64_t JobChannel::broadcast(JobSpec spec, const std::vector<uint32_t>& targets) {
  auto& t = rpc_.transport();
  spec.job_id = rpc_.next_correlation();
  std::string reply_to;
  if (spec.results_wanted) {
    auto col = rpc_.open_collector(spec.job_id, [](const Envelope& env) -> std::optional<uint32_t> {
      try {
        return json::parse(env.payload.begin(), env.payload.end()).at("machine").get<uint32_t>();
      } catch (const json::exception&) {
        return std::nullopt;
      }
    });
    std::lock_guard lock(mu_);
    open_[spec.job_id] = std::move(col);
    reply_to = rpc_.reply_topic().str();
  }
  const std::string text = spec.to_json().dump();
  const Bytes payload(text.begin(), text.end());
  if (targets.empty()) {
    t.publish(Topic::Cluster(kJobsChannel), payload, PayloadEncoding::kJson, spec.job_id, reply_to);
  } else {
    for (uint32_t m : targets) {
      t.publish(Topic::Machine(m, kJobsChannel), payload, PayloadEncoding::kJson, spec.job_id, reply_to);
    }
  }
  return spec.job_id;
}

GatherReport JobChannel::gather(uint64_t job_id, const std::vector<uint32_t>& expected,
                                std::chrono::milliseconds timeout) {
  std::vector<uint32_t> want = expected;
  if (want.empty()) {
    want.resize(rpc_.transport().cluster_size());
    std::iota(want.begin(), want.end(), 0u);
  }
  std::shared_ptr<ReplyCollector> col;
  {
    std::lock_guard lock(mu_);
    auto it = open_.find(job_id);
    if (it != open_.end()) {
      col = it->second;
      open_.erase(it);
    }
  }
  GatherReport report;
  if (!col) return report;  // results were not requested
  auto got = col->wait(want.size(), std::chrono::steady_clock::now() + timeout);
  rpc_.close_collector(job_id);
  for (const auto& [m, env] : got) {
    report.results[m] = JobResult::FromJson(json::parse(env.payload.begin(), env.payload.end()));
  }
  for (uint32_t m : want)
    if (!report.results.contains(m)) report.missing.push_back(m);
  return report;
}

GatherReport JobChannel::run(JobSpec spec, std::chrono::milliseconds timeout, const std::vector<uint32_t>& targets) {
  const uint64_t id = broadcast(std::move(spec), targets);
  return gather(id, targets, timeout);
}

void ReplyJob(Transport& t, const Envelope& req, const JobResult& result) {
  const std::string text = result.to_json().dump();
  Reply(t, req, Bytes(text.begin(), text.end()), PayloadEncoding::kJson);
}

}  // namespace shardgraph
