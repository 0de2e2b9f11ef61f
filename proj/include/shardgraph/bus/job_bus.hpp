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

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shardgraph/bus/rpc.hpp"

namespace shardgraph {

inline constexpr const char* kJobsChannel = "jobs";

// A job request, carried as JSON on cluster/jobs (or machine/<i>/jobs when
// addressed to a subset).
struct JobSpec {
  uint64_t job_id = 0;
  std::string kind;  // "jgraph", "nbr-compute", "nbr-commit", "nbr-abort"
  std::string analytic;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json ego;  // null unless a Neighborhood phase
  bool results_wanted = true;
  uint64_t shuffle_seed = 0;  // 0 keeps ascending vertex order

  nlohmann::json to_json() const;
  static JobSpec FromJson(const nlohmann::json& j);
};

// One machine's answer to a job.
struct JobResult {
  uint32_t machine = 0;
  bool ok = true;
  std::string error;
  nlohmann::json body;

  nlohmann::json to_json() const;
  static JobResult FromJson(const nlohmann::json& j);
};

struct GatherReport {
  std::map<uint32_t, JobResult> results;
  std::vector<uint32_t> missing;  // expected machines that never answered

  bool partial() const noexcept { return !missing.empty(); }
  std::vector<uint32_t> failed() const;
};

// Client side of the job protocol.
class JobChannel {
 public:
  explicit JobChannel(RpcClient& rpc) : rpc_(rpc) {}

  // Publishes on cluster/jobs, or to each listed machine. Assigns and
  // returns the job id.
  uint64_t broadcast(JobSpec spec, const std::vector<uint32_t>& targets = {});

  // Waits for the listed machines (all when empty) or the timeout.
  GatherReport gather(uint64_t job_id, const std::vector<uint32_t>& expected, std::chrono::milliseconds timeout);

  GatherReport run(JobSpec spec, std::chrono::milliseconds timeout, const std::vector<uint32_t>& targets = {});

 private:
  RpcClient& rpc_;
  std::mutex mu_;
  std::map<uint64_t, std::shared_ptr<ReplyCollector>> open_;
};

// Machine side: sends a job result back to the requester.
void ReplyJob(Transport& t, const Envelope& req, const JobResult& result);

}  // namespace shardgraph
