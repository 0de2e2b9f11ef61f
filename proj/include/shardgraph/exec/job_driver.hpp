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
#include <map>
#include <string>
#include <vector>

#include "shardgraph/bus/job_bus.hpp"
#include "shardgraph/exec/registry.hpp"

namespace shardgraph {

struct JGraphJobReport {
  std::map<uint32_t, nlohmann::json> results;  // machines that succeeded
  std::map<uint32_t, std::string> failures;    // machines whose analytic threw
  std::vector<uint32_t> missing;               // machines that never answered

  bool complete() const noexcept { return failures.empty() && missing.empty(); }
};

struct VertexFailure {
  VertexId vertex = 0;
  std::string error;
};

struct JobStats {
  uint64_t vertices_processed = 0;
  uint64_t vertices_changed = 0;
  std::chrono::duration<double> elapsed{0};
  std::map<uint32_t, uint64_t> processed_per_machine;
  uint64_t remote_fetches = 0;
  std::vector<VertexFailure> failures;
};

// Client-side driver for both execution models. Requests are checked
// against the manifest before anything is broadcast.
class JobDriver {
 public:
  JobDriver(RpcClient& rpc, Manifest manifest, std::chrono::milliseconds timeout)
      : channel_(rpc), manifest_(std::move(manifest)), timeout_(timeout) {}

  const Manifest& manifest() const noexcept { return manifest_; }

  // Runs the analytic once on every target machine (all when empty).
  // Missing and failed machines are reported, not thrown.
  JGraphJobReport run_jgraph(const std::string& name, const Params& params = {},
                             const std::vector<uint32_t>& targets = {});

  // One synchronous iteration over every vertex. Throws kUnavailable if a
  // machine does not answer a phase; nothing is committed in that case
  // unless the commit phase itself was partial.
  JobStats run_neighborhood(const std::string& name, const EgoSpec& spec, const Params& params = {},
                            uint64_t shuffle_seed = 0);

  JobChannel& channel() noexcept { return channel_; }

 private:
  JobChannel channel_;
  Manifest manifest_;
  std::chrono::milliseconds timeout_;
};

}  // namespace shardgraph
