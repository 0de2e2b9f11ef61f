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

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "shardgraph/exec/job_driver.hpp"
#include "shardgraph/exec/registry.hpp"
#include "shardgraph/node/storage_service.hpp"

namespace shardgraph {

inline constexpr const char* kComponentKey = "component";
inline constexpr const char* kInDegreeKey = "in_degree";
inline constexpr const char* kOutDegreeKey = "out_degree";

// Adds every analytic named in Manifest::Default().
void RegisterBuiltins(Registry& r);
Registry BuiltinRegistry();

struct CCResult {
  std::map<VertexId, VertexId> labels;
  // Iterations run, the initial one included.
  uint64_t iterations = 0;
  // Entry 0 is the number of initial assignments.
  std::vector<uint64_t> changed;
  std::vector<JobStats> stats;
};

// Naive label propagation over weak connectivity. The first iteration sets
// each vertex's component to the least id among itself and its neighbors;
// later iterations take the least component among itself and its
// neighbors, until one changes nothing.
CCResult ConnectedComponents(JobDriver& jobs, StorageClient& storage, const std::string& key = kComponentKey);

struct Degree {
  uint64_t in = 0;
  uint64_t out = 0;
  friend bool operator==(const Degree&, const Degree&) = default;
};

// One Neighborhood iteration writing in_degree and out_degree.
std::map<VertexId, Degree> DegreeCount(JobDriver& jobs, StorageClient& storage);

// Every value of an int vertex property across the cluster.
std::map<VertexId, int64_t> GatherIntProperty(StorageClient& storage, const std::string& key);

// "vertexId,component" rows in id order, with a header.
void WriteComponentsCsv(std::ostream& out, const std::map<VertexId, VertexId>& labels);

}  // namespace shardgraph
