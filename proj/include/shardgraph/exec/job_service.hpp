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

#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "shardgraph/bus/job_bus.hpp"
#include "shardgraph/bus/thread_pool.hpp"
#include "shardgraph/exec/registry.hpp"
#include "shardgraph/node/storage_service.hpp"

namespace shardgraph {

// Runs jobs on one machine. Jobs arriving on cluster/jobs or
// machine/<i>/jobs are queued and executed one at a time on a dedicated
// thread, never on broker workers, so a job may block on storage requests
// to other machines without starving this machine's storage service.
//
// A Neighborhood iteration is two phases. "nbr-compute" runs the function
// over every local root against the current store and keeps the write
// sets; "nbr-commit" applies them. The driver commits only after every
// machine finished computing, so all reads in an iteration see the state
// before it.
class JobService {
 public:
  JobService(ShardStore& store, Transport& transport, StorageClient& remote, const Registry& registry,
             size_t threads);
  ~JobService();

  JobService(const JobService&) = delete;
  JobService& operator=(const JobService&) = delete;

  void bind(Broker& broker);
  void stop();

  // Executes synchronously; used by the queue thread and by tests.
  JobResult execute(const JobSpec& spec);

 private:
  struct PendingWrite {
    uint32_t machine;
    ElementClass cls;
    PropertyWrite write;
    size_t root;  // index into Pending::roots
  };
  struct Pending {
    std::vector<VertexId> roots;
    std::vector<PendingWrite> writes;
  };

  void Run();
  JobResult RunJGraph(const JobSpec& spec);
  JobResult Compute(const JobSpec& spec);
  JobResult Commit(const JobSpec& spec);

  ShardStore& store_;
  Transport& transport_;
  StorageClient& remote_;
  const Registry& registry_;
  ThreadPool pool_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Envelope> queue_;
  bool stopping_ = false;
  std::thread runner_;

  std::mutex pending_mu_;
  std::map<uint64_t, Pending> pending_;
};

}  // namespace shardgraph
