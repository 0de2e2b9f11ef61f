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

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shardgraph/analytics/analytics.hpp"
#include "shardgraph/bench/generator.hpp"
#include "shardgraph/graph/dgraph.hpp"
#include "shardgraph/node/machine_node.hpp"

namespace shardgraph {

// How benchmark ingest places vertices: "random", "explicit-components"
// (component c on machine c mod k) or "attr:KEY".
struct PlacementChoice {
  enum class Kind { kRandom, kComponents, kAttribute } kind = Kind::kRandom;
  std::string key;

  static PlacementChoice Parse(const std::string& s);
  std::string name() const;
};

struct BenchRow {
  std::string bench;
  std::string placement;
  uint32_t cluster_size = 0;
  uint64_t elements = 0;
  double seconds = 0;
  double throughput = 0;  // elements or vertices per second
};

struct BenchReport {
  std::vector<BenchRow> rows;
  nlohmann::json summary = nlohmann::json::object();

  // cluster_size,bench,placement,graph_elements,elapsed_s,throughput
  std::string csv() const;
};

struct IngestCheck {
  std::vector<uint64_t> vertices_per_shard;
  std::vector<uint64_t> elements_per_shard;  // vertices + origin halves
  uint64_t mirrors = 0;
  double max_imbalance = 0;  // max |count - mean| / mean over shards
};

// Ingests g and checks that every element landed: per-shard vertex counts
// sum to |V|, origin halves to |E|, mirrors to the cut. Any loss throws
// kInvalidArgument with a diff.
BenchRow BenchIngest(DGraph& dg, const ERGraph& g, const PlacementChoice& placement, IngestCheck* check = nullptr);

struct CCBench {
  BenchRow row;  // throughput over iterations after the first
  CCResult cc;
  bool verified = false;
};

// Runs connected components on an ingested graph, verifying against
// union-find when |V| <= 10^6. Throws on a label mismatch.
CCBench BenchCC(DGraph& dg, const ERGraph& g);

// Two fresh clusters of size k, one per placement; the same graph in both.
std::pair<LocalityReport, LocalityReport> BenchLocality(const ERGraph& g, uint32_t k, const PlacementChoice& a,
                                                        const PlacementChoice& b, const NodeOptions& node = {});

// Side-by-side CSV: machine,<a>_local_fraction,<a>_edge_cut,<b>_...
std::string LocalityPairCsv(const LocalityReport& a, const std::string& name_a, const LocalityReport& b,
                            const std::string& name_b);

}  // namespace shardgraph
