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

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shardgraph/core/ego_graph.hpp"
#include "shardgraph/core/ids.hpp"
#include "shardgraph/core/property_value.hpp"

namespace shardgraph {

class JGraphView;

using Params = std::map<std::string, PropertyValue>;

Params ParamsFromJson(const nlohmann::json& j);
nlohmann::json ParamsToJson(const Params& p);

// What a Neighborhood function sees: the ego graph's neighbor direction
// (nullopt for root only) and the properties to load into it.
struct EgoSpec {
  std::optional<Direction> neighbors;
  std::vector<std::pair<ElementClass, std::string>> fetch;

  // {"neighbors": "none|in|out|both", "fetch": [{"class": "vertex", "key": "k"}]}
  nlohmann::json to_json() const;
  static EgoSpec FromJson(const nlohmann::json& j);
};

struct JobContext {
  MachineId machine;
  const Params& params;
};

using JGraphAnalytic = std::function<nlohmann::json(JGraphView&, const JobContext&)>;
using NeighborhoodFn = std::function<void(EgoGraph&, const JobContext&)>;

enum class JobKind : uint8_t { kJGraph = 0, kNeighborhood = 1 };

std::string_view JobKindName(JobKind k);

struct ManifestEntry {
  std::string name;
  JobKind kind = JobKind::kJGraph;
  std::map<std::string, ValueTag> params;  // every parameter is optional
};

// The analytics a cluster offers, with parameter schemas. Format:
// {"analytics": [{"name": "...", "kind": "jgraph|neighborhood",
//                 "params": {"key": "int|float|string|bool"}}]}
class Manifest {
 public:
  static Manifest Parse(const std::string& json_text);
  static Manifest Load(const std::filesystem::path& path);
  // Every analytic shipped with the library.
  static Manifest Default();

  std::string ToJson() const;

  const ManifestEntry* find(const std::string& name) const;
  const std::map<std::string, ManifestEntry>& entries() const noexcept { return entries_; }

  // Throws kUnknownAnalytic, or kInvalidArgument for a kind mismatch, an
  // undeclared parameter, or a parameter of the wrong type.
  void validate(const std::string& name, JobKind kind, const Params& params) const;

 private:
  std::map<std::string, ManifestEntry> entries_;
};

// Name to implementation, consulted by every machine when a job arrives.
class Registry {
 public:
  void add_jgraph(const std::string& name, JGraphAnalytic fn);
  void add_neighborhood(const std::string& name, NeighborhoodFn fn);

  const JGraphAnalytic* jgraph(const std::string& name) const;
  const NeighborhoodFn* neighborhood(const std::string& name) const;

  // Keeps only the manifest's entries. Throws kUnknownAnalytic when the
  // manifest names something with no implementation of that kind.
  Registry restricted_to(const Manifest& manifest) const;

 private:
  std::map<std::string, JGraphAnalytic> jgraph_;
  std::map<std::string, NeighborhoodFn> neighborhood_;
};

}  // namespace shardgraph
