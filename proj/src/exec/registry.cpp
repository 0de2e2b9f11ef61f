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

#include "shardgraph/exec/registry.hpp"

#include <fstream>
#include <sstream>

#include "shardgraph/core/json_props.hpp"

namespace shardgraph {

using nlohmann::json;

Params ParamsFromJson(const json& j) {
  Params p;
  if (j.is_null()) return p;
  for (auto& [k, v] : PropsFromJson(j)) p.emplace(k, std::move(v));
  return p;
}

json ParamsToJson(const Params& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = ValueToJson(v);
  return j;
}

namespace {

ElementClass ParseClass(const std::string& s) {
  if (s == "vertex") return ElementClass::kVertex;
  if (s == "edge") return ElementClass::kEdge;
  throw Error(ErrorCode::kInvalidArgument, "unknown element class '" + s + "'");
}

ValueTag ParseTag(const std::string& s) {
  for (auto t : {ValueTag::kInt, ValueTag::kFloat, ValueTag::kString, ValueTag::kBool}) {
    if (ValueTagName(t) == s) return t;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown value type '" + s + "'");
}

}  // namespace

json EgoSpec::to_json() const {
  json j;
  j["neighbors"] = neighbors ? std::string(DirectionName(*neighbors)) : std::string("none");
  j["fetch"] = json::array();
  for (const auto& [cls, key] : fetch) {
    j["fetch"].push_back({{"class", cls == ElementClass::kVertex ? "vertex" : "edge"}, {"key", key}});
  }
  return j;
}

EgoSpec EgoSpec::FromJson(const json& j) {
  EgoSpec s;
  if (j.is_null()) return s;
  try {
    const auto n = j.value("neighbors", std::string("none"));
    if (n != "none") s.neighbors = ParseDirection(n);
    for (const auto& f : j.value("fetch", json::array())) {
      s.fetch.emplace_back(ParseClass(f.at("class").get<std::string>()), f.at("key").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad ego request: ") + e.what());
  }
  return s;
}

std::string_view JobKindName(JobKind k) { return k == JobKind::kJGraph ? "jgraph" : "neighborhood"; }

Manifest Manifest::Parse(const std::string& json_text) {
  Manifest m;
  try {
    const json doc = json::parse(json_text);
    for (const auto& a : doc.at("analytics")) {
      ManifestEntry e;
      e.name = a.at("name").get<std::string>();
      const auto kind = a.at("kind").get<std::string>();
      if (kind == "jgraph") {
        e.kind = JobKind::kJGraph;
      } else if (kind == "neighborhood") {
        e.kind = JobKind::kNeighborhood;
      } else {
        throw Error(ErrorCode::kInvalidArgument, "unknown analytic kind '" + kind + "'");
      }
      const json params = a.value("params", json::object());
      for (const auto& [k, t] : params.items()) e.params[k] = ParseTag(t.get<std::string>());
      if (!m.entries_.emplace(e.name, e).second) {
        throw Error(ErrorCode::kInvalidArgument, "analytic '" + e.name + "' listed twice");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad manifest: ") + e.what());
  }
  return m;
}

Manifest Manifest::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

Manifest Manifest::Default() {
  return Parse(R"({"analytics": [
    {"name": "count-local-vertices", "kind": "jgraph"},
    {"name": "local-edge-cut", "kind": "jgraph"},
    {"name": "local-degree-sum", "kind": "jgraph"},
    {"name": "identity", "kind": "neighborhood"},
    {"name": "set-constant", "kind": "neighborhood", "params": {"key": "string", "value": "int"}},
    {"name": "record-machine", "kind": "neighborhood", "params": {"key": "string"}},
    {"name": "cc-init", "kind": "neighborhood", "params": {"key": "string"}},
    {"name": "cc-step", "kind": "neighborhood", "params": {"key": "string"}},
    {"name": "degree-count", "kind": "neighborhood"}
  ]})");
}

std::string Manifest::ToJson() const {
  json j;
  j["analytics"] = json::array();
  for (const auto& [name, e] : entries_) {
    json a = {{"name", name}, {"kind", std::string(JobKindName(e.kind))}};
    if (!e.params.empty()) {
      a["params"] = json::object();
      for (const auto& [k, t] : e.params) a["params"][k] = std::string(ValueTagName(t));
    }
    j["analytics"].push_back(a);
  }
  return j.dump(2);
}

const ManifestEntry* Manifest::find(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

void Manifest::validate(const std::string& name, JobKind kind, const Params& params) const {
  const auto* e = find(name);
  if (e == nullptr) throw Error(ErrorCode::kUnknownAnalytic, "analytic '" + name + "' is not in the manifest");
  if (e->kind != kind) {
    throw Error(ErrorCode::kInvalidArgument,
                "analytic '" + name + "' is a " + std::string(JobKindName(e->kind)) + " analytic");
  }
  for (const auto& [k, v] : params) {
    auto it = e->params.find(k);
    if (it == e->params.end()) throw Error(ErrorCode::kInvalidArgument, "'" + name + "' takes no parameter '" + k + "'");
    if (it->second != v.tag()) {
      throw Error(ErrorCode::kInvalidArgument, "parameter '" + k + "' of '" + name + "' must be " +
                                                   std::string(ValueTagName(it->second)));
    }
  }
}

void Registry::add_jgraph(const std::string& name, JGraphAnalytic fn) { jgraph_[name] = std::move(fn); }

void Registry::add_neighborhood(const std::string& name, NeighborhoodFn fn) { neighborhood_[name] = std::move(fn); }

const JGraphAnalytic* Registry::jgraph(const std::string& name) const {
  auto it = jgraph_.find(name);
  return it == jgraph_.end() ? nullptr : &it->second;
}

const NeighborhoodFn* Registry::neighborhood(const std::string& name) const {
  auto it = neighborhood_.find(name);
  return it == neighborhood_.end() ? nullptr : &it->second;
}

Registry Registry::restricted_to(const Manifest& manifest) const {
  Registry out;
  for (const auto& [name, e] : manifest.entries()) {
    if (e.kind == JobKind::kJGraph) {
      const auto* fn = jgraph(name);
      if (fn == nullptr) throw Error(ErrorCode::kUnknownAnalytic, "no jgraph implementation named '" + name + "'");
      out.add_jgraph(name, *fn);
    } else {
      const auto* fn = neighborhood(name);
      if (fn == nullptr) {
        throw Error(ErrorCode::kUnknownAnalytic, "no neighborhood implementation named '" + name + "'");
      }
      out.add_neighborhood(name, *fn);
    }
  }
  return out;
}

}  // namespace shardgraph
