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

#include "shardgraph/graph/pattern.hpp"

#include <set>

#include "shardgraph/core/json_props.hpp"

namespace shardgraph {

using nlohmann::json;

void Pattern::validate() const {
  if (vertices.empty()) throw Error(ErrorCode::kInvalidArgument, "pattern has no vertices");
  std::map<std::string, size_t> index;
  for (const auto& v : vertices) {
    if (v.var.empty()) throw Error(ErrorCode::kInvalidArgument, "pattern variable with empty name");
    if (!index.emplace(v.var, index.size()).second) {
      throw Error(ErrorCode::kInvalidArgument, "pattern variable '" + v.var + "' declared twice");
    }
  }
  std::vector<size_t> parent(vertices.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) {
    for (const auto* name : {&e.src, &e.dst}) {
      if (!index.contains(*name)) throw Error(ErrorCode::kInvalidArgument, "edge uses undeclared variable '" + *name + "'");
    }
    parent[find(index[e.src])] = find(index[e.dst]);
  }
  std::set<size_t> roots;
  for (size_t i = 0; i < parent.size(); ++i) roots.insert(find(i));
  if (roots.size() > 1) throw Error(ErrorCode::kInvalidArgument, "pattern is not connected");
}

namespace {

std::vector<AttrConstraint> WhereFromJson(const json& j) {
  std::vector<AttrConstraint> out;
  for (const auto& c : j) {
    AttrConstraint a;
    a.key = c.at("key").get<std::string>();
    a.predicate.op = ParseCompareOp(c.at("op").get<std::string>());
    if (a.predicate.op == CompareOp::kRange) {
      const auto& v = c.at("value");
      if (!v.is_array() || v.size() != 2) throw Error(ErrorCode::kInvalidArgument, "range needs [lo, hi]");
      a.predicate.value = ValueFromJson(v[0]);
      a.predicate.upper = ValueFromJson(v[1]);
      if (!a.predicate.value.same_tag(a.predicate.upper)) {
        throw Error(ErrorCode::kTagMismatch, "range bounds of '" + a.key + "' differ in type");
      }
    } else {
      a.predicate.value = ValueFromJson(c.at("value"));
    }
    out.push_back(std::move(a));
  }
  return out;
}

json WhereToJson(const std::vector<AttrConstraint>& where) {
  json out = json::array();
  for (const auto& c : where) {
    json v = c.predicate.op == CompareOp::kRange
                 ? json::array({ValueToJson(c.predicate.value), ValueToJson(c.predicate.upper)})
                 : ValueToJson(c.predicate.value);
    out.push_back({{"key", c.key}, {"op", CompareOpName(c.predicate.op)}, {"value", v}});
  }
  return out;
}

}  // namespace

Pattern Pattern::FromJson(const json& j) {
  Pattern p;
  try {
    for (const auto& v : j.at("vertices")) {
      p.vertices.push_back({v.at("var").get<std::string>(), WhereFromJson(v.value("where", json::array()))});
    }
    for (const auto& e : j.value("edges", json::array())) {
      PatternEdge pe;
      pe.src = e.at("src").get<std::string>();
      pe.dst = e.at("dst").get<std::string>();
      if (e.contains("label") && !e["label"].is_null()) pe.label = e["label"].get<std::string>();
      pe.where = WhereFromJson(e.value("where", json::array()));
      p.edges.push_back(std::move(pe));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad pattern: ") + e.what());
  }
  p.validate();
  return p;
}

json Pattern::to_json() const {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : vertices) j["vertices"].push_back({{"var", v.var}, {"where", WhereToJson(v.where)}});
  j["edges"] = json::array();
  for (const auto& e : edges) {
    json x = {{"src", e.src}, {"dst", e.dst}, {"where", WhereToJson(e.where)}};
    if (e.label) x["label"] = *e.label;
    j["edges"].push_back(x);
  }
  return j;
}

}  // namespace shardgraph
