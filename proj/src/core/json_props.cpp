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

#include "shardgraph/core/json_props.hpp"

namespace shardgraph {

PropertyValue ValueFromJson(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::boolean: return PropertyValue(j.get<bool>());
    case nlohmann::json::value_t::number_integer: return PropertyValue(j.get<int64_t>());
    case nlohmann::json::value_t::number_unsigned: {
      const auto u = j.get<uint64_t>();
      if (u > static_cast<uint64_t>(INT64_MAX)) throw Error(ErrorCode::kOutOfRange, "integer exceeds int64");
      return PropertyValue(static_cast<int64_t>(u));
    }
    case nlohmann::json::value_t::number_float: return PropertyValue(j.get<double>());
    case nlohmann::json::value_t::string: return PropertyValue(j.get<std::string>());
    default: throw Error(ErrorCode::kInvalidArgument, "unsupported JSON property value: " + j.dump());
  }
}

nlohmann::json ValueToJson(const PropertyValue& v) {
  switch (v.tag()) {
    case ValueTag::kInt: return v.as_int();
    case ValueTag::kFloat: return v.as_float();
    case ValueTag::kString: return v.as_string();
    case ValueTag::kBool: return v.as_bool();
  }
  return nullptr;
}

PropertyList PropsFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "properties must be a JSON object");
  PropertyList out;
  for (const auto& [k, v] : j.items()) out.emplace_back(k, ValueFromJson(v));
  return out;
}

nlohmann::json PropsToJson(const PropertyList& props) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : props) j[k] = ValueToJson(v);
  return j;
}

}  // namespace shardgraph
