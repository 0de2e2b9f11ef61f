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

#include <json.hpp>

#include "shardgraph/core/property_value.hpp"

namespace shardgraph {

// JSON integers map to int, other numbers to float. Arrays, objects and
// null are rejected with kInvalidArgument.
PropertyValue ValueFromJson(const nlohmann::json& j);
nlohmann::json ValueToJson(const PropertyValue& v);

// Object form {"key": value, ...}; keys come back sorted.
PropertyList PropsFromJson(const nlohmann::json& j);
nlohmann::json PropsToJson(const PropertyList& props);

}  // namespace shardgraph
