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
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "shardgraph/core/ids.hpp"
#include "shardgraph/core/property_value.hpp"
#include "shardgraph/store/predicate.hpp"

namespace shardgraph {

// Two-column table (element id -> value) for a single property key, with
// an ordered inverted index (value -> element ids). The first value written
// fixes the table's tag.
class AttributeTable {
 public:
  explicit AttributeTable(std::string name) : name_(std::move(name)) {}

  AttributeTable(const AttributeTable&) = delete;
  AttributeTable& operator=(const AttributeTable&) = delete;

  const std::string& name() const noexcept { return name_; }
  std::optional<ValueTag> tag() const;
  size_t size() const;

  // Upsert. Returns true when the stored value changed.
  bool put(ElementId id, const PropertyValue& v);
  std::optional<PropertyValue> get(ElementId id) const;

  // Served from the inverted index. Ids come back ascending.
  std::vector<ElementId> scan(const Predicate& p) const;

  // Rebuilds the inverted index from the forward map and compares.
  bool consistent() const;

  void for_each(const std::function<void(ElementId, const PropertyValue&)>& fn) const;

 private:
  void CheckTag(const PropertyValue& v) const;

  mutable std::shared_mutex mu_;
  std::string name_;
  std::optional<ValueTag> tag_;
  std::unordered_map<ElementId, PropertyValue> forward_;
  std::map<PropertyValue, std::set<ElementId>> inverted_;
};

}  // namespace shardgraph
