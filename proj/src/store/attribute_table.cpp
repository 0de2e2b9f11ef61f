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

#include "shardgraph/store/attribute_table.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace shardgraph {

std::optional<ValueTag> AttributeTable::tag() const {
  std::shared_lock lock(mu_);
  return tag_;
}

size_t AttributeTable::size() const {
  std::shared_lock lock(mu_);
  return forward_.size();
}

void AttributeTable::CheckTag(const PropertyValue& v) const {
  if (tag_ && *tag_ != v.tag()) {
    throw Error(ErrorCode::kTagMismatch, "attribute '" + name_ + "' holds " +
                                             std::string(ValueTagName(*tag_)) + " values, got " +
                                             std::string(ValueTagName(v.tag())));
  }
}

bool AttributeTable::put(ElementId id, const PropertyValue& v) {
  if (v.tag() == ValueTag::kFloat && std::isnan(v.as_float())) {
    throw Error(ErrorCode::kInvalidArgument, "NaN is not orderable (attribute '" + name_ + "')");
  }
  std::unique_lock lock(mu_);
  CheckTag(v);
  if (!tag_) tag_ = v.tag();
  auto [it, inserted] = forward_.try_emplace(id, v);
  if (!inserted) {
    if (it->second == v) return false;
    auto old = inverted_.find(it->second);
    old->second.erase(id);
    if (old->second.empty()) inverted_.erase(old);
    it->second = v;
  }
  inverted_[v].insert(id);
  return true;
}

std::optional<PropertyValue> AttributeTable::get(ElementId id) const {
  std::shared_lock lock(mu_);
  auto it = forward_.find(id);
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

std::vector<ElementId> AttributeTable::scan(const Predicate& p) const {
  std::shared_lock lock(mu_);
  CheckTag(p.value);
  if (p.op == CompareOp::kRange) CheckTag(p.upper);
  if (!tag_) return {};

  auto first = inverted_.begin();
  auto last = inverted_.end();
  switch (p.op) {
    case CompareOp::kEq:
      first = inverted_.lower_bound(p.value);
      last = inverted_.upper_bound(p.value);
      break;
    case CompareOp::kLt: last = inverted_.lower_bound(p.value); break;
    case CompareOp::kLe: last = inverted_.upper_bound(p.value); break;
    case CompareOp::kGt: first = inverted_.upper_bound(p.value); break;
    case CompareOp::kGe: first = inverted_.lower_bound(p.value); break;
    case CompareOp::kRange:
      if (p.upper < p.value) return {};
      first = inverted_.lower_bound(p.value);
      last = inverted_.upper_bound(p.upper);
      break;
  }
  std::vector<ElementId> out;
  for (auto it = first; it != last; ++it) out.insert(out.end(), it->second.begin(), it->second.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool AttributeTable::consistent() const {
  std::shared_lock lock(mu_);
  std::map<PropertyValue, std::set<ElementId>> rebuilt;
  for (const auto& [id, v] : forward_) rebuilt[v].insert(id);
  return rebuilt == inverted_;
}

void AttributeTable::for_each(const std::function<void(ElementId, const PropertyValue&)>& fn) const {
  std::shared_lock lock(mu_);
  for (const auto& [id, v] : forward_) fn(id, v);
}

}  // namespace shardgraph
