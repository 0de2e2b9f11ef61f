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

#include <string>
#include <string_view>

#include "shardgraph/core/property_value.hpp"

namespace shardgraph {

enum class CompareOp : uint8_t { kEq = 0, kLt = 1, kGt = 2, kLe = 3, kGe = 4, kRange = 5 };

std::string_view CompareOpName(CompareOp op);
CompareOp ParseCompareOp(std::string_view s);

// Comparison against one value, or an inclusive [value, upper] range.
struct Predicate {
  CompareOp op = CompareOp::kEq;
  PropertyValue value;
  PropertyValue upper;

  static Predicate Eq(PropertyValue v) { return {CompareOp::kEq, std::move(v), {}}; }
  static Predicate Lt(PropertyValue v) { return {CompareOp::kLt, std::move(v), {}}; }
  static Predicate Gt(PropertyValue v) { return {CompareOp::kGt, std::move(v), {}}; }
  static Predicate Le(PropertyValue v) { return {CompareOp::kLe, std::move(v), {}}; }
  static Predicate Ge(PropertyValue v) { return {CompareOp::kGe, std::move(v), {}}; }
  static Predicate Range(PropertyValue lo, PropertyValue hi) {
    return {CompareOp::kRange, std::move(lo), std::move(hi)};
  }

  ValueTag tag() const noexcept { return value.tag(); }

  // Throws kTagMismatch when x has a different tag.
  bool matches(const PropertyValue& x) const;

  std::string to_string() const;
};

}  // namespace shardgraph
