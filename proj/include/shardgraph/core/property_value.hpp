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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "shardgraph/error.hpp"

namespace shardgraph {

enum class ValueTag : uint8_t { kInt = 0, kFloat = 1, kString = 2, kBool = 3 };

std::string_view ValueTagName(ValueTag tag);

// Tagged scalar. Ordered within a tag; comparing across tags throws.
class PropertyValue {
 public:
  PropertyValue() : v_(int64_t{0}) {}
  PropertyValue(int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  PropertyValue(int v) : v_(int64_t{v}) {}  // NOLINT
  PropertyValue(double v) : v_(v) {}  // NOLINT
  PropertyValue(bool v) : v_(v) {}  // NOLINT
  PropertyValue(std::string v) : v_(std::move(v)) {}  // NOLINT
  PropertyValue(const char* v) : v_(std::string(v)) {}  // NOLINT

  ValueTag tag() const noexcept { return static_cast<ValueTag>(v_.index()); }

  int64_t as_int() const;
  double as_float() const;
  const std::string& as_string() const;
  bool as_bool() const;

  // Three-way compare; throws Error(kTagMismatch) across tags.
  int compare(const PropertyValue& other) const;

  bool same_tag(const PropertyValue& other) const noexcept { return v_.index() == other.v_.index(); }

  // Strict weak order for containers; only valid within one tag.
  friend bool operator<(const PropertyValue& a, const PropertyValue& b) { return a.compare(b) < 0; }
  // Equality is tag-aware and never throws.
  friend bool operator==(const PropertyValue& a, const PropertyValue& b) noexcept { return a.v_ == b.v_; }

  std::string to_string() const;

  const std::variant<int64_t, double, std::string, bool>& raw() const noexcept { return v_; }

 private:
  std::variant<int64_t, double, std::string, bool> v_;
};

using PropertyList = std::vector<std::pair<std::string, PropertyValue>>;

}  // namespace shardgraph
