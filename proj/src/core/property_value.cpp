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

#include "shardgraph/core/property_value.hpp"

#include <cmath>
#include <sstream>


namespace shardgraph {

std::string_view ValueTagName(ValueTag tag) {
  switch (tag) {
    case ValueTag::kInt: return "int";
    case ValueTag::kFloat: return "float";
    case ValueTag::kString: return "string";
    case ValueTag::kBool: return "bool";
  }
  return "?";
}

namespace {
[[noreturn]] void WrongTag(ValueTag want, ValueTag have) {
  throw Error(ErrorCode::kTagMismatch, "expected " + std::string(ValueTagName(want)) +
                                           " value, found " + std::string(ValueTagName(have)));
}
}  // namespace

int64_t PropertyValue::as_int() const {
  if (auto p = std::get_if<int64_t>(&v_)) return *p;
  WrongTag(ValueTag::kInt, tag());
}

double PropertyValue::as_float() const {
  if (auto p = std::get_if<double>(&v_)) return *p;
  WrongTag(ValueTag::kFloat, tag());
}

const std::string& PropertyValue::as_string() const {
  if (auto p = std::get_if<std::string>(&v_)) return *p;
  WrongTag(ValueTag::kString, tag());
}

bool PropertyValue::as_bool() const {
  if (auto p = std::get_if<bool>(&v_)) return *p;
  WrongTag(ValueTag::kBool, tag());
}

int PropertyValue::compare(const PropertyValue& other) const {
  if (!same_tag(other)) WrongTag(tag(), other.tag());
  return std::visit(
      [&](const auto& a) -> int {
        using T = std::decay_t<decltype(a)>;
        const auto& b = std::get<T>(other.v_);
        if (a < b) return -1;
        if (b < a) return 1;
        return 0;
      },
      v_);
}

std::string PropertyValue::to_string() const {
  std::ostringstream os;
  switch (tag()) {
    case ValueTag::kInt: os << as_int(); break;
    case ValueTag::kFloat: os.precision(17); os << as_float(); break;
    case ValueTag::kString: os << '"' << as_string() << '"'; break;
    case ValueTag::kBool: os << (as_bool() ? "true" : "false"); break;
  }
  return os.str();
}

}  // namespace shardgraph
