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

#include "shardgraph/store/predicate.hpp"

namespace shardgraph {

std::string_view CompareOpName(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "eq";
    case CompareOp::kLt: return "lt";
    case CompareOp::kGt: return "gt";
    case CompareOp::kLe: return "le";
    case CompareOp::kGe: return "ge";
    case CompareOp::kRange: return "range";
  }
  return "?";
}

CompareOp ParseCompareOp(std::string_view s) {
  if (s == "eq" || s == "==") return CompareOp::kEq;
  if (s == "lt" || s == "<") return CompareOp::kLt;
  if (s == "gt" || s == ">") return CompareOp::kGt;
  if (s == "le" || s == "<=") return CompareOp::kLe;
  if (s == "ge" || s == ">=") return CompareOp::kGe;
  if (s == "range") return CompareOp::kRange;
  throw Error(ErrorCode::kInvalidArgument, "unknown comparison '" + std::string(s) + "'");
}

bool Predicate::matches(const PropertyValue& x) const {
  const int c = x.compare(value);
  switch (op) {
    case CompareOp::kEq: return c == 0;
    case CompareOp::kLt: return c < 0;
    case CompareOp::kGt: return c > 0;
    case CompareOp::kLe: return c <= 0;
    case CompareOp::kGe: return c >= 0;
    case CompareOp::kRange: return c >= 0 && x.compare(upper) <= 0;
  }
  return false;
}

std::string Predicate::to_string() const {
  std::string s(CompareOpName(op));
  s += ' ';
  s += value.to_string();
  if (op == CompareOp::kRange) {
    s += "..";
    s += upper.to_string();
  }
  return s;
}

}  // namespace shardgraph
