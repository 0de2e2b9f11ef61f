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

#include "shardgraph/core/ids.hpp"

#include <string>

namespace shardgraph {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kWrongHome: return "wrong-home";
    case ErrorCode::kMirrorWithProps: return "mirror-with-props";
    case ErrorCode::kTagMismatch: return "tag-mismatch";
    case ErrorCode::kUnknownVertex: return "unknown-vertex";
    case ErrorCode::kUnknownAnalytic: return "unknown-analytic";
    case ErrorCode::kTimeout: return "timeout";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kOutOfScopeWrite: return "out-of-scope-write";
    case ErrorCode::kMissingAttribute: return "missing-attribute";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kUnavailable: return "unavailable";
  }
  return "unknown";
}

std::string_view DirectionName(Direction d) {
  switch (d) {
    case Direction::kOut: return "out";
    case Direction::kIn: return "in";
    case Direction::kBoth: return "both";
  }
  return "?";
}

Direction ParseDirection(std::string_view s) {
  if (s == "out") return Direction::kOut;
  if (s == "in") return Direction::kIn;
  if (s == "both") return Direction::kBoth;
  throw Error(ErrorCode::kInvalidArgument, "unknown direction '" + std::string(s) + "'");
}

VertexRef MakeVertexRef(VertexId id, MachineId home, uint32_t cluster_size) {
  if (home.index >= cluster_size) {
    throw Error(ErrorCode::kOutOfRange, "home machine " + std::to_string(home.index) +
                                            " outside cluster of " + std::to_string(cluster_size));
  }
  return VertexRef::Unchecked(id, home);
}

}  // namespace shardgraph
