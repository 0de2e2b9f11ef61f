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
#include <stdexcept>
#include <string>
#include <string_view>

namespace shardgraph {

enum class ErrorCode : uint8_t {
  kInvalidArgument = 1,
  kOutOfRange = 2,
  kWrongHome = 3,
  kMirrorWithProps = 4,
  kTagMismatch = 5,
  kUnknownVertex = 6,
  kUnknownAnalytic = 7,
  kTimeout = 8,
  kProtocol = 9,
  kOutOfScopeWrite = 10,
  kMissingAttribute = 11,
  kIo = 12,
  kUnavailable = 13,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries a code so it survives the wire.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace shardgraph
