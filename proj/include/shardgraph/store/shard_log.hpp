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

#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <span>

#include "shardgraph/core/codec.hpp"

namespace shardgraph {

enum class LogRecordType : uint8_t {
  kPutVertex = 1,
  kPutEdgeHalf = 2,
  kSetProperty = 3,
  kDropMirror = 4,
};

// Append-only log of shard mutations. Each record is a u32 little-endian
// length followed by that many bytes: a LogRecordType byte and a body in
// the canonical binary encoding.
class ShardLog {
 public:
  explicit ShardLog(const std::filesystem::path& path);

  void append(std::span<const uint8_t> record);
  void flush();

  // Calls fn for every complete record. A torn trailing record (from a
  // crash mid-append) is ignored.
  static void ForEach(const std::filesystem::path& path,
                      const std::function<void(std::span<const uint8_t>)>& fn);

 private:
  std::mutex mu_;
  std::ofstream out_;
};

}  // namespace shardgraph
