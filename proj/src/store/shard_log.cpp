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

#include "shardgraph/store/shard_log.hpp"

#include <vector>

#include "shardgraph/error.hpp"

namespace shardgraph {

ShardLog::ShardLog(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::binary | std::ios::app);
  if (!out_) throw Error(ErrorCode::kIo, "cannot open shard log " + path.string());
}

void ShardLog::append(std::span<const uint8_t> record) {
  uint8_t len[4];
  const auto n = static_cast<uint32_t>(record.size());
  for (int i = 0; i < 4; ++i) len[i] = static_cast<uint8_t>(n >> (8 * i));
  std::lock_guard lock(mu_);
  out_.write(reinterpret_cast<const char*>(len), 4);
  out_.write(reinterpret_cast<const char*>(record.data()), static_cast<std::streamsize>(record.size()));
  if (!out_) throw Error(ErrorCode::kIo, "shard log write failed");
}

void ShardLog::flush() {
  std::lock_guard lock(mu_);
  out_.flush();
}

void ShardLog::ForEach(const std::filesystem::path& path,
                       const std::function<void(std::span<const uint8_t>)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return;
  std::vector<uint8_t> buf;
  for (;;) {
    uint8_t len[4];
    if (!in.read(reinterpret_cast<char*>(len), 4)) break;
    uint32_t n = 0;
    for (int i = 0; i < 4; ++i) n |= static_cast<uint32_t>(len[i]) << (8 * i);
    buf.resize(n);
    if (!in.read(reinterpret_cast<char*>(buf.data()), n)) break;
    fn(buf);
  }
}

}  // namespace shardgraph
