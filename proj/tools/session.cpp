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

#include "session.hpp"

#include <fstream>

#include <json.hpp>

#include "shardgraph/error.hpp"

namespace shardgraph::cli {

namespace fs = std::filesystem;

std::optional<uint32_t> ReadDataDirSize(const fs::path& data) {
  std::ifstream in(data / "cluster.json");
  if (!in) return std::nullopt;
  try {
    return nlohmann::json::parse(in).at("nodes").get<uint32_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, "bad " + (data / "cluster.json").string() + ": " + e.what());
  }
}

void WriteDataDirSize(const fs::path& data, uint32_t nodes) {
  fs::create_directories(data);
  std::ofstream out(data / "cluster.json");
  out << nlohmann::json{{"nodes", nodes}, {"transport", "inproc"}}.dump(2) << "\n";
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + (data / "cluster.json").string());
}

Manifest LoadManifest(const std::optional<fs::path>& path) {
  return path ? Manifest::Load(*path) : Manifest::Default();
}

Session::Session(const SessionOptions& options) {
  DGraphOptions d;
  d.timeout = std::chrono::milliseconds(options.timeout_ms);
  auto manifest = LoadManifest(options.manifest);

  if (options.connect) {
    if (options.data) throw Error(ErrorCode::kInvalidArgument, "--connect and --data are exclusive");
    tcp_ = std::make_unique<TcpTransport>(Membership::Load(*options.connect));
    graph_ = std::make_unique<DGraph>(*tcp_, manifest, d);
    return;
  }

  LocalClusterOptions o;
  o.machines = options.nodes.value_or(4);
  o.node.threads = options.threads;
  o.node.rpc_timeout = std::chrono::milliseconds(options.timeout_ms);
  o.manifest = manifest;
  if (options.data) {
    const auto recorded = ReadDataDirSize(*options.data);
    if (recorded && options.nodes && *recorded != *options.nodes) {
      throw Error(ErrorCode::kInvalidArgument, options.data->string() + " holds a " + std::to_string(*recorded) +
                                                   "-machine cluster, not " + std::to_string(*options.nodes));
    }
    if (recorded) o.machines = *recorded;
    WriteDataDirSize(*options.data, o.machines);
    o.node.data_dir = *options.data;
  }
  local_ = std::make_unique<LocalCluster>(o);
  graph_ = std::make_unique<DGraph>(local_->transport(), manifest, d);
}

Session::~Session() {
  graph_.reset();
  local_.reset();
  tcp_.reset();
}

std::string Session::mode() const { return tcp_ ? "tcp" : "inproc"; }

}  // namespace shardgraph::cli
