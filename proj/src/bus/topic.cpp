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

#include "shardgraph/bus/topic.hpp"

#include <charconv>

namespace shardgraph {

namespace {
[[noreturn]] void Bad(std::string_view s) {
  throw Error(ErrorCode::kInvalidArgument, "malformed topic '" + std::string(s) + "'");
}

uint32_t ParseIndex(std::string_view part, std::string_view whole) {
  uint32_t v = 0;
  auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
  if (ec != std::errc{} || p != part.data() + part.size() || part.empty()) Bad(whole);
  return v;
}
}  // namespace

Topic Topic::Parse(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) Bad(s);
  auto scope = s.substr(0, slash);
  auto rest = s.substr(slash + 1);
  if (scope == "cluster") {
    if (rest.empty() || rest.find('/') != std::string_view::npos) Bad(s);
    return Cluster(std::string(rest));
  }
  auto slash2 = rest.find('/');
  if (slash2 == std::string_view::npos || slash2 + 1 >= rest.size()) Bad(s);
  auto index = ParseIndex(rest.substr(0, slash2), s);
  auto channel = std::string(rest.substr(slash2 + 1));
  if (scope == "machine") return Machine(index, std::move(channel));
  if (scope == "client") return Client(index, std::move(channel));
  Bad(s);
}

std::string Topic::str() const {
  switch (scope) {
    case TopicScope::kMachine: return "machine/" + std::to_string(index) + "/" + channel;
    case TopicScope::kCluster: return "cluster/" + channel;
    case TopicScope::kClient: return "client/" + std::to_string(index) + "/" + channel;
  }
  return {};
}

}  // namespace shardgraph
