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

#include "shardgraph/exec/jgraph_view.hpp"

namespace shardgraph {

std::vector<Neighbor> JGraphView::neighbors(const VertexRef& ref, Direction d) const {
  if (is_local(ref)) return local_.neighbors_local(ref.id(), d);
  return remote_.neighbors(ref, d);
}

std::optional<PropertyValue> JGraphView::vertex_property(const VertexRef& ref, const std::string& key) const {
  if (is_local(ref)) return local_.get_property(ElementClass::kVertex, ref.id(), key);
  const ElementId id = ref.id();
  auto rows = remote_.get_props(ref.home().index, ElementClass::kVertex, std::span(&id, 1), std::span(&key, 1));
  return rows.at(0).at(0);
}

std::vector<VertexRef> JGraphView::query_local(const std::string& key, const Predicate& p) const {
  std::vector<VertexRef> out;
  for (auto id : local_.index_scan(ElementClass::kVertex, key, p)) out.push_back(VertexRef::Unchecked(id, machine()));
  return out;
}

}  // namespace shardgraph
