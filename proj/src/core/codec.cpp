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

#include "shardgraph/core/codec.hpp"

#include <bit>
#include <cstring>

namespace shardgraph {

void BinaryWriter::f64(double v) { u64(std::bit_cast<uint64_t>(v)); }

void BinaryWriter::str(std::string_view s) {
  u32(static_cast<uint32_t>(s.size()));
  buf_.insert(buf_.end(), s.begin(), s.end());
}

void BinaryWriter::bytes(std::span<const uint8_t> b) {
  u32(static_cast<uint32_t>(b.size()));
  buf_.insert(buf_.end(), b.begin(), b.end());
}

void BinaryWriter::ref(const VertexRef& r) {
  u64(r.id());
  u32(r.home().index);
}

void BinaryWriter::value(const PropertyValue& v) {
  u8(static_cast<uint8_t>(v.tag()));
  switch (v.tag()) {
    case ValueTag::kInt: i64(v.as_int()); break;
    case ValueTag::kFloat: f64(v.as_float()); break;
    case ValueTag::kString: str(v.as_string()); break;
    case ValueTag::kBool: boolean(v.as_bool()); break;
  }
}

void BinaryWriter::edge(const EdgeRecord& e) {
  u64(e.id);
  ref(e.src);
  ref(e.dst);
  str(e.label);
}

void BinaryWriter::props(const PropertyList& p) {
  u32(static_cast<uint32_t>(p.size()));
  for (const auto& [k, v] : p) {
    str(k);
    value(v);
  }
}

void BinaryReader::Need(size_t n) const {
  if (data_.size() - pos_ < n) {
    throw Error(ErrorCode::kProtocol, "truncated message: need " + std::to_string(n) +
                                          " bytes, have " + std::to_string(data_.size() - pos_));
  }
}

uint64_t BinaryReader::GetLe(int n) {
  Need(static_cast<size_t>(n));
  uint64_t v = 0;
  for (int i = 0; i < n; ++i) v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
  pos_ += static_cast<size_t>(n);
  return v;
}

uint8_t BinaryReader::u8() {
  Need(1);
  return data_[pos_++];
}

double BinaryReader::f64() { return std::bit_cast<double>(u64()); }

std::string BinaryReader::str() {
  uint32_t n = u32();
  Need(n);
  std::string s(reinterpret_cast<const char*>(data_.data() + pos_), n);
  pos_ += n;
  return s;
}

Bytes BinaryReader::bytes() {
  uint32_t n = u32();
  Need(n);
  Bytes b(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
          data_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
  pos_ += n;
  return b;
}

VertexRef BinaryReader::ref() {
  VertexId id = u64();
  MachineId home{u32()};
  return VertexRef::Unchecked(id, home);
}

PropertyValue BinaryReader::value() {
  auto tag = u8();
  switch (static_cast<ValueTag>(tag)) {
    case ValueTag::kInt: return PropertyValue(i64());
    case ValueTag::kFloat: return PropertyValue(f64());
    case ValueTag::kString: return PropertyValue(str());
    case ValueTag::kBool: return PropertyValue(boolean());
  }
  throw Error(ErrorCode::kProtocol, "bad value tag " + std::to_string(tag));
}

EdgeRecord BinaryReader::edge() {
  EdgeRecord e;
  e.id = u64();
  e.src = ref();
  e.dst = ref();
  e.label = str();
  return e;
}

PropertyList BinaryReader::props() {
  uint32_t n = u32();
  PropertyList p;
  p.reserve(n);
  for (uint32_t i = 0; i < n; ++i) {
    auto k = str();
    p.emplace_back(std::move(k), value());
  }
  return p;
}

Bytes CanonicalBytes(const PropertyValue& v) {
  BinaryWriter w;
  w.value(v);
  return w.take();
}

}  // namespace shardgraph
