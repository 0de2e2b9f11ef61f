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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shardgraph/core/ids.hpp"
#include "shardgraph/core/property_value.hpp"

namespace shardgraph {

using Bytes = std::vector<uint8_t>;

// Canonical little-endian encoding shared by the wire protocol and the
// shard persistence log. Strings are u32-length-prefixed UTF-8; property
// values are a one-byte tag followed by the payload.
class BinaryWriter {
 public:
  BinaryWriter() = default;
  explicit BinaryWriter(size_t reserve) { buf_.reserve(reserve); }

  void u8(uint8_t v) { buf_.push_back(v); }
  void u16(uint16_t v) { PutLe(v, 2); }
  void u32(uint32_t v) { PutLe(v, 4); }
  void u64(uint64_t v) { PutLe(v, 8); }
  void i64(int64_t v) { PutLe(static_cast<uint64_t>(v), 8); }
  void f64(double v);
  void boolean(bool v) { u8(v ? 1 : 0); }
  void str(std::string_view s);
  void bytes(std::span<const uint8_t> b);

  void ref(const VertexRef& r);
  void value(const PropertyValue& v);
  void edge(const EdgeRecord& e);
  void props(const PropertyList& p);

  const Bytes& data() const noexcept { return buf_; }
  Bytes take() noexcept { return std::move(buf_); }
  size_t size() const noexcept { return buf_.size(); }

 private:
  void PutLe(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  Bytes buf_;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::span<const uint8_t> data) : data_(data) {}

  uint8_t u8();
  uint16_t u16() { return static_cast<uint16_t>(GetLe(2)); }
  uint32_t u32() { return static_cast<uint32_t>(GetLe(4)); }
  uint64_t u64() { return GetLe(8); }
  int64_t i64() { return static_cast<int64_t>(GetLe(8)); }
  double f64();
  bool boolean() { return u8() != 0; }
  std::string str();
  Bytes bytes();

  VertexRef ref();
  PropertyValue value();
  EdgeRecord edge();
  PropertyList props();

  bool done() const noexcept { return pos_ == data_.size(); }
  size_t remaining() const noexcept { return data_.size() - pos_; }

 private:
  void Need(size_t n) const;
  uint64_t GetLe(int n);

  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

// Bytes a value hashes as for attribute placement.
Bytes CanonicalBytes(const PropertyValue& v);

}  // namespace shardgraph
