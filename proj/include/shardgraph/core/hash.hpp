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
#include <string_view>

namespace shardgraph {

// Fixed seed shared by every hash-based placement so locality numbers are
// reproducible across runs and hosts.
inline constexpr uint64_t kPlacementSeed = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer (Stafford mix13): full 64-bit avalanche.
constexpr uint64_t Mix64(uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

constexpr uint64_t HashId(uint64_t id, uint64_t seed = kPlacementSeed) noexcept {
  return Mix64(id + seed);
}

// FNV-1a over bytes, finalized with Mix64.
inline uint64_t HashBytes(std::span<const uint8_t> bytes, uint64_t seed = kPlacementSeed) noexcept {
  uint64_t h = 0xCBF29CE484222325ULL ^ seed;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001B3ULL;
  }
  return Mix64(h);
}

}  // namespace shardgraph
