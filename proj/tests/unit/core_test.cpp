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

#include <gtest/gtest.h>

#include <random>

#include "shardgraph/core/codec.hpp"
#include "shardgraph/core/ego_graph.hpp"
#include "shardgraph/core/hash.hpp"
#include "shardgraph/core/ids.hpp"
#include "shardgraph/core/property_value.hpp"

namespace shardgraph {
namespace {

TEST(VertexRefTest, EchoesHome) {
  auto r = MakeVertexRef(7, MachineId{2}, 4);
  EXPECT_EQ(r.id(), 7u);
  EXPECT_EQ(HomeMachine(r), MachineId{2});
  EXPECT_EQ(MakeVertexRef(7, MachineId{2}, 4), r);
  EXPECT_EQ(HomeMachine(MakeVertexRef(0, MachineId{0}, 1)), MachineId{0});
}

TEST(VertexRefTest, RejectsHomeOutsideCluster) {
  try {
    MakeVertexRef(7, MachineId{9}, 4);
    FAIL() << "expected out-of-range";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
}

TEST(VertexRefTest, AllocatedIdsCarryHomeAboveExternalRange) {
  auto id = ComposeAllocatedId(MachineId{0}, 5);
  EXPECT_GT(id, kMaxExternalId);
  EXPECT_EQ(id >> kLocalIdBits, 1u);
  EXPECT_EQ(id & kLocalIdMask, 5u);
  EXPECT_NE(ComposeAllocatedId(MachineId{1}, 5), id);
}

TEST(PropertyValueTest, OrderedWithinTag) {
  EXPECT_LT(PropertyValue(int64_t{3}), PropertyValue(int64_t{4}));
  EXPECT_LT(PropertyValue(1.5), PropertyValue(2.0));
  EXPECT_LT(PropertyValue("abc"), PropertyValue("abd"));
  EXPECT_LT(PropertyValue(false), PropertyValue(true));
  EXPECT_EQ(PropertyValue(int64_t{3}).compare(PropertyValue(int64_t{3})), 0);
}

TEST(PropertyValueTest, CrossTagCompareThrows) {
  EXPECT_THROW((void)PropertyValue(int64_t{1}).compare(PropertyValue(1.0)), Error);
  EXPECT_FALSE(PropertyValue(int64_t{1}) == PropertyValue(1.0));
  EXPECT_THROW((void)PropertyValue("x").as_int(), Error);
}

PropertyValue RandomValue(std::mt19937_64& rng) {
  switch (rng() % 4) {
    case 0: return PropertyValue(static_cast<int64_t>(rng()));
    case 1: return PropertyValue(std::bit_cast<double>(rng() & 0x7FEFFFFFFFFFFFFFULL));
    case 2: {
      std::string s(rng() % 20, ' ');
      for (auto& c : s) c = static_cast<char>(rng() % 256);
      return PropertyValue(s);
    }
    default: return PropertyValue(rng() % 2 == 0);
  }
}

TEST(CodecTest, RoundTripProperty) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    auto ref = VertexRef::Unchecked(rng(), MachineId{static_cast<uint32_t>(rng() % 65535)});
    PropertyList props;
    for (int j = 0, n = static_cast<int>(rng() % 4); j < n; ++j) props.emplace_back("k" + std::to_string(j), RandomValue(rng));
    EdgeRecord e{rng(), ref, VertexRef::Unchecked(rng(), MachineId{3}), "lbl" + std::to_string(i)};

    BinaryWriter w;
    w.ref(ref);
    w.props(props);
    w.edge(e);
    BinaryReader r(w.data());
    auto ref2 = r.ref();
    EXPECT_EQ(ref2, ref);
    EXPECT_EQ(ref2.home(), ref.home());
    EXPECT_EQ(r.props(), props);
    EXPECT_EQ(r.edge(), e);
    EXPECT_TRUE(r.done());
  }
}

TEST(CodecTest, LittleEndianLayout) {
  BinaryWriter w;
  w.ref(VertexRef::Unchecked(0x0102030405060708ULL, MachineId{2}));
  w.value(PropertyValue("hi"));
  const Bytes expected = {0x08, 0x07, 0x06, 0x05, 0x04, 0x03, 0x02, 0x01, 0x02, 0x00, 0x00, 0x00,
                          static_cast<uint8_t>(ValueTag::kString), 0x02, 0x00, 0x00, 0x00, 'h', 'i'};
  EXPECT_EQ(w.data(), expected);
}

TEST(CodecTest, TruncatedInputIsProtocolError) {
  BinaryWriter w;
  w.u32(10);
  BinaryReader r(w.data());
  try {
    r.str();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProtocol);
  }
}

TEST(HashTest, DeterministicAndSpread) {
  EXPECT_EQ(HashId(12345), HashId(12345));
  EXPECT_NE(HashId(1), HashId(2));
  // single-bit input change flips roughly half the output bits
  int flips = __builtin_popcountll(HashId(1000) ^ HashId(1001));
  EXPECT_GT(flips, 16);
}

TEST(EgoGraphTest, RootOnlyByDefault) {
  auto root = VertexRef::Unchecked(5, MachineId{0});
  EgoGraph g(root);
  EXPECT_EQ(g.label(5), "root");
  EXPECT_EQ(g.label(6), "");
  EXPECT_TRUE(g.edges().empty());
  EXPECT_NO_THROW(g.validate());
}

TEST(EgoGraphTest, RejectsNonIncidentEdge) {
  EgoGraph g(VertexRef::Unchecked(5, MachineId{0}));
  EdgeRecord e{1, VertexRef::Unchecked(1, MachineId{0}), VertexRef::Unchecked(2, MachineId{0}), "x"};
  EXPECT_THROW(g.add_edge(e), Error);
}

TEST(EgoGraphTest, WritesLimitedToRootAndIncidentEdges) {
  auto root = VertexRef::Unchecked(5, MachineId{0});
  auto other = VertexRef::Unchecked(6, MachineId{1});
  EgoGraph g(root);
  g.add_edge({10, root, other, "x"});
  g.write_root("c", PropertyValue(int64_t{1}));
  g.write_edge(10, "w", PropertyValue(2.0));
  try {
    g.write_edge(11, "w", PropertyValue(2.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfScopeWrite);
  }
  EXPECT_EQ(g.write_set().size(), 2u);
  EXPECT_NO_THROW(g.validate());
  ASSERT_EQ(g.neighbors().size(), 1u);
  EXPECT_EQ(g.neighbors()[0].direction, Direction::kOut);
  EXPECT_EQ(g.neighbors()[0].ref.home(), MachineId{1});
}

TEST(EgoGraphTest, SelfLoopAppearsOncePerDirection) {
  auto root = VertexRef::Unchecked(5, MachineId{0});
  EgoGraph g(root);
  g.add_edge({10, root, root, "x"});
  g.add_edge({10, root, root, "x"});
  EXPECT_EQ(g.edges().size(), 1u);
  EXPECT_EQ(g.neighbors().size(), 2u);
  EXPECT_NO_THROW(g.validate());
}

}  // namespace
}  // namespace shardgraph
