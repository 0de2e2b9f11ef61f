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

#include <atomic>
#include <chrono>
#include <memory>
#include <thread>
#include <vector>

#include <unistd.h>

#include "shardgraph/bus/rpc.hpp"
#include "shardgraph/bus/tcp_transport.hpp"
#include "shardgraph/bus/transport.hpp"

namespace shardgraph {
namespace {

using namespace std::chrono_literals;

struct Counting {
  std::vector<std::unique_ptr<Broker>> brokers;
  std::vector<std::shared_ptr<std::atomic<int>>> hits;

  Counting(Transport& t, uint32_t k, const std::string& channel) {
    for (uint32_t i = 0; i < k; ++i) {
      brokers.push_back(std::make_unique<Broker>(Address{TopicScope::kMachine, i}, Broker::Options{}));
      auto h = std::make_shared<std::atomic<int>>(0);
      hits.push_back(h);
      brokers[i]->register_handler("count", [h](const Envelope&) { ++*h; });
      brokers[i]->subscribe(Topic::Machine(i, channel).str(), "count");
      brokers[i]->subscribe(Topic::Cluster(channel).str(), "count");
      t.attach(*brokers[i]);
    }
  }
  ~Counting() {
    for (auto& b : brokers) b->stop();
  }
  void Settle() {
    for (int spin = 0; spin < 200; ++spin) std::this_thread::sleep_for(1ms);
  }
};

bool WaitFor(const std::function<bool()>& pred, std::chrono::milliseconds limit = 2000ms) {
  auto end = std::chrono::steady_clock::now() + limit;
  while (std::chrono::steady_clock::now() < end) {
    if (pred()) return true;
    std::this_thread::sleep_for(1ms);
  }
  return pred();
}

TEST(Topic, ParseAndFormat) {
  EXPECT_EQ(Topic::Parse("machine/2/storage"), Topic::Machine(2, "storage"));
  EXPECT_EQ(Topic::Parse("cluster/job"), Topic::Cluster("job"));
  EXPECT_EQ(Topic::Parse("client/7/reply").str(), "client/7/reply");
  for (const char* bad : {"", "machine", "machine/x/ch", "machine/1", "galaxy/1/ch", "cluster/", "machine/1/"}) {
    EXPECT_THROW(Topic::Parse(bad), Error) << bad;
  }
}

TEST(InProcBus, MachineTopicReachesOnlyThatBroker) {
  InProcTransport t(4);
  Counting c(t, 4, "ping");
  t.publish(Topic::Machine(2, "ping"), {1, 2, 3});
  ASSERT_TRUE(WaitFor([&] { return *c.hits[2] == 1; }));
  c.Settle();
  EXPECT_EQ(*c.hits[0], 0);
  EXPECT_EQ(*c.hits[1], 0);
  EXPECT_EQ(*c.hits[2], 1);
  EXPECT_EQ(*c.hits[3], 0);
}

TEST(InProcBus, ClusterTopicReachesEveryBroker) {
  InProcTransport t(4);
  Counting c(t, 4, "ping");
  t.publish(Topic::Cluster("ping"), {});
  ASSERT_TRUE(WaitFor([&] {
    for (auto& h : c.hits)
      if (*h != 1) return false;
    return true;
  }));
}

TEST(InProcBus, MachineOutsideClusterIsRejected) {
  InProcTransport t(4);
  Counting c(t, 4, "ping");
  try {
    t.publish(Topic::Machine(9, "ping"), {});
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
}

TEST(InProcBus, TwoSubscribersBothRun) {
  InProcTransport t(1);
  Broker b(Address{TopicScope::kMachine, 0}, {});
  std::atomic<int> x{0}, y{0};
  b.register_handler("x", [&](const Envelope&) { ++x; });
  b.register_handler("y", [&](const Envelope&) { ++y; });
  b.subscribe("machine/0/ch", "x");
  b.subscribe("machine/0/ch", "y");
  b.subscribe("machine/0/ch", "y");  // repeat is a no-op
  t.attach(b);
  t.publish(Topic::Machine(0, "ch"), {});
  ASSERT_TRUE(WaitFor([&] { return x == 1 && y == 1; }));
  std::this_thread::sleep_for(20ms);
  EXPECT_EQ(y, 1);
  EXPECT_THROW(b.subscribe("machine/0/ch", "nope"), Error);
  b.stop();
}

TEST(InProcBus, NoReplayOfEarlierMessages) {
  InProcTransport t(1);
  Broker b(Address{TopicScope::kMachine, 0}, {});
  std::atomic<int> n{0};
  b.register_handler("h", [&](const Envelope&) { ++n; });
  t.attach(b);
  t.publish(Topic::Machine(0, "ch"), {});
  ASSERT_TRUE(WaitFor([&] { return b.unrouted() == 1; }));
  b.subscribe("machine/0/ch", "h");
  std::this_thread::sleep_for(20ms);
  EXPECT_EQ(n, 0);
  t.publish(Topic::Machine(0, "ch"), {});
  ASSERT_TRUE(WaitFor([&] { return n == 1; }));
  b.stop();
}

TEST(InProcBus, DuplicatesAreHandledOnce) {
  InProcOptions opt;
  opt.duplicate_probability = 0.5;
  opt.seed = 42;
  InProcTransport t(2, opt);
  Counting c(t, 2, "ping");
  constexpr int kMsgs = 500;
  for (int i = 0; i < kMsgs; ++i) t.publish(Topic::Machine(i % 2, "ping"), {});
  ASSERT_TRUE(WaitFor([&] { return *c.hits[0] + *c.hits[1] == kMsgs; }));
  c.Settle();
  EXPECT_EQ(*c.hits[0] + *c.hits[1], kMsgs);
  EXPECT_GT(t.duplicates_injected(), 100u);
  EXPECT_EQ(c.brokers[0]->duplicates_dropped() + c.brokers[1]->duplicates_dropped(), t.duplicates_injected());
}

TEST(InProcBus, RepublishKeepsIdAndIsDropped) {
  InProcTransport t(1);
  Broker b(Address{TopicScope::kMachine, 0}, {});
  std::atomic<int> n{0};
  b.register_handler("h", [&](const Envelope&) { ++n; });
  b.subscribe("machine/0/ch", "h");
  t.attach(b);
  Envelope env;
  b.register_handler("keep", [&](const Envelope& e) { env = e; });
  b.subscribe("machine/0/ch", "keep");
  t.publish(Topic::Machine(0, "ch"), {9});
  ASSERT_TRUE(WaitFor([&] { return n == 1; }));
  std::this_thread::sleep_for(10ms);
  t.republish(env);
  ASSERT_TRUE(WaitFor([&] { return b.duplicates_dropped() == 1; }));
  EXPECT_EQ(n, 1);
  b.stop();
}

TEST(InProcBus, DisabledMachineDoesNotBlockOthers) {
  InProcTransport t(3);
  Counting c(t, 3, "ping");
  t.set_machine_enabled(1, false);
  for (int i = 0; i < 30; ++i) t.publish(Topic::Machine(i % 3, "ping"), {});
  ASSERT_TRUE(WaitFor([&] { return *c.hits[0] == 10 && *c.hits[2] == 10; }));
  EXPECT_EQ(*c.hits[1], 0);
}

TEST(InProcBus, PublishCountsPerChannel) {
  InProcTransport t(2);
  Counting c(t, 2, "a");
  t.publish(Topic::Machine(0, "a"), {});
  t.publish(Topic::Machine(1, "a"), {});
  t.publish(Topic::Cluster("b"), {});
  EXPECT_EQ(t.published("a"), 2u);
  EXPECT_EQ(t.published("b"), 1u);
  EXPECT_EQ(t.published_total(), 3u);
}

// Echo servers on every machine that reply with their index.
struct EchoCluster {
  std::vector<std::unique_ptr<Broker>> brokers;
  EchoCluster(Transport& t, uint32_t k) {
    for (uint32_t i = 0; i < k; ++i) {
      auto b = std::make_unique<Broker>(Address{TopicScope::kMachine, i}, Broker::Options{});
      b->register_handler("echo", [&t, i](const Envelope& env) {
        Bytes out = env.payload;
        out.push_back(static_cast<uint8_t>(i));
        Reply(t, env, std::move(out));
      });
      b->subscribe(Topic::Machine(i, "echo").str(), "echo");
      b->subscribe(Topic::Cluster("echo").str(), "echo");
      t.attach(*b);
      brokers.push_back(std::move(b));
    }
  }
  ~EchoCluster() {
    for (auto& b : brokers) b->stop();
  }
};

ReplyCollector::KeyFn LastByte() {
  return [](const Envelope& e) -> std::optional<uint32_t> {
    if (e.payload.empty()) return std::nullopt;
    return e.payload.back();
  };
}

TEST(Rpc, CallRoundTrip) {
  InProcTransport t(3);
  EchoCluster echo(t, 3);
  RpcClient client(t);
  auto r = client.call(Topic::Machine(1, "echo"), {7}, 2000ms);
  EXPECT_EQ(r.payload, (Bytes{7, 1}));
}

TEST(Rpc, CallTimesOutOnDisabledMachine) {
  InProcTransport t(2);
  EchoCluster echo(t, 2);
  t.set_machine_enabled(1, false);
  RpcClient client(t);
  try {
    client.call(Topic::Machine(1, "echo"), {}, 50ms);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTimeout);
  }
}

TEST(Rpc, GatherAllAndPartial) {
  InProcTransport t(4);
  EchoCluster echo(t, 4);
  RpcClient client(t);
  {
    const uint64_t corr = client.next_correlation();
    auto col = client.open_collector(corr, LastByte());
    t.publish(Topic::Cluster("echo"), {}, PayloadEncoding::kBinary, corr, client.reply_topic().str());
    auto got = col->wait(4, std::chrono::steady_clock::now() + 2s);
    client.close_collector(corr);
    EXPECT_EQ(got.size(), 4u);
  }
  t.set_machine_enabled(3, false);
  {
    const uint64_t corr = client.next_correlation();
    auto col = client.open_collector(corr, LastByte());
    auto start = std::chrono::steady_clock::now();
    t.publish(Topic::Cluster("echo"), {}, PayloadEncoding::kBinary, corr, client.reply_topic().str());
    auto got = col->wait(4, start + 100ms);
    client.close_collector(corr);
    EXPECT_GE(std::chrono::steady_clock::now() - start, 100ms);
    ASSERT_EQ(got.size(), 3u);
    EXPECT_FALSE(got.contains(3));
  }
}

TEST(Rpc, DuplicateRepliesDoNotConfuseGather) {
  InProcOptions opt;
  opt.duplicate_probability = 1.0;
  InProcTransport t(3, opt);
  EchoCluster echo(t, 3);
  RpcClient client(t);
  for (int round = 0; round < 20; ++round) {
    auto r = client.call(Topic::Machine(round % 3, "echo"), {1}, 2000ms);
    EXPECT_EQ(r.payload.back(), round % 3);
  }
  EXPECT_GT(t.duplicates_injected(), 0u);
}

TEST(TcpFrame, EncodeDecode) {
  Envelope env;
  env.msg_id = 0xABCDEF0123ULL;
  env.topic = "machine/3/storage";
  env.correlation_id = 77;
  env.reply_to = "client/5/reply";
  env.encoding = PayloadEncoding::kJson;
  env.payload = {'{', '}'};
  Bytes frame = EncodeFrame(env, "10.0.0.1:4000");
  const uint32_t len = (uint32_t{frame[0]} << 24) | (uint32_t{frame[1]} << 16) | (uint32_t{frame[2]} << 8) | frame[3];
  ASSERT_EQ(len + 4, frame.size());
  auto [back, addr] = DecodeFrame(std::span(frame).subspan(4));
  EXPECT_EQ(back.msg_id, env.msg_id);
  EXPECT_EQ(back.topic, env.topic);
  EXPECT_EQ(back.correlation_id, env.correlation_id);
  EXPECT_EQ(back.reply_to, env.reply_to);
  EXPECT_EQ(back.encoding, env.encoding);
  EXPECT_EQ(back.payload, env.payload);
  EXPECT_EQ(addr, "10.0.0.1:4000");

  Bytes truncated(frame.begin() + 4, frame.begin() + 10);
  EXPECT_THROW(DecodeFrame(truncated), Error);
}

TEST(Membership, ParseValidates) {
  auto m = Membership::Parse(R"({"machines":[{"index":1,"host":"b","port":2},{"index":0,"host":"a","port":1}]})");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.nodes[0].host, "a");
  EXPECT_EQ(Membership::Parse(m.ToJson()).nodes[1].port, 2);
  EXPECT_THROW(Membership::Parse(R"({"machines":[{"index":1,"host":"b","port":2}]})"), Error);
  EXPECT_THROW(Membership::Parse("{}"), Error);
}

uint16_t FreePort() {
  // pid-keyed so concurrent ctest processes don't collide
  static std::atomic<uint16_t> next{static_cast<uint16_t>(20000 + (::getpid() % 20000))};
  return next++;
}

TEST(TcpBus, RequestReplyAndBroadcastAcrossProcessesShape) {
  Membership m;
  for (uint32_t i = 0; i < 3; ++i) m.nodes.push_back({i, "127.0.0.1", FreePort()});
  // Servers and the client use separate transports, as separate processes would.
  TcpTransport server(m);
  EchoCluster echo(server, 3);
  TcpTransport client_side(m);
  RpcClient client(client_side);

  auto r = client.call(Topic::Machine(2, "echo"), {5}, 3000ms);
  EXPECT_EQ(r.payload, (Bytes{5, 2}));

  const uint64_t corr = client.next_correlation();
  auto col = client.open_collector(corr, LastByte());
  client_side.publish(Topic::Cluster("echo"), {}, PayloadEncoding::kBinary, corr, client.reply_topic().str());
  auto got = col->wait(3, std::chrono::steady_clock::now() + 3s);
  client.close_collector(corr);
  EXPECT_EQ(got.size(), 3u);

  server.stop_machine(1);
  EXPECT_THROW(client.call(Topic::Machine(1, "echo"), {}, 100ms), Error);
  EXPECT_EQ(client.call(Topic::Machine(0, "echo"), {}, 3000ms).payload.back(), 0);
}

}  // namespace
}  // namespace shardgraph
