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

#include "shardgraph/bus/tcp_transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace shardgraph {

using nlohmann::json;

Membership Membership::Parse(const std::string& json_text) {
  Membership m;
  try {
    auto j = json::parse(json_text);
    for (const auto& n : j.at("machines")) {
      m.nodes.push_back({n.at("index").get<uint32_t>(), n.at("host").get<std::string>(), n.at("port").get<uint16_t>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad membership config: ") + e.what());
  }
  std::sort(m.nodes.begin(), m.nodes.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  for (size_t i = 0; i < m.nodes.size(); ++i) {
    if (m.nodes[i].index != i) throw Error(ErrorCode::kInvalidArgument, "membership indices must be dense from 0");
  }
  if (m.nodes.empty()) throw Error(ErrorCode::kInvalidArgument, "membership lists no machines");
  return m;
}

Membership Membership::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read membership config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

std::string Membership::ToJson() const {
  json j;
  j["machines"] = json::array();
  for (const auto& n : nodes) j["machines"].push_back({{"index", n.index}, {"host", n.host}, {"port", n.port}});
  return j.dump(2);
}

namespace {

void PutBe32(Bytes& b, uint32_t v) {
  for (int i = 3; i >= 0; --i) b.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint32_t GetBe32(const uint8_t* p) {
  return (uint32_t{p[0]} << 24) | (uint32_t{p[1]} << 16) | (uint32_t{p[2]} << 8) | uint32_t{p[3]};
}

bool WriteAll(int fd, const uint8_t* data, size_t n) {
  while (n > 0) {
    ssize_t w = ::send(fd, data, n, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data += w;
    n -= static_cast<size_t>(w);
  }
  return true;
}

bool ReadAll(int fd, uint8_t* data, size_t n) {
  while (n > 0) {
    ssize_t r = ::recv(fd, data, n, 0);
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) return false;
    data += r;
    n -= static_cast<size_t>(r);
  }
  return true;
}

int Connect(const std::string& host, uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0) return -1;
  int fd = -1;
  for (auto* p = res; p != nullptr; p = p->ai_next) {
    fd = ::socket(p->ai_family, p->ai_socktype, p->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, p->ai_addr, p->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd >= 0) {
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  }
  return fd;
}

}  // namespace

Bytes EncodeFrame(const Envelope& env, const std::string& reply_addr) {
  json h;
  h["msgId"] = env.msg_id;
  h["topic"] = env.topic;
  h["correlationId"] = env.correlation_id ? json(*env.correlation_id) : json(nullptr);
  h["payloadEncoding"] = env.encoding == PayloadEncoding::kJson ? "json" : "binary";
  if (!env.reply_to.empty()) h["replyTo"] = env.reply_to;
  if (!reply_addr.empty()) h["replyAddr"] = reply_addr;
  const std::string header = h.dump();

  Bytes frame;
  frame.reserve(8 + header.size() + env.payload.size());
  PutBe32(frame, static_cast<uint32_t>(4 + header.size() + env.payload.size()));
  PutBe32(frame, static_cast<uint32_t>(header.size()));
  frame.insert(frame.end(), header.begin(), header.end());
  frame.insert(frame.end(), env.payload.begin(), env.payload.end());
  return frame;
}

std::pair<Envelope, std::string> DecodeFrame(std::span<const uint8_t> body) {
  if (body.size() < 4) throw Error(ErrorCode::kProtocol, "frame shorter than its header length");
  const uint32_t hlen = GetBe32(body.data());
  if (body.size() < 4 + static_cast<size_t>(hlen)) throw Error(ErrorCode::kProtocol, "frame header overruns frame");
  Envelope env;
  std::string reply_addr;
  try {
    auto h = json::parse(body.begin() + 4, body.begin() + 4 + hlen);
    env.msg_id = h.at("msgId").get<uint64_t>();
    env.topic = h.at("topic").get<std::string>();
    if (!h.at("correlationId").is_null()) env.correlation_id = h.at("correlationId").get<uint64_t>();
    env.encoding = h.at("payloadEncoding").get<std::string>() == "json" ? PayloadEncoding::kJson : PayloadEncoding::kBinary;
    if (h.contains("replyTo")) env.reply_to = h["replyTo"].get<std::string>();
    if (h.contains("replyAddr")) reply_addr = h["replyAddr"].get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kProtocol, std::string("bad frame header: ") + e.what());
  }
  env.payload.assign(body.begin() + 4 + hlen, body.end());
  return {std::move(env), std::move(reply_addr)};
}

struct TcpTransport::Listener {
  int fd = -1;
  uint16_t port = 0;
  int machine = -1;  // -1: client listener
  std::atomic<bool> closed{false};
  std::thread accept_thread;
  std::mutex mu;
  std::vector<int> conns;
  std::vector<std::thread> readers;

  void Close() {
    if (closed.exchange(true)) return;
    ::shutdown(fd, SHUT_RDWR);
    ::close(fd);
    std::lock_guard lock(mu);
    for (int c : conns) ::shutdown(c, SHUT_RDWR);
  }

  void Join() {
    if (accept_thread.joinable()) accept_thread.join();
    std::vector<std::thread> rs;
    {
      std::lock_guard lock(mu);
      rs.swap(readers);
    }
    for (auto& t : rs) t.join();
    std::lock_guard lock(mu);
    for (int c : conns) ::close(c);
    conns.clear();
  }
};

struct TcpTransport::Connection {
  int fd = -1;
  std::mutex mu;
  ~Connection() {
    if (fd >= 0) ::close(fd);
  }
};

TcpTransport::TcpTransport(Membership membership, std::string advertise_host)
    : Transport(membership.size()), membership_(std::move(membership)), advertise_host_(std::move(advertise_host)) {}

TcpTransport::~TcpTransport() {
  stopping_ = true;
  std::vector<Listener*> all;
  {
    std::lock_guard lock(mu_);
    for (auto& [i, l] : machine_listeners_) all.push_back(l.get());
    if (client_listener_) all.push_back(client_listener_.get());
  }
  for (auto* l : all) l->Close();
  {
    std::lock_guard lock(conn_mu_);
    for (auto& [k, c] : connections_) ::shutdown(c->fd, SHUT_RDWR);
    connections_.clear();
  }
  for (auto* l : all) l->Join();
}

std::unique_ptr<TcpTransport::Listener> TcpTransport::Listen(uint16_t port, int machine) {
  auto l = std::make_unique<Listener>();
  l->machine = machine;
  l->fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (l->fd < 0) throw Error(ErrorCode::kIo, "socket() failed");
  int one = 1;
  ::setsockopt(l->fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(port);
  if (::bind(l->fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 || ::listen(l->fd, 64) != 0) {
    ::close(l->fd);
    throw Error(ErrorCode::kIo, "cannot listen on port " + std::to_string(port) + ": " + std::strerror(errno));
  }
  socklen_t len = sizeof(addr);
  ::getsockname(l->fd, reinterpret_cast<sockaddr*>(&addr), &len);
  l->port = ntohs(addr.sin_port);
  auto* raw = l.get();
  l->accept_thread = std::thread([this, raw] { AcceptLoop(raw); });
  return l;
}

void TcpTransport::AcceptLoop(Listener* l) {
  for (;;) {
    int c = ::accept(l->fd, nullptr, nullptr);
    if (c < 0) {
      if (errno == EINTR) continue;
      return;
    }
    int one = 1;
    ::setsockopt(c, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    std::lock_guard lock(l->mu);
    if (l->closed) {
      ::close(c);
      return;
    }
    l->conns.push_back(c);
    l->readers.emplace_back([this, l, c] { ReadLoop(l, c); });
  }
}

void TcpTransport::ReadLoop(Listener* l, int fd) {
  std::vector<uint8_t> body;
  for (;;) {
    uint8_t len[4];
    if (!ReadAll(fd, len, 4)) return;
    body.resize(GetBe32(len));
    if (!ReadAll(fd, body.data(), body.size())) return;
    if (l->closed) return;
    try {
      auto [env, reply_addr] = DecodeFrame(body);
      OnFrame(l, std::move(env), reply_addr);
    } catch (const Error&) {
      return;  // protocol violation: drop the connection
    }
  }
}

void TcpTransport::OnFrame(Listener* l, Envelope env, const std::string& reply_addr) {
  Broker* target = nullptr;
  {
    std::lock_guard lock(mu_);
    if (!reply_addr.empty() && !env.reply_to.empty()) {
      auto t = Topic::Parse(env.reply_to);
      auto colon = reply_addr.rfind(':');
      if (t.scope == TopicScope::kClient && colon != std::string::npos && !clients_.contains(t.index)) {
        client_routes_[t.index] = {reply_addr.substr(0, colon),
                                   static_cast<uint16_t>(std::stoi(reply_addr.substr(colon + 1)))};
      }
    }
    if (l->machine >= 0) {
      auto it = machines_.find(static_cast<uint32_t>(l->machine));
      if (it != machines_.end()) target = it->second;
    } else {
      auto t = Topic::Parse(env.topic);
      auto it = clients_.find(t.index);
      if (it != clients_.end()) target = it->second;
    }
  }
  if (target != nullptr) target->deliver(std::move(env));
}

void TcpTransport::attach(Broker& broker) {
  const auto& a = broker.address();
  std::lock_guard lock(mu_);
  if (a.scope == TopicScope::kMachine) {
    if (a.index >= membership_.size()) throw Error(ErrorCode::kOutOfRange, "machine index outside membership");
    machines_[a.index] = &broker;
    if (!machine_listeners_.contains(a.index)) {
      machine_listeners_[a.index] = Listen(membership_.nodes[a.index].port, static_cast<int>(a.index));
    }
  } else {
    clients_[a.index] = &broker;
    if (!client_listener_) client_listener_ = Listen(0, -1);
  }
}

void TcpTransport::detach(const Address& a) {
  std::lock_guard lock(mu_);
  if (a.scope == TopicScope::kMachine) {
    machines_.erase(a.index);
  } else {
    clients_.erase(a.index);
  }
}

uint32_t TcpTransport::new_client_index() {
  static std::mt19937 rng{std::random_device{}()};
  static std::mutex m;
  std::lock_guard lock(m);
  return rng() & 0x7FFFFFFF;
}

void TcpTransport::stop_machine(uint32_t machine) {
  std::unique_ptr<Listener> l;
  {
    std::lock_guard lock(mu_);
    machines_.erase(machine);
    auto it = machine_listeners_.find(machine);
    if (it == machine_listeners_.end()) return;
    l = std::move(it->second);
    machine_listeners_.erase(it);
  }
  l->Close();
  l->Join();
}

std::string TcpTransport::ClientReplyAddr(const Envelope& env) {
  if (env.reply_to.empty()) return {};
  auto t = Topic::Parse(env.reply_to);
  std::lock_guard lock(mu_);
  if (t.scope != TopicScope::kClient || !clients_.contains(t.index) || !client_listener_) return {};
  return advertise_host_ + ":" + std::to_string(client_listener_->port);
}

void TcpTransport::SendTo(const std::string& host, uint16_t port, const Envelope& env) {
  const Bytes frame = EncodeFrame(env, ClientReplyAddr(env));
  const std::string key = host + ":" + std::to_string(port);
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::shared_ptr<Connection> conn;
    {
      std::lock_guard lock(conn_mu_);
      auto& slot = connections_[key];
      if (!slot) {
        int fd = Connect(host, port);
        if (fd < 0) {
          connections_.erase(key);
          break;
        }
        slot = std::make_shared<Connection>();
        slot->fd = fd;
      }
      conn = slot;
    }
    {
      std::lock_guard lock(conn->mu);
      if (WriteAll(conn->fd, frame.data(), frame.size())) return;
    }
    std::lock_guard lock(conn_mu_);
    if (connections_[key] == conn) connections_.erase(key);
  }
  ++send_failures_;
}

void TcpTransport::Route(const Topic& topic, Envelope env) {
  if (stopping_) return;
  switch (topic.scope) {
    case TopicScope::kMachine: {
      const auto& n = membership_.nodes.at(topic.index);
      SendTo(n.host, n.port, env);
      break;
    }
    case TopicScope::kCluster:
      for (const auto& n : membership_.nodes) SendTo(n.host, n.port, env);
      break;
    case TopicScope::kClient: {
      Broker* local = nullptr;
      std::optional<std::pair<std::string, uint16_t>> route;
      {
        std::lock_guard lock(mu_);
        if (auto it = clients_.find(topic.index); it != clients_.end()) local = it->second;
        else if (auto r = client_routes_.find(topic.index); r != client_routes_.end()) route = r->second;
      }
      if (local != nullptr) local->deliver(std::move(env));
      else if (route) SendTo(route->first, route->second, env);
      break;
    }
  }
}

}  // namespace shardgraph
