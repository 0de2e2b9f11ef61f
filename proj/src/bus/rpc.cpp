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

#include "shardgraph/bus/rpc.hpp"

namespace shardgraph {

void Reply(Transport& t, const Envelope& req, Bytes payload, PayloadEncoding enc) {
  if (req.reply_to.empty()) return;
  t.publish(Topic::Parse(req.reply_to), std::move(payload), enc, req.correlation_id);
}

void ReplyCollector::push(const Envelope& env) {
  auto key = key_(env);
  if (!key) return;
  {
    std::lock_guard lock(mu_);
    replies_.try_emplace(*key, env);
  }
  cv_.notify_all();
}

std::map<uint32_t, Envelope> ReplyCollector::wait(size_t expected, std::chrono::steady_clock::time_point deadline) {
  std::unique_lock lock(mu_);
  cv_.wait_until(lock, deadline, [&] { return replies_.size() >= expected; });
  return replies_;
}

RpcClient::RpcClient(Transport& transport)
    : transport_(transport),
      reply_topic_(Topic::Client(transport.new_client_index(), kReplyChannel)),
      inbox_(Address{TopicScope::kClient, reply_topic_.index}, Broker::Options{}) {
  inbox_.register_handler("reply", [this](const Envelope& env) { OnReply(env); });
  inbox_.subscribe(reply_topic_.str(), "reply");
  transport_.attach(inbox_);
}

RpcClient::~RpcClient() {
  transport_.detach(inbox_.address());
  inbox_.stop();
}

void RpcClient::OnReply(const Envelope& env) {
  if (!env.correlation_id) return;
  std::shared_ptr<ReplyCollector> collector;
  {
    std::lock_guard lock(mu_);
    auto it = pending_.find(*env.correlation_id);
    if (it != pending_.end()) {
      it->second.set_value(env);
      pending_.erase(it);
      return;
    }
    auto c = collectors_.find(*env.correlation_id);
    if (c != collectors_.end()) collector = c->second;
  }
  if (collector) collector->push(env);
}

std::future<Envelope> RpcClient::request(const Topic& to, Bytes payload, PayloadEncoding enc) {
  const uint64_t corr = next_correlation();
  std::future<Envelope> f;
  {
    std::lock_guard lock(mu_);
    f = pending_[corr].get_future();
  }
  try {
    transport_.publish(to, std::move(payload), enc, corr, reply_topic_.str());
  } catch (...) {
    std::lock_guard lock(mu_);
    pending_.erase(corr);
    throw;
  }
  return f;
}

Envelope AwaitReply(std::future<Envelope>& f, std::chrono::milliseconds timeout, const std::string& what) {
  if (f.wait_for(timeout) != std::future_status::ready) {
    throw Error(ErrorCode::kTimeout, "no reply from " + what + " within " + std::to_string(timeout.count()) + " ms");
  }
  return f.get();
}

Envelope RpcClient::call(const Topic& to, Bytes payload, std::chrono::milliseconds timeout, PayloadEncoding enc) {
  auto f = request(to, std::move(payload), enc);
  return AwaitReply(f, timeout, to.str());
}

std::shared_ptr<ReplyCollector> RpcClient::open_collector(uint64_t correlation, ReplyCollector::KeyFn key) {
  auto c = std::make_shared<ReplyCollector>(std::move(key));
  std::lock_guard lock(mu_);
  collectors_[correlation] = c;
  return c;
}

void RpcClient::close_collector(uint64_t correlation) {
  std::lock_guard lock(mu_);
  collectors_.erase(correlation);
}

}  // namespace shardgraph
