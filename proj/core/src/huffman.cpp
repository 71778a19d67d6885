/*
 * Copyright 2026 The aop Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "aop/huffman.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <queue>

namespace aop {

namespace {

struct QueueItem {
  double arrival;
  std::uint64_t order;
  Signal signal;
};

struct LaterFirst {
  bool operator()(const QueueItem& a, const QueueItem& b) const {
    if (a.arrival != b.arrival) return a.arrival > b.arrival;
    return a.order > b.order;
  }
};

}  // namespace

Signal huffman_combine(CircuitBuilder& builder, std::span<const Signal> signals,
                       GateKind kind) {
  if (signals.empty()) {
    throw Error(ErrorCode::EmptyInstance, "huffman_combine needs a signal");
  }
  std::priority_queue<QueueItem, std::vector<QueueItem>, LaterFirst> queue;
  std::uint64_t order = 0;
  for (const Signal& s : signals) queue.push({s.arrival, order++, s});
  while (queue.size() > 1) {
    const Signal a = queue.top().signal;
    queue.pop();
    const Signal b = queue.top().signal;
    queue.pop();
    const Signal joined = builder.add_gate(kind, a, b);
    queue.push({joined.arrival, order++, joined});
  }
  return queue.top().signal;
}

double huffman_delay(std::span<const double> arrivals) {
  if (arrivals.empty()) {
    throw Error(ErrorCode::EmptyInstance, "huffman_delay needs an arrival");
  }
  if (arrivals.size() == 1) return arrivals.front();
  std::vector<double> leaves(arrivals.begin(), arrivals.end());
  std::sort(leaves.begin(), leaves.end());
  // Joined arrivals come out non-decreasing, so two sorted queues replace the
  // heap.
  std::deque<double> joined;
  std::size_t next = 0;
  auto pop_min = [&]() {
    if (joined.empty() || (next < leaves.size() && leaves[next] <= joined.front())) {
      return leaves[next++];
    }
    const double v = joined.front();
    joined.pop_front();
    return v;
  };
  for (std::size_t n = leaves.size(); n > 1; --n) {
    const double a = pop_min();
    const double b = pop_min();
    joined.push_back(std::max(a, b) + 1.0);
  }
  return joined.back();
}

HuffmanTree huffman_tree(std::span<const double> arrivals, GateKind kind) {
  CircuitBuilder builder;
  std::vector<Signal> leaves;
  leaves.reserve(arrivals.size());
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    leaves.push_back(builder.add_input(static_cast<std::uint32_t>(i), arrivals[i]));
  }
  const Signal root = huffman_combine(builder, leaves, kind);
  return {builder.build(root), root.arrival};
}

}  // namespace aop
