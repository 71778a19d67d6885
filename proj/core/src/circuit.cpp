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

#include "aop/circuit.hpp"

#include <algorithm>
#include <string>

namespace aop {

std::size_t Circuit::input_span() const noexcept {
  std::size_t span = 0;
  for (const Node& n : nodes_) {
    if (n.kind == NodeKind::Input) span = std::max<std::size_t>(span, n.input + 1);
  }
  return span;
}

std::vector<NodeId> topological_order(const Circuit& c) {
  const auto nodes = c.nodes();
  if (c.output() >= nodes.size()) {
    throw Error(ErrorCode::Malformed, "output id out of range");
  }
  enum : std::uint8_t { kNew, kOpen, kDone };
  std::vector<std::uint8_t> state(nodes.size(), kNew);
  std::vector<NodeId> order;
  order.reserve(nodes.size());

  // Iterative DFS; a node is emitted after all its predecessors.
  std::vector<std::pair<NodeId, std::size_t>> stack;
  stack.emplace_back(c.output(), 0);
  state[c.output()] = kOpen;
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const Node& n = nodes[id];
    if (next < n.preds.size()) {
      const NodeId p = n.preds[next++];
      if (p >= nodes.size()) {
        throw Error(ErrorCode::Malformed,
                    "node " + std::to_string(id) + " has dangling predecessor");
      }
      if (state[p] == kOpen) {
        throw Error(ErrorCode::Malformed, "cycle through node " + std::to_string(p));
      }
      if (state[p] == kNew) {
        state[p] = kOpen;
        stack.emplace_back(p, 0);
      }
      continue;
    }
    state[id] = kDone;
    order.push_back(id);
    stack.pop_back();
  }
  return order;
}

double circuit_delay(const Circuit& c) {
  const auto order = topological_order(c);
  std::vector<double> arrival(c.node_count(), 0.0);
  for (NodeId id : order) {
    const Node& n = c.node(id);
    if (!n.is_gate()) {
      arrival[id] = n.arrival;
      continue;
    }
    if (n.preds.empty()) {
      throw Error(ErrorCode::Malformed, "gate without predecessors");
    }
    double latest = arrival[n.preds.front()];
    for (NodeId p : n.preds) latest = std::max(latest, arrival[p]);
    arrival[id] = latest + 1.0;
  }
  return arrival[c.output()];
}

std::size_t circuit_size(const Circuit& c) {
  return static_cast<std::size_t>(std::count_if(
      c.nodes().begin(), c.nodes().end(), [](const Node& n) { return n.is_gate(); }));
}

std::size_t circuit_depth(const Circuit& c) {
  const auto order = topological_order(c);
  std::vector<std::size_t> depth(c.node_count(), 0);
  for (NodeId id : order) {
    for (NodeId p : c.node(id).preds) depth[id] = std::max(depth[id], depth[p] + 1);
  }
  return depth[c.output()];
}

Circuit dualize(const Circuit& c) {
  std::vector<Node> nodes(c.nodes().begin(), c.nodes().end());
  for (Node& n : nodes) {
    if (n.kind == NodeKind::And) {
      n.kind = NodeKind::Or;
    } else if (n.kind == NodeKind::Or) {
      n.kind = NodeKind::And;
    }
  }
  return Circuit(std::move(nodes), c.output());
}

Signal CircuitBuilder::add_input(std::uint32_t index, double arrival) {
  Node n;
  n.kind = NodeKind::Input;
  n.input = index;
  n.arrival = arrival;
  nodes_.push_back(std::move(n));
  return {static_cast<NodeId>(nodes_.size() - 1), arrival};
}

Signal CircuitBuilder::add_gate(GateKind kind, Signal a, Signal b) {
  Node n;
  n.kind = kind == GateKind::And ? NodeKind::And : NodeKind::Or;
  n.preds = {a.node, b.node};
  nodes_.push_back(std::move(n));
  ++gates_;
  return {static_cast<NodeId>(nodes_.size() - 1),
          std::max(a.arrival, b.arrival) + 1.0};
}

Circuit CircuitBuilder::build(Signal output) const {
  if (output.node >= nodes_.size()) {
    throw Error(ErrorCode::Malformed, "builder output id out of range");
  }
  // Builder nodes are created in topological order, so one backward sweep
  // marks everything that reaches the output.
  std::vector<bool> live(nodes_.size(), false);
  live[output.node] = true;
  for (std::size_t id = output.node + 1; id-- > 0;) {
    if (!live[id]) continue;
    for (NodeId p : nodes_[id].preds) live[p] = true;
  }
  std::vector<NodeId> remap(nodes_.size(), 0);
  std::vector<Node> kept;
  for (std::size_t id = 0; id <= output.node; ++id) {
    if (!live[id]) continue;
    remap[id] = static_cast<NodeId>(kept.size());
    Node n = nodes_[id];
    for (NodeId& p : n.preds) p = remap[p];
    kept.push_back(std::move(n));
  }
  return Circuit(std::move(kept), remap[output.node]);
}

}  // namespace aop
