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

// Fan-in-2 And/Or circuits with input arrival times.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "aop/types.hpp"

namespace aop {

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { Input, And, Or };

struct Node {
  NodeKind kind = NodeKind::Input;
  /// Index of the instance input (inputs only).
  std::uint32_t input = 0;
  /// Arrival time (inputs only).
  double arrival = 0.0;
  std::vector<NodeId> preds;

  bool is_gate() const noexcept { return kind != NodeKind::Input; }

  friend bool operator==(const Node&, const Node&) = default;
};

/// A single-output DAG. Construction performs no checks so that malformed
/// circuits read from files can still be inspected; use check_structure()
/// from verify.hpp before trusting one.
class Circuit {
 public:
  Circuit() = default;
  Circuit(std::vector<Node> nodes, NodeId output)
      : nodes_(std::move(nodes)), output_(output) {}

  std::span<const Node> nodes() const noexcept { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  NodeId output() const noexcept { return output_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  /// One more than the largest input index referenced by an input node.
  std::size_t input_span() const noexcept;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::vector<Node> nodes_;
  NodeId output_ = 0;
};

/// Nodes reachable backwards from the output in topological order (inputs
/// first). Throws Error{Malformed} on dangling ids and cycles.
std::vector<NodeId> topological_order(const Circuit& c);

/// Arrival time at the output; a gate arrives one unit after its latest
/// predecessor.
double circuit_delay(const Circuit& c);

/// Number of gate nodes.
std::size_t circuit_size(const Circuit& c);

/// Longest path measured in gates.
std::size_t circuit_depth(const Circuit& c);

/// Same DAG with And and Or exchanged.
Circuit dualize(const Circuit& c);

/// A node handle together with its arrival time.
struct Signal {
  NodeId node = 0;
  double arrival = 0.0;
};

/// Incrementally builds a circuit from inputs and two-input gates.
class CircuitBuilder {
 public:
  Signal add_input(std::uint32_t index, double arrival);
  Signal add_gate(GateKind kind, Signal a, Signal b);

  std::size_t gate_count() const noexcept { return gates_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  /// Finishes the circuit with the given output. Nodes that do not reach
  /// the output are dropped and the remaining ids are compacted.
  Circuit build(Signal output) const;

 private:
  std::vector<Node> nodes_;
  std::size_t gates_ = 0;
};

}  // namespace aop
