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

#include "aop/verify.hpp"

#include <algorithm>

#include "aop/truth_table.hpp"

namespace aop {

VerificationReport check_structure(const Circuit& c) {
  VerificationReport report;
  auto& v = report.violations;
  const auto nodes = c.nodes();
  if (nodes.empty() || c.output() >= nodes.size()) {
    v.push_back("output: missing or out of range");
    return report;
  }

  std::vector<std::size_t> fanout(nodes.size(), 0);
  bool ids_ok = true;
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    if (n.is_gate() && n.preds.size() != 2) {
      v.push_back("fan-in: gate " + std::to_string(id) + " has " +
                  std::to_string(n.preds.size()) + " predecessors");
    }
    if (!n.is_gate() && !n.preds.empty()) {
      v.push_back("input: node " + std::to_string(id) + " has predecessors");
    }
    for (NodeId p : n.preds) {
      if (p >= nodes.size()) {
        v.push_back("ids: node " + std::to_string(id) + " references " + std::to_string(p));
        ids_ok = false;
      } else {
        ++fanout[p];
      }
    }
  }
  if (!ids_ok) return report;

  // Kahn's algorithm over the whole node set detects cycles anywhere.
  std::vector<std::size_t> pending(nodes.size(), 0);
  std::vector<std::vector<NodeId>> succs(nodes.size());
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    for (NodeId p : nodes[id].preds) {
      succs[p].push_back(static_cast<NodeId>(id));
      ++pending[id];
    }
  }
  std::vector<NodeId> ready;
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    if (pending[id] == 0) ready.push_back(static_cast<NodeId>(id));
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const NodeId id = ready.back();
    ready.pop_back();
    ++seen;
    for (NodeId s : succs[id]) {
      if (--pending[s] == 0) ready.push_back(s);
    }
  }
  if (seen != nodes.size()) v.push_back("cycle: circuit is not acyclic");

  std::size_t sinks = 0;
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    if (fanout[id] == 0) ++sinks;
  }
  if (sinks != 1 || fanout[c.output()] != 0) {
    v.push_back("single output: " + std::to_string(sinks) + " nodes without successors");
  }

  std::vector<bool> reach(nodes.size(), false);
  std::vector<NodeId> stack{c.output()};
  reach[c.output()] = true;
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    for (NodeId p : nodes[id].preds) {
      if (!reach[p]) {
        reach[p] = true;
        stack.push_back(p);
      }
    }
  }
  const auto unreachable = std::count(reach.begin(), reach.end(), false);
  if (unreachable > 0) {
    v.push_back("unreachable: " + std::to_string(unreachable) + " nodes do not reach the output");
  }

  report.structural_ok = v.empty();
  if (report.structural_ok) {
    report.delay = circuit_delay(c);
    report.size = circuit_size(c);
  }
  return report;
}

bool equivalent(const Circuit& c, const ExtAopRef& ref, std::size_t m,
                std::size_t block_words) {
  check_tabulation(m);
  check_ref(ref, m);
  if (!check_structure(c).structural_ok) {
    throw Error(ErrorCode::Malformed, "equivalence check on a malformed circuit");
  }
  if (c.input_span() > m) {
    throw Error(ErrorCode::Malformed, "circuit reads an input index >= m");
  }
  block_words = std::max<std::size_t>(block_words, 1);
  const auto order = topological_order(c);
  const std::size_t total = table_words(m);
  const std::uint64_t mask = table_mask(m);
  std::vector<std::uint64_t> got;
  std::vector<std::uint64_t> want;
  std::vector<std::uint64_t> scratch;
  for (std::size_t w = 0; w < total; w += block_words) {
    const std::size_t n = std::min(block_words, total - w);
    got.resize(n);
    want.resize(n);
    simulate_block(c, order, w, got, scratch);
    phi_block(ref, m, w, want);
    for (std::size_t i = 0; i < n; ++i) {
      if ((got[i] & mask) != (want[i] & mask)) return false;
    }
  }
  return true;
}

VerificationReport verify(const Circuit& c, const ExtAopRef& ref, std::size_t m) {
  VerificationReport report = check_structure(c);
  if (report.structural_ok) report.equivalent = equivalent(c, ref, m);
  return report;
}

}  // namespace aop
