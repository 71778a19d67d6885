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

#include "aop/baselines.hpp"

#include <chrono>
#include <limits>
#include <string>

#include "aop/huffman.hpp"

namespace aop {

namespace {

struct Entry {
  double delay = std::numeric_limits<double>::infinity();
  std::size_t size = 0;
  std::uint32_t choice = 0;
};

bool improves(double delay, std::size_t size, const Entry& cur) {
  if (delay < cur.delay - 1e-9) return true;
  return delay <= cur.delay + 1e-9 && size < cur.size;
}

/// Table over contiguous ranges t_a..t_b of g (equivalently g*, which has
/// the same delays).
class RangeRecursion {
 public:
  RangeRecursion(const AopInstance& inst, BaselineFamily family)
      : inst_(inst), family_(family), m_(inst.size()), table_(m_ * m_) {}

  void fill();
  Signal build(CircuitBuilder& b, std::span<const Signal> inputs, std::size_t a,
               std::size_t last, bool dual) const;
  const Entry& at(std::size_t a, std::size_t last) const { return table_[a * m_ + last]; }

 private:
  Entry& at(std::size_t a, std::size_t last) { return table_[a * m_ + last]; }

  const AopInstance& inst_;
  BaselineFamily family_;
  std::size_t m_;
  std::vector<Entry> table_;
};

void RangeRecursion::fill() {
  std::vector<double> term;
  for (std::size_t len = 1; len <= m_; ++len) {
    for (std::size_t a = 0; a + len <= m_; ++a) {
      const std::size_t last = a + len - 1;
      Entry& e = at(a, last);
      if (len == 1) {
        e = {inst_.arrival(a), 0, 0};
        continue;
      }
      if (len == 2) {
        e = {std::max(inst_.arrival(a), inst_.arrival(last)) + 1.0, 1, 0};
        continue;
      }
      if (family_ == BaselineFamily::R2006) {
        for (std::size_t l = 1; 2 * l <= len - 1; ++l) {
          const Entry& head = at(a, a + 2 * l - 1);
          const Entry& tail = at(a + 2 * l, last);
          term.clear();
          for (std::size_t idx = a; idx < a + 2 * l; idx += 2) term.push_back(inst_.arrival(idx));
          term.push_back(tail.delay);
          const double delay = std::max(head.delay, huffman_delay(term)) + 1.0;
          const std::size_t size = head.size + tail.size + l + 1;
          if (improves(delay, size, e)) e = {delay, size, static_cast<std::uint32_t>(l)};
        }
      } else {
        for (std::size_t l = 0; 2 * l + 2 <= len; ++l) {
          const Entry& head = at(a, a + 2 * l);
          const Entry& tail = at(a + 2 * l + 1, last);
          term.clear();
          for (std::size_t idx = a + 1; idx < a + 2 * l; idx += 2) term.push_back(inst_.arrival(idx));
          term.push_back(tail.delay);
          const double delay = std::max(head.delay, huffman_delay(term)) + 1.0;
          const std::size_t size = head.size + tail.size + l + 1;
          if (improves(delay, size, e)) e = {delay, size, static_cast<std::uint32_t>(l)};
        }
      }
    }
  }
}

Signal RangeRecursion::build(CircuitBuilder& b, std::span<const Signal> inputs,
                             std::size_t a, std::size_t last, bool dual) const {
  const GateKind conj = dual ? GateKind::Or : GateKind::And;
  if (a == last) return inputs[a];
  if (last == a + 1) return b.add_gate(conj, inputs[a], inputs[last]);
  const std::size_t l = at(a, last).choice;
  std::vector<Signal> term;
  if (family_ == BaselineFamily::R2006) {
    const Signal head = build(b, inputs, a, a + 2 * l - 1, dual);
    for (std::size_t idx = a; idx < a + 2 * l; idx += 2) term.push_back(inputs[idx]);
    term.push_back(build(b, inputs, a + 2 * l, last, dual));
    const Signal tail = huffman_combine(b, term, conj);
    return b.add_gate(flip(conj), head, tail);
  }
  const Signal head = build(b, inputs, a, a + 2 * l, dual);
  for (std::size_t idx = a + 1; idx < a + 2 * l; idx += 2) term.push_back(inputs[idx]);
  term.push_back(build(b, inputs, a + 2 * l + 1, last, !dual));
  const Signal tail = huffman_combine(b, term, flip(conj));
  return b.add_gate(conj, head, tail);
}

/// Extended table with immediate realization over the disjunctive and
/// conjunctive splits.
class ImmediateTable {
 public:
  explicit ImmediateTable(const AopInstance& inst)
      : inst_(inst), m_(inst.size()), table_(m_ * m_ * m_) {}

  void fill();
  Signal build(CircuitBuilder& b, std::span<const Signal> inputs, const ExtAopRef& ref) const;
  const Entry& at(const ExtAopRef& r) const { return table_[(r.i * m_ + r.j) * m_ + r.k]; }

 private:
  std::vector<Split> splits_of(const ExtAopRef& ref) const { return enumerate_splits(ref); }

  const AopInstance& inst_;
  std::size_t m_;
  std::vector<Entry> table_;
};

void ImmediateTable::fill() {
  const auto m = static_cast<std::uint32_t>(m_);
  std::vector<double> term;
  for (std::uint32_t n = 1; n <= m; ++n) {
    for (std::uint32_t i = 0; i < m; ++i) {
      for (std::uint32_t j = i; j < m; j += 2) {
        for (std::uint32_t k = j; k < m; ++k) {
          const ExtAopRef ref{i, j, k, false};
          if (ref.input_count() != n) continue;
          Entry& e = table_[(i * m_ + j) * m_ + k];
          if (ref.is_conjunction()) {
            term.clear();
            for (std::uint32_t idx = i; idx <= j; idx += 2) term.push_back(inst_.arrival(idx));
            if (k == j + 1) term.push_back(inst_.arrival(k));
            e = {huffman_delay(term), term.size() - 1, 0};
            continue;
          }
          const auto splits = splits_of(ref);
          for (std::size_t s = 0; s < splits.size(); ++s) {
            const Entry& x = at(splits[s].first);
            const Entry& y = at(splits[s].second);
            const double delay = std::max(x.delay, y.delay) + 1.0;
            const std::size_t size = x.size + y.size + 1;
            if (improves(delay, size, e)) e = {delay, size, static_cast<std::uint32_t>(s)};
          }
        }
      }
    }
  }
}

Signal ImmediateTable::build(CircuitBuilder& b, std::span<const Signal> inputs,
                             const ExtAopRef& ref) const {
  if (ref.is_conjunction()) {
    std::vector<Signal> term;
    for (std::uint32_t idx = ref.i; idx <= ref.j; idx += 2) term.push_back(inputs[idx]);
    if (ref.k == ref.j + 1) term.push_back(inputs[ref.k]);
    return huffman_combine(b, term, ref.dual ? GateKind::Or : GateKind::And);
  }
  const Split split = splits_of(ref)[at(ref).choice];
  const Signal x = build(b, inputs, split.first);
  const Signal y = build(b, inputs, split.second);
  return b.add_gate(split.combine, x, y);
}

}  // namespace

const char* to_string(BaselineFamily family) {
  switch (family) {
    case BaselineFamily::R2006: return "r2006";
    case BaselineFamily::HS2017: return "hs2017";
    case BaselineFamily::ImmediateExt: return "immediate";
  }
  return "unknown";
}

BaselineFamily parse_baseline(std::string_view name) {
  if (name == "r2006") return BaselineFamily::R2006;
  if (name == "hs2017") return BaselineFamily::HS2017;
  if (name == "immediate") return BaselineFamily::ImmediateExt;
  throw Error(ErrorCode::Parse, "unknown baseline '" + std::string(name) + "'");
}

std::vector<BaselineFamily> parse_baseline_list(std::string_view names) {
  std::vector<BaselineFamily> out;
  while (!names.empty()) {
    const auto comma = names.find(',');
    const auto item = names.substr(0, comma);
    if (!item.empty()) out.push_back(parse_baseline(item));
    if (comma == std::string_view::npos) break;
    names.remove_prefix(comma + 1);
  }
  return out;
}

OptimizationResult optimize_baseline(const AopInstance& inst, BaselineFamily family) {
  const auto start = std::chrono::steady_clock::now();
  CircuitBuilder builder;
  std::vector<Signal> inputs;
  for (std::uint32_t t = 0; t < inst.size(); ++t) {
    inputs.push_back(builder.add_input(t, inst.arrival(t)));
  }
  const auto last = static_cast<std::uint32_t>(inst.size() - 1);
  Signal root;
  if (family == BaselineFamily::ImmediateExt) {
    ImmediateTable table(inst);
    table.fill();
    root = table.build(builder, inputs, {0, 0, last, false});
  } else {
    RangeRecursion table(inst, family);
    table.fill();
    root = table.build(builder, inputs, 0, last, false);
  }
  OptimizationResult result;
  result.mode = Mode::Delay;
  result.circuit = builder.build(root);
  if (inst.variant() == Variant::Dual) result.circuit = dualize(result.circuit);
  result.delay = circuit_delay(result.circuit);
  result.size = circuit_size(result.circuit);
  result.stats.elapsed_us =
      std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace aop
