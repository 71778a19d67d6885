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

#include "aop/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "aop/huffman.hpp"

namespace aop {

namespace {

constexpr double kDelayMargin = 1e-9;

GateKind gate_of(OutKind k) {
  return k == OutKind::Or ? GateKind::Or : GateKind::And;
}

std::uint8_t slot_of(GateKind k) { return k == GateKind::And ? 0 : 1; }

/// Contribution of one stored candidate to a merge with a `combine` gate.
struct Option {
  double weight = 0.0;
  std::size_t size = 0;  // realized size of the option
  std::uint8_t slot = 0;
  std::uint16_t index = 0;
  bool flatten = false;
};

// a is preferred over b as a merge contribution.
bool better_option(const WeightScale& scale, const Option& a, const Option& b) {
  if (scale.lighter(a.weight, b.weight)) return true;
  if (scale.lighter(b.weight, a.weight)) return false;
  if (a.size != b.size) return a.size < b.size;
  return a.flatten && !b.flatten;
}

WeightScale scale_for(std::span<const double> exponents) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  bool integral = true;
  for (double e : exponents) {
    lo = std::min(lo, e);
    hi = std::max(hi, e);
    if (e != std::floor(e)) integral = false;
  }
  if (exponents.empty()) return WeightScale(0.0, false);
  return WeightScale(hi, integral && hi - lo <= 40.0);
}

}  // namespace

const char* to_string(Mode mode) {
  return mode == Mode::Delay ? "delay" : "delay-size";
}

std::vector<Split> enumerate_splits(const ExtAopRef& ref) {
  if (!(ref.i <= ref.j && ref.j <= ref.k && (ref.j - ref.i) % 2 == 0) ||
      ref.k <= ref.j + 1) {
    throw Error(ErrorCode::InvalidIndex, "no splits for " + to_string(ref));
  }
  const auto [i, j, k, dual] = ref;
  std::vector<Split> splits;
  for (std::uint32_t l = 1; 2 * l <= k - j; ++l) {
    Split s;
    s.rule = SplitRule::Disjunctive;
    s.combine = dual ? GateKind::And : GateKind::Or;
    s.lambda = l;
    s.first = {i, j, j + 2 * l - 1, dual};
    s.second = {i, j + 2 * l, k, dual};
    splits.push_back(s);
  }
  for (std::uint32_t l = 0; 2 * l + 1 <= k - j; ++l) {
    Split s;
    s.rule = SplitRule::Conjunctive;
    s.combine = dual ? GateKind::Or : GateKind::And;
    s.lambda = l;
    s.first = {i, j, j + 2 * l, dual};
    s.second = {j + 1, j + 2 * l + 1, k, !dual};
    splits.push_back(s);
  }
  return splits;
}

Split prefix_split(const ExtAopRef& ref) {
  if (!(ref.i < ref.j && ref.k > ref.j + 1 && (ref.j - ref.i) % 2 == 0)) {
    throw Error(ErrorCode::InvalidIndex, "no prefix split for " + to_string(ref));
  }
  Split s;
  s.rule = SplitRule::Prefix;
  s.combine = ref.dual ? GateKind::Or : GateKind::And;
  s.first = {ref.i, ref.j - 2, ref.j - 2, ref.dual};
  s.second = {ref.j, ref.j, ref.k, ref.dual};
  return s;
}

CandidateView CandidateView::of(OutKind kind, std::span<const double> preds,
                                std::size_t internal_gates) {
  CandidateView v;
  v.out_kind = kind;
  v.preds = preds;
  v.internal_gates = internal_gates;
  v.realized_delay = huffman_delay(preds);
  return v;
}

MergeResult merge(GateKind kind, std::span<const std::vector<CandidateView>> operands) {
  std::vector<double> exponents;
  for (const auto& options : operands) {
    for (const auto& v : options) {
      exponents.insert(exponents.end(), v.preds.begin(), v.preds.end());
      exponents.push_back(v.realized_delay);
    }
  }
  return merge(kind, operands, scale_for(exponents));
}

MergeResult merge(GateKind kind, std::span<const std::vector<CandidateView>> operands,
                  const WeightScale& scale) {
  if (operands.size() < 2) {
    throw Error(ErrorCode::Invariant, "merge needs at least two operands");
  }
  MergeResult result;
  result.out_kind = to_out_kind(kind);
  double total = 0.0;
  for (const auto& options : operands) {
    if (options.empty()) {
      throw Error(ErrorCode::Invariant, "merge operand without candidates");
    }
    std::size_t best = 0;
    Option best_option;
    for (std::size_t o = 0; o < options.size(); ++o) {
      const CandidateView& v = options[o];
      if (v.preds.empty()) throw Error(ErrorCode::Invariant, "empty candidate");
      Option opt;
      opt.flatten = v.out_kind == OutKind::None || v.out_kind == to_out_kind(kind);
      if (opt.flatten) {
        for (double p : v.preds) opt.weight += scale.scaled(p);
      } else {
        opt.weight = scale.scaled(v.realized_delay);
      }
      opt.size = v.internal_gates + v.preds.size() - 1;
      if (o == 0 || better_option(scale, opt, best_option)) {
        best = o;
        best_option = opt;
      }
    }
    const CandidateView& v = options[best];
    if (best_option.flatten) {
      result.preds.insert(result.preds.end(), v.preds.begin(), v.preds.end());
      result.internal_gates += v.internal_gates;
    } else {
      result.preds.push_back(v.realized_delay);
      result.internal_gates += v.internal_gates + v.preds.size() - 1;
    }
    total += best_option.weight;
    result.picks.push_back({best, best_option.flatten});
  }
  result.log2_weight = scale.to_log2(total);
  return result;
}

double UndeterminedCircuit::log2_weight() const {
  std::vector<double> arrivals;
  arrivals.reserve(preds.size());
  for (const Signal& s : preds) arrivals.push_back(s.arrival);
  return weight_log2(arrivals);
}

Circuit realize(const UndeterminedCircuit& u) {
  if (u.preds.empty()) throw Error(ErrorCode::Invariant, "realize: no predecessors");
  CircuitBuilder builder = u.body;
  const Signal root = u.out_kind == OutKind::None
                          ? u.preds.front()
                          : huffman_combine(builder, u.preds, gate_of(u.out_kind));
  return builder.build(root);
}

UndeterminedCircuit base_candidate(std::uint32_t i, std::uint32_t j, std::uint32_t k,
                                   const AopInstance& inst) {
  const ExtAopRef ref{i, j, k, false};
  check_ref(ref, inst.size());
  if (!ref.is_conjunction()) {
    throw Error(ErrorCode::InvalidIndex, "base case needs k <= j + 1: " + to_string(ref));
  }
  UndeterminedCircuit u;
  for (std::uint32_t idx = i; idx <= j; idx += 2) {
    u.preds.push_back(u.body.add_input(idx, inst.arrival(idx)));
  }
  if (k == j + 1) u.preds.push_back(u.body.add_input(k, inst.arrival(k)));
  u.out_kind = u.preds.size() == 1 ? OutKind::None : OutKind::And;
  return u;
}

std::size_t table_cell_count(std::size_t m) {
  std::size_t count = 0;
  for (std::size_t j = 0; j < m; ++j) count += (m - j) * (j / 2 + 1);
  return count;
}

const DpCell* DpTable::find(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
  if (!ExtAopRef{i, j, k, false}.valid(m_)) return nullptr;
  const std::int32_t idx = index_[(std::size_t{i} * m_ + j) * m_ + k];
  return idx < 0 ? nullptr : &cells_[static_cast<std::size_t>(idx)];
}

std::uint32_t DpTable::cell_index(const ExtAopRef& ref) const {
  if (!ExtAopRef{ref.i, ref.j, ref.k, false}.valid(m_)) {
    throw Error(ErrorCode::InvalidIndex, "no cell " + to_string(ref));
  }
  const std::int32_t idx = index_[(std::size_t{ref.i} * m_ + ref.j) * m_ + ref.k];
  if (idx < 0) throw Error(ErrorCode::Invariant, "cell not built: " + to_string(ref));
  return static_cast<std::uint32_t>(idx);
}

const Candidate& DpTable::at(const CandidateRef& ref) const {
  return cells_.at(ref.cell).slots.at(ref.slot).at(ref.index);
}

double DpTable::min_log2_weight(const ExtAopRef& ref) const {
  const DpCell& cell = cells_[cell_index(ref)];
  double best = std::numeric_limits<double>::infinity();
  for (const auto& slot : cell.slots) {
    for (const Candidate& c : slot) best = std::min(best, c.weight);
  }
  return scale_.to_log2(best);
}

void DpTable::expand(const CandidateRef& ref, bool dual, CircuitBuilder& builder,
                     std::span<const Signal> inputs, std::vector<Signal>& out) const {
  const Candidate& c = at(ref);
  const ExtAopRef& r = cells_[ref.cell].ref;
  if (c.base) {
    for (std::uint32_t idx = r.i; idx <= r.j; idx += 2) out.push_back(inputs[idx]);
    if (r.k == r.j + 1) out.push_back(inputs[r.k]);
    return;
  }
  for (const OperandChoice& op : c.operands) {
    const bool d = dual != op.dual;
    const CandidateRef sub{op.cell, op.slot, op.index};
    if (op.flatten) {
      expand(sub, d, builder, inputs, out);
      continue;
    }
    std::vector<Signal> preds;
    expand(sub, d, builder, inputs, preds);
    const OutKind kind = d ? flip(at(sub).out_kind) : at(sub).out_kind;
    out.push_back(huffman_combine(builder, preds, gate_of(kind)));
  }
}

UndeterminedCircuit DpTable::materialize(const CandidateRef& ref, bool dual) const {
  UndeterminedCircuit u;
  std::vector<Signal> inputs;
  inputs.reserve(m_);
  for (std::uint32_t t = 0; t < m_; ++t) {
    inputs.push_back(u.body.add_input(t, input_arrivals_[t]));
  }
  expand(ref, dual, u.body, inputs, u.preds);
  const OutKind kind = at(ref).out_kind;
  u.out_kind = dual ? flip(kind) : kind;
  return u;
}

namespace {

class TableBuilder {
 public:
  TableBuilder(const AopInstance& inst, const BuildOptions& options, DpTable& table,
               std::vector<DpCell>& cells, std::vector<std::int32_t>& index,
               TableStats& stats)
      : inst_(inst),
        options_(options),
        table_(table),
        cells_(cells),
        index_(index),
        stats_(stats) {}

  void run();

 private:
  struct Pending {
    double weight = 0.0;
    std::size_t size = 0;
    GateKind combine = GateKind::And;
    SplitRule rule = SplitRule::Disjunctive;
    std::array<OperandChoice, 2> operands{};
  };

  std::vector<Option> options_for(const ExtAopRef& operand, GateKind combine,
                                  std::uint32_t& cell) const;
  void add_base(DpCell& cell);
  void add_split(DpCell& cell, const Split& split);
  void offer_delay(DpCell& cell, const Pending& p);
  void offer_pareto(const Pending& p);
  Candidate materialize(const Pending& p) const;
  void finish_pareto(DpCell& cell);

  const AopInstance& inst_;
  const BuildOptions& options_;
  DpTable& table_;
  std::vector<DpCell>& cells_;
  std::vector<std::int32_t>& index_;
  TableStats& stats_;
  std::array<std::vector<Pending>, 2> front_;
};

std::vector<Option> TableBuilder::options_for(const ExtAopRef& operand, GateKind combine,
                                              std::uint32_t& cell) const {
  cell = table_.cell_index(operand);
  const DpCell& c = cells_[cell];
  const WeightScale& scale = table_.scale();
  std::vector<Option> options;
  for (std::uint8_t s = 0; s < 2; ++s) {
    for (std::size_t idx = 0; idx < c.slots[s].size(); ++idx) {
      const Candidate& cand = c.slots[s][idx];
      const OutKind kind = operand.dual ? flip(cand.out_kind) : cand.out_kind;
      Option o;
      o.slot = s;
      o.index = static_cast<std::uint16_t>(idx);
      o.flatten = kind == OutKind::None || kind == to_out_kind(combine);
      o.weight = o.flatten ? cand.weight : scale.scaled(cand.realized_delay);
      o.size = cand.realized_size();
      options.push_back(o);
    }
  }
  if (options.empty()) {
    throw Error(ErrorCode::Invariant, "operand cell without candidates: " + to_string(operand));
  }
  return options;
}

void TableBuilder::add_base(DpCell& cell) {
  const ExtAopRef& r = cell.ref;
  Candidate c;
  for (std::uint32_t idx = r.i; idx <= r.j; idx += 2) c.preds.push_back(inst_.arrival(idx));
  if (r.k == r.j + 1) c.preds.push_back(inst_.arrival(r.k));
  c.out_kind = c.preds.size() == 1 ? OutKind::None : OutKind::And;
  for (double p : c.preds) c.weight += table_.scale().scaled(p);
  c.realized_delay = huffman_delay(c.preds);
  c.base = true;
  cell.slots[0].push_back(std::move(c));
}

Candidate TableBuilder::materialize(const Pending& p) const {
  Candidate c;
  c.out_kind = to_out_kind(p.combine);
  c.weight = p.weight;
  c.base = false;
  c.rule = p.rule;
  c.combine = p.combine;
  c.operands = p.operands;
  for (const OperandChoice& op : p.operands) {
    const Candidate& sub = cells_[op.cell].slots[op.slot][op.index];
    if (op.flatten) {
      c.preds.insert(c.preds.end(), sub.preds.begin(), sub.preds.end());
      c.internal_gates += sub.internal_gates;
    } else {
      c.preds.push_back(sub.realized_delay);
      c.internal_gates += static_cast<std::uint32_t>(sub.realized_size());
    }
  }
  c.realized_delay = huffman_delay(c.preds);
  return c;
}

void TableBuilder::offer_delay(DpCell& cell, const Pending& p) {
  auto& slot = cell.slots[slot_of(p.combine)];
  if (!slot.empty()) {
    const Candidate& cur = slot.front();
    const WeightScale& scale = table_.scale();
    const bool better = scale.lighter(p.weight, cur.weight) ||
                        (!scale.lighter(cur.weight, p.weight) && p.size < cur.realized_size());
    if (!better) return;
    slot.front() = materialize(p);
    return;
  }
  slot.push_back(materialize(p));
}

void TableBuilder::offer_pareto(const Pending& p) {
  auto& front = front_[slot_of(p.combine)];
  const WeightScale& scale = table_.scale();
  for (const Pending& e : front) {
    if (scale.not_heavier(e.weight, p.weight) && e.size <= p.size) return;
  }
  std::erase_if(front, [&](const Pending& e) {
    return scale.not_heavier(p.weight, e.weight) && p.size <= e.size;
  });
  front.push_back(p);
}

void TableBuilder::finish_pareto(DpCell& cell) {
  for (std::uint8_t s = 0; s < 2; ++s) {
    auto& front = front_[s];
    std::stable_sort(front.begin(), front.end(), [](const Pending& a, const Pending& b) {
      if (a.weight != b.weight) return a.weight < b.weight;
      return a.size < b.size;
    });
    if (front.size() > options_.pareto_cap) {
      ++stats_.pareto_cap_hits;
      front.resize(options_.pareto_cap);
    }
    stats_.max_front = std::max(stats_.max_front, front.size());
    for (const Pending& p : front) cell.slots[s].push_back(materialize(p));
    front.clear();
  }
}

void TableBuilder::add_split(DpCell& cell, const Split& split) {
  ++stats_.merges;
  std::array<std::vector<Option>, 2> options;
  std::array<std::uint32_t, 2> cells{};
  options[0] = options_for(split.first, split.combine, cells[0]);
  options[1] = options_for(split.second, split.combine, cells[1]);
  const std::array<bool, 2> dual = {split.first.dual, split.second.dual};
  const WeightScale& scale = table_.scale();

  auto choice = [&](std::size_t op, const Option& o) {
    OperandChoice c;
    c.cell = cells[op];
    c.slot = o.slot;
    c.index = o.index;
    c.dual = dual[op];
    c.flatten = o.flatten;
    return c;
  };

  if (options_.mode == Mode::Delay) {
    Pending p;
    p.combine = split.combine;
    p.rule = split.rule;
    for (std::size_t op = 0; op < 2; ++op) {
      const Option* best = &options[op].front();
      for (const Option& o : options[op]) {
        if (better_option(scale, o, *best)) best = &o;
      }
      p.weight += best->weight;
      p.size += best->size + 1;
      p.operands[op] = choice(op, *best);
    }
    p.size -= 1;
    offer_delay(cell, p);
    return;
  }

  for (const Option& a : options[0]) {
    for (const Option& b : options[1]) {
      Pending p;
      p.combine = split.combine;
      p.rule = split.rule;
      p.weight = a.weight + b.weight;
      p.size = a.size + b.size + 1;
      p.operands = {choice(0, a), choice(1, b)};
      offer_pareto(p);
    }
  }
}

void TableBuilder::run() {
  const std::uint32_t m = static_cast<std::uint32_t>(inst_.size());
  std::vector<ExtAopRef> refs;
  refs.reserve(table_cell_count(m));
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = i; j < m; j += 2) {
      for (std::uint32_t k = j; k < m; ++k) refs.push_back({i, j, k, false});
    }
  }
  std::stable_sort(refs.begin(), refs.end(), [](const ExtAopRef& a, const ExtAopRef& b) {
    return a.input_count() < b.input_count();
  });

  index_.assign(std::size_t{m} * m * m, -1);
  cells_.reserve(refs.size());
  for (const ExtAopRef& ref : refs) {
    index_[(std::size_t{ref.i} * m + ref.j) * m + ref.k] =
        static_cast<std::int32_t>(cells_.size());
    cells_.push_back(DpCell{ref, {}});
    DpCell& cell = cells_.back();
    if (ref.is_conjunction()) {
      add_base(cell);
    } else {
      std::size_t used = 0;
      auto consider = [&](const Split& s) {
        if (options_.allow_split && !options_.allow_split(ref, s)) return;
        ++used;
        add_split(cell, s);
      };
      for (const Split& s : enumerate_splits(ref)) consider(s);
      if (options_.prefix_split && ref.i < ref.j) consider(prefix_split(ref));
      if (used == 0) {
        throw Error(ErrorCode::Invariant, "split filter removed every split of " + to_string(ref));
      }
      if (options_.mode == Mode::DelaySize) finish_pareto(cell);
    }
    stats_.candidates += cell.slots[0].size() + cell.slots[1].size();
  }
  stats_.cells = cells_.size();
}

}  // namespace

DpTable build_table(const AopInstance& inst, const BuildOptions& options) {
  // Realized delays stay below max arrival + m, so a reference at the top
  // keeps every scaled weight in a narrow window.
  const bool exact = inst.integral() && inst.spread() <= 40.0;
  DpTable table(inst.size(), options.mode, WeightScale(inst.max_arrival(), exact));
  table.input_arrivals_.assign(inst.arrivals().begin(), inst.arrivals().end());
  TableBuilder builder(inst, options, table, table.cells_, table.index_, table.stats_);
  builder.run();
  return table;
}

DpTable build_table(const AopInstance& inst, Mode mode) {
  BuildOptions options;
  options.mode = mode;
  return build_table(inst, options);
}

CandidateRef select_root(const DpTable& table) {
  const std::uint32_t last = static_cast<std::uint32_t>(table.inputs() - 1);
  const std::uint32_t cell = table.cell_index({0, 0, last, false});
  const DpCell& root = table.cells()[cell];
  const WeightScale& scale = table.scale();
  const bool size_first = table.mode() == Mode::DelaySize;

  std::optional<CandidateRef> best;
  for (std::uint8_t s = 0; s < 2; ++s) {
    for (std::size_t idx = 0; idx < root.slots[s].size(); ++idx) {
      const CandidateRef ref{cell, s, static_cast<std::uint16_t>(idx)};
      if (!best) {
        best = ref;
        continue;
      }
      const Candidate& c = table.at(ref);
      const Candidate& b = table.at(*best);
      if (c.realized_delay < b.realized_delay - kDelayMargin) {
        best = ref;
        continue;
      }
      if (c.realized_delay > b.realized_delay + kDelayMargin) continue;
      const bool lighter = scale.lighter(c.weight, b.weight);
      const bool heavier = scale.lighter(b.weight, c.weight);
      const bool smaller = c.realized_size() < b.realized_size();
      const bool larger = c.realized_size() > b.realized_size();
      if (size_first ? (smaller || (!larger && lighter)) : (lighter || (!heavier && smaller))) {
        best = ref;
      }
    }
  }
  if (!best) throw Error(ErrorCode::Invariant, "root cell has no candidates");
  return *best;
}

OptimizationResult optimize(const AopInstance& inst, Mode mode) {
  BuildOptions options;
  options.mode = mode;
  return optimize(inst, options);
}

OptimizationResult optimize(const AopInstance& inst, const BuildOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const DpTable table = build_table(inst, options);
  const CandidateRef root = select_root(table);
  const Candidate& chosen = table.at(root);

  OptimizationResult result;
  result.mode = options.mode;
  result.circuit = realize(table.materialize(root));
  if (inst.variant() == Variant::Dual) result.circuit = dualize(result.circuit);
  result.delay = circuit_delay(result.circuit);
  result.size = circuit_size(result.circuit);
  if (std::abs(result.delay - chosen.realized_delay) > kDelayMargin ||
      result.size != chosen.realized_size()) {
    throw Error(ErrorCode::Invariant, "realized circuit disagrees with its table entry");
  }
  result.stats.table = table.stats();
  result.stats.elapsed_us =
      std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace aop
