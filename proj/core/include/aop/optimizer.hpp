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

// Dynamic program over extended And-Or paths with undetermined output
// gates.
//
// Every table cell phi_{i,j,k} keeps candidates per output gate kind. A
// candidate is an undetermined circuit: all gates are fan-in 2 except the
// output gate, whose predecessors are only fixed up to their arrival times.
// Larger cells are built from the disjunctive split
//   phi_{i,j,k} = phi_{i,j,j+2l-1} | phi_{i,j+2l,k}          1 <= l <= (k-j)/2
// and the conjunctive split
//   phi_{i,j,k} = phi_{i,j,j+2l} & phi*_{j+1,j+2l+1,k}       0 <= l <= (k-j-1)/2
// where operands whose output kind matches the combining gate are flattened
// into it and all others are realized by Huffman coding first. Realization
// of the output gate is deferred until the final circuit is extracted.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "aop/circuit.hpp"
#include "aop/types.hpp"
#include "aop/weight.hpp"

namespace aop {

enum class Mode : std::uint8_t { Delay, DelaySize };

const char* to_string(Mode mode);

enum class SplitRule : std::uint8_t {
  Disjunctive,  ///< phi_{i,j,j+2l-1} | phi_{i,j+2l,k}
  Conjunctive,  ///< phi_{i,j,j+2l} & phi*_{j+1,j+2l+1,k}
  Prefix,       ///< (t_i & ... & t_{j-2}) & phi_{j,j,k}
};

struct Split {
  SplitRule rule = SplitRule::Disjunctive;
  GateKind combine = GateKind::Or;
  std::uint32_t lambda = 0;
  ExtAopRef first;
  ExtAopRef second;

  friend bool operator==(const Split&, const Split&) = default;
};

/// All disjunctive and conjunctive splits of ref (in that order, each by
/// increasing lambda). Requires ref.k > ref.j + 1; throws
/// Error{InvalidIndex} otherwise. Operands of dual refs are dual as well.
std::vector<Split> enumerate_splits(const ExtAopRef& ref);

/// The prefix split of ref, available when ref.i < ref.j and ref.k > ref.j + 1.
Split prefix_split(const ExtAopRef& ref);

/// One option an operand offers to merge(): a stored undetermined circuit
/// with its gate kinds already toggled if the operand is dual.
struct CandidateView {
  OutKind out_kind = OutKind::None;
  std::span<const double> preds;
  std::size_t internal_gates = 0;
  /// Huffman delay of preds.
  double realized_delay = 0.0;

  static CandidateView of(OutKind kind, std::span<const double> preds,
                          std::size_t internal_gates = 0);
};

struct MergePick {
  std::size_t option = 0;
  bool flatten = false;
};

struct MergeResult {
  OutKind out_kind = OutKind::None;
  std::vector<double> preds;
  double log2_weight = 0.0;
  std::size_t internal_gates = 0;
  std::vector<MergePick> picks;

  std::size_t realized_size() const noexcept {
    return internal_gates + (preds.empty() ? 0 : preds.size() - 1);
  }
};

/// Combines operands with a `kind` output gate. Per operand the option with
/// the lightest contribution wins: flattened options contribute their own
/// weight, realized ones 2^delay. Ties go to the smaller realized size,
/// then to flattening, then to the earlier option. Throws
/// Error{Invariant} for fewer than two operands or an operand without
/// options.
MergeResult merge(GateKind kind, std::span<const std::vector<CandidateView>> operands);
MergeResult merge(GateKind kind, std::span<const std::vector<CandidateView>> operands,
                  const WeightScale& scale);

/// An undetermined circuit materialized in a builder: fan-in-2 sub-circuits
/// feeding one output gate of arbitrary fan-in.
struct UndeterminedCircuit {
  CircuitBuilder body;
  OutKind out_kind = OutKind::None;
  std::vector<Signal> preds;

  double log2_weight() const;
  std::size_t internal_gates() const noexcept { return body.gate_count(); }
  std::size_t realized_size() const noexcept {
    return internal_gates() + (preds.empty() ? 0 : preds.size() - 1);
  }
};

/// Fixes the output gate by Huffman coding over its predecessors.
Circuit realize(const UndeterminedCircuit& u);

/// The Huffman base case for k <= j + 1: an And over t_i, t_{i+2}, ..., t_j
/// (and t_{j+1} when k = j + 1), or the bare input for a single signal.
UndeterminedCircuit base_candidate(std::uint32_t i, std::uint32_t j, std::uint32_t k,
                                   const AopInstance& inst);

/// Where a merged operand came from.
struct OperandChoice {
  std::uint32_t cell = 0;
  std::uint8_t slot = 0;
  std::uint16_t index = 0;
  bool dual = false;
  bool flatten = false;
};

struct Candidate {
  OutKind out_kind = OutKind::None;
  /// Sum of 2^(d - reference) over preds, see DpTable::scale().
  double weight = 0.0;
  double realized_delay = 0.0;
  std::uint32_t internal_gates = 0;
  std::vector<double> preds;

  bool base = true;
  SplitRule rule = SplitRule::Disjunctive;
  GateKind combine = GateKind::And;
  std::array<OperandChoice, 2> operands{};

  std::size_t realized_size() const noexcept {
    return internal_gates + preds.size() - 1;
  }
};

/// Slot 0 holds And-rooted candidates (and the single-signal candidate of
/// one-input cells), slot 1 Or-rooted ones.
struct DpCell {
  ExtAopRef ref;
  std::array<std::vector<Candidate>, 2> slots;
};

struct CandidateRef {
  std::uint32_t cell = 0;
  std::uint8_t slot = 0;
  std::uint16_t index = 0;
};

struct TableStats {
  std::size_t cells = 0;
  std::size_t candidates = 0;
  std::size_t merges = 0;
  std::size_t pareto_cap_hits = 0;
  std::size_t max_front = 0;
};

struct BuildOptions {
  Mode mode = Mode::Delay;
  /// Also try the prefix split.
  bool prefix_split = false;
  /// Candidate cap per cell and output kind in DelaySize mode; the heaviest
  /// candidates are dropped first.
  std::size_t pareto_cap = 32;
  /// Optional filter on the splits considered for a cell. Every cell with
  /// k > j + 1 must keep at least one split.
  std::function<bool(const ExtAopRef&, const Split&)> allow_split;
};

class DpTable {
 public:
  std::size_t inputs() const noexcept { return m_; }
  Mode mode() const noexcept { return mode_; }
  const WeightScale& scale() const noexcept { return scale_; }
  const TableStats& stats() const noexcept { return stats_; }

  std::size_t cell_count() const noexcept { return cells_.size(); }
  /// Cells in construction order (by input count, then i, j, k).
  std::span<const DpCell> cells() const noexcept { return cells_; }
  const DpCell* find(std::uint32_t i, std::uint32_t j, std::uint32_t k) const;
  std::uint32_t cell_index(const ExtAopRef& ref) const;

  const Candidate& at(const CandidateRef& ref) const;
  double log2_weight(const Candidate& c) const { return scale_.to_log2(c.weight); }

  /// Lightest stored weight (log2) of a cell over both slots.
  double min_log2_weight(const ExtAopRef& ref) const;

  /// Rebuilds a stored candidate as an undetermined circuit over inputs
  /// t_0..t_{m-1}; dual exchanges all gate kinds.
  UndeterminedCircuit materialize(const CandidateRef& ref, bool dual = false) const;

 private:
  friend DpTable build_table(const AopInstance& inst, const BuildOptions& options);

  DpTable(std::size_t m, Mode mode, WeightScale scale)
      : m_(m), mode_(mode), scale_(scale) {}

  void expand(const CandidateRef& ref, bool dual, CircuitBuilder& builder,
              std::span<const Signal> inputs, std::vector<Signal>& out) const;

  std::size_t m_ = 0;
  Mode mode_ = Mode::Delay;
  WeightScale scale_;
  std::vector<double> input_arrivals_;
  std::vector<DpCell> cells_;
  std::vector<std::int32_t> index_;
  TableStats stats_;
};

/// Fills the table for every valid (i, j, k) in order of increasing input
/// count.
DpTable build_table(const AopInstance& inst, const BuildOptions& options);
DpTable build_table(const AopInstance& inst, Mode mode);

/// Number of valid (i, j, k) triples for m inputs.
std::size_t table_cell_count(std::size_t m);

struct OptimizationStats {
  TableStats table;
  double elapsed_us = 0.0;
};

struct OptimizationResult {
  Circuit circuit;
  double delay = 0.0;
  std::size_t size = 0;
  Mode mode = Mode::Delay;
  OptimizationStats stats;
};

/// Best candidate of the root cell phi_{0,0,m-1}: minimum realized delay,
/// then (Delay) minimum weight and size or (DelaySize) minimum size and
/// weight.
CandidateRef select_root(const DpTable& table);

/// Circuit for g(t) (or g*(t) for dual instances).
OptimizationResult optimize(const AopInstance& inst, Mode mode = Mode::Delay);
OptimizationResult optimize(const AopInstance& inst, const BuildOptions& options);

}  // namespace aop
