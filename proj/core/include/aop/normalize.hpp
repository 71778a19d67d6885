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

// Normalization of a placed critical path into an And-Or path instance.
//
// Pipeline: decompose every cell into And2/Inv, follow the critical input x
// to the output, push inverters off the path spine (De Morgan, from the
// output backwards), collapse runs of equal gates by Huffman coding their
// side inputs, and convert arrival times to gate-delay units including the
// wire delay to the output location.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aop/truth_table.hpp"
#include "aop/types.hpp"

namespace aop {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double l1_distance(Point a, Point b);

enum class CellType : std::uint8_t { And2, Or2, Nand2, Nor2, Inv, Buf, Aoi21, Oai21 };

const char* to_string(CellType t);
/// Accepts the upper-case library names ("AND2", "OAI21", ...).
CellType parse_cell_type(std::string_view name);
std::size_t pin_count(CellType t);

struct NetlistInput {
  std::string id;
  /// Arrival time in ps.
  double arrival = 0.0;
  Point location;
};

struct Cell {
  std::string id;
  CellType type = CellType::And2;
  /// Driver signal (input or cell id) per input pin.
  std::vector<std::string> pins;
  Point location;
};

struct Netlist {
  std::vector<NetlistInput> inputs;
  std::vector<Cell> cells;
  std::string output;

  /// Unique ids, known drivers, correct pin counts, acyclic, known output.
  /// Throws Error{Malformed}.
  void validate() const;

  const Cell* find_cell(std::string_view id) const;
  const NetlistInput* find_input(std::string_view id) const;
  /// Location of an input or cell output.
  Point location_of(std::string_view signal) const;
  /// Cells ordered so that drivers come first.
  std::vector<const Cell*> topological_cells() const;
};

struct DelayModel {
  /// ps per gate stage.
  double d_gate = 1.0;
  /// ps per um of L1 distance.
  double d_dist = 0.0;

  /// Throws Error{Malformed} unless d_gate > 0 and d_dist >= 0 (zero
  /// disables wire delay).
  void validate() const;
};

/// Truth tables of every signal over the primary inputs (input order of the
/// netlist). Throws Error{TooLarge} above 24 inputs.
std::map<std::string, TruthTable> netlist_truth_tables(const Netlist& n);

/// Rewrites every cell into And2/Inv cells. A cell's own id keeps naming its
/// output; helper cells are named "<id>/<k>". Buffers become wires.
/// Throws Error{Unsupported} for unknown cell types.
Netlist decompose_to_and_inv(const Netlist& n);

struct PathStage {
  std::string cell;
  CellType type = CellType::And2;  // And2 or Inv
  /// Driver of the other And2 pin.
  std::string side;
};

struct CriticalPath {
  std::string input;
  std::vector<PathStage> stages;  // from x towards the output
  /// x reaches the output along more than one path; the first path in
  /// topological order (ties by id) was taken.
  bool ambiguous = false;
};

/// Follows the signal flow of x in an And2/Inv netlist. Throws
/// Error{NotReachable} if x does not reach the output.
CriticalPath extract_path(const Netlist& and_inv, std::string_view x);

struct Literal {
  std::string signal;
  bool inverted = false;
  /// Modified arrival time a' in gate-delay units.
  double arrival = 0.0;
};

struct NormalStage {
  std::string cell;
  GateKind kind = GateKind::And;
  Literal side;
};

struct NormalPath {
  Literal input;
  std::vector<NormalStage> stages;  // from x towards the output
  /// The path computes the complement of the original output.
  bool output_inverted = false;
};

/// Pushes spine inverters to the side inputs and x. A trailing inverter run
/// at the output becomes the output polarity flag instead.
NormalPath demorgan_normalize(const CriticalPath& path);

struct TimedPoint {
  double arrival = 0.0;  // ps
  Point location;
};

/// a'(t) = (a(t) + d_dist * |l(t) - l_out|_1) / d_gate.
std::vector<double> modified_arrivals(std::span<const TimedPoint> inputs, Point l_out,
                                      const DelayModel& model);

struct AopStage {
  GateKind kind = GateKind::And;
  /// Side literals joined by a Huffman tree of `kind` gates.
  std::vector<Literal> side;
  double side_arrival = 0.0;
};

struct AopPath {
  Literal input;
  std::vector<AopStage> stages;  // strictly alternating, from x upwards
  bool output_inverted = false;
};

/// Collapses maximal runs of equal gates. Literal arrivals are taken from
/// `arrivals` (keyed by signal id) when present, else from the literal.
AopPath chain_compress(const NormalPath& path,
                       const std::map<std::string, double>& arrivals = {});

/// One And-Or path input: literals of netlist signals joined by `combine`.
struct InputBinding {
  std::vector<Literal> literals;
  GateKind combine = GateKind::And;
};

struct NormalizationResult {
  AopInstance instance;
  /// bindings[i] drives instance input t_i.
  std::vector<InputBinding> bindings;
  Point output_location;
  bool output_inverted = false;
  bool ambiguous_path = false;
  /// Arrival (ps) of every signal of the And2/Inv netlist.
  std::map<std::string, double> signal_arrivals;
};

NormalizationResult normalize(const Netlist& n, std::string_view x, const DelayModel& model);

/// Function of the instance after substituting bindings and output
/// polarity, over the netlist's primary inputs.
TruthTable normalized_function(const NormalizationResult& r, const Netlist& n);

/// normalized_function() equals the function of the netlist output.
bool normalization_preserves_function(const NormalizationResult& r, const Netlist& n);

}  // namespace aop
