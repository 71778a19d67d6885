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

#include "aop/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <unordered_map>

#include "aop/huffman.hpp"

namespace aop {

namespace {

struct CellTypeInfo {
  CellType type;
  const char* name;
  std::size_t pins;
};

constexpr CellTypeInfo kCellTypes[] = {
    {CellType::And2, "AND2", 2},   {CellType::Or2, "OR2", 2},
    {CellType::Nand2, "NAND2", 2}, {CellType::Nor2, "NOR2", 2},
    {CellType::Inv, "INV", 1},     {CellType::Buf, "BUF", 1},
    {CellType::Aoi21, "AOI21", 3}, {CellType::Oai21, "OAI21", 3},
};

const CellTypeInfo& info(CellType t) {
  for (const auto& i : kCellTypes) {
    if (i.type == t) return i;
  }
  throw Error(ErrorCode::Unsupported, "unknown cell type");
}

TruthTable table_not(const TruthTable& a) {
  TruthTable r = a;
  const std::uint64_t mask = table_mask(a.vars());
  for (auto& w : r.words()) w = ~w & mask;
  return r;
}

TruthTable table_op(const TruthTable& a, const TruthTable& b, GateKind kind) {
  TruthTable r = a;
  auto out = r.words();
  const auto other = b.words();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = kind == GateKind::And ? (out[i] & other[i]) : (out[i] | other[i]);
  }
  return r;
}

TruthTable evaluate_cell(CellType type, const std::vector<const TruthTable*>& in) {
  switch (type) {
    case CellType::And2: return table_op(*in[0], *in[1], GateKind::And);
    case CellType::Or2: return table_op(*in[0], *in[1], GateKind::Or);
    case CellType::Nand2: return table_not(table_op(*in[0], *in[1], GateKind::And));
    case CellType::Nor2: return table_not(table_op(*in[0], *in[1], GateKind::Or));
    case CellType::Inv: return table_not(*in[0]);
    case CellType::Buf: return *in[0];
    case CellType::Aoi21:
      return table_not(table_op(table_op(*in[0], *in[1], GateKind::And), *in[2], GateKind::Or));
    case CellType::Oai21:
      return table_not(table_op(table_op(*in[0], *in[1], GateKind::Or), *in[2], GateKind::And));
  }
  throw Error(ErrorCode::Unsupported, "unknown cell type");
}

}  // namespace

double l1_distance(Point a, Point b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

const char* to_string(CellType t) { return info(t).name; }

CellType parse_cell_type(std::string_view name) {
  for (const auto& i : kCellTypes) {
    if (name == i.name) return i.type;
  }
  throw Error(ErrorCode::Unsupported, "unsupported cell type '" + std::string(name) + "'");
}

std::size_t pin_count(CellType t) { return info(t).pins; }

const Cell* Netlist::find_cell(std::string_view id) const {
  for (const Cell& c : cells) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const NetlistInput* Netlist::find_input(std::string_view id) const {
  for (const NetlistInput& i : inputs) {
    if (i.id == id) return &i;
  }
  return nullptr;
}

Point Netlist::location_of(std::string_view signal) const {
  if (const Cell* c = find_cell(signal)) return c->location;
  if (const NetlistInput* i = find_input(signal)) return i->location;
  throw Error(ErrorCode::Malformed, "unknown signal '" + std::string(signal) + "'");
}

std::vector<const Cell*> Netlist::topological_cells() const {
  std::unordered_map<std::string_view, const Cell*> by_id;
  for (const Cell& c : cells) by_id.emplace(c.id, &c);
  std::unordered_map<const Cell*, int> state;
  std::vector<const Cell*> order;
  order.reserve(cells.size());
  std::function<void(const Cell*)> visit = [&](const Cell* c) {
    int& s = state[c];
    if (s == 2) return;
    if (s == 1) throw Error(ErrorCode::Malformed, "combinational cycle through '" + c->id + "'");
    s = 1;
    for (const std::string& p : c->pins) {
      if (auto it = by_id.find(p); it != by_id.end()) visit(it->second);
    }
    state[c] = 2;
    order.push_back(c);
  };
  for (const Cell& c : cells) visit(&c);
  return order;
}

void Netlist::validate() const {
  std::set<std::string_view> ids;
  for (const NetlistInput& i : inputs) {
    if (!std::isfinite(i.arrival)) {
      throw Error(ErrorCode::NonFinite, "input '" + i.id + "' has a non-finite arrival");
    }
    if (!ids.insert(i.id).second) throw Error(ErrorCode::Malformed, "duplicate id '" + i.id + "'");
  }
  for (const Cell& c : cells) {
    if (!ids.insert(c.id).second) throw Error(ErrorCode::Malformed, "duplicate id '" + c.id + "'");
  }
  for (const Cell& c : cells) {
    if (c.pins.size() != pin_count(c.type)) {
      throw Error(ErrorCode::Malformed, "cell '" + c.id + "' has wrong pin count");
    }
    for (const std::string& p : c.pins) {
      if (!ids.contains(p)) {
        throw Error(ErrorCode::Malformed, "cell '" + c.id + "' reads unknown signal '" + p + "'");
      }
    }
  }
  if (!find_cell(output)) throw Error(ErrorCode::Malformed, "output '" + output + "' is not a cell");
  topological_cells();
}

void DelayModel::validate() const {
  if (!(d_gate > 0.0) || !(d_dist >= 0.0) || !std::isfinite(d_gate) || !std::isfinite(d_dist)) {
    throw Error(ErrorCode::Malformed, "delay model needs d_gate > 0 and d_dist >= 0");
  }
}

std::map<std::string, TruthTable> netlist_truth_tables(const Netlist& n) {
  check_tabulation(n.inputs.size());
  const std::size_t vars = n.inputs.size();
  std::map<std::string, TruthTable> tables;
  for (std::size_t i = 0; i < vars; ++i) {
    TruthTable t(vars);
    for (std::size_t w = 0; w < t.words().size(); ++w) {
      t.words()[w] = variable_word(i, w) & table_mask(vars);
    }
    tables.emplace(n.inputs[i].id, std::move(t));
  }
  for (const Cell* c : n.topological_cells()) {
    std::vector<const TruthTable*> in;
    for (const std::string& p : c->pins) in.push_back(&tables.at(p));
    tables.insert_or_assign(c->id, evaluate_cell(c->type, in));
  }
  return tables;
}

Netlist decompose_to_and_inv(const Netlist& n) {
  n.validate();
  Netlist out;
  out.inputs = n.inputs;
  std::map<std::string, std::string> alias;
  auto resolve = [&](const std::string& s) {
    auto it = alias.find(s);
    return it == alias.end() ? s : it->second;
  };

  for (const Cell* c : n.topological_cells()) {
    std::vector<std::string> pin;
    for (const std::string& p : c->pins) pin.push_back(resolve(p));
    std::size_t helper = 0;
    auto add = [&](CellType type, std::vector<std::string> pins, bool last = false) {
      Cell cell;
      cell.id = last ? c->id : c->id + "/" + std::to_string(helper++);
      cell.type = type;
      cell.pins = std::move(pins);
      cell.location = c->location;
      out.cells.push_back(cell);
      return cell.id;
    };
    switch (c->type) {
      case CellType::And2:
        add(CellType::And2, {pin[0], pin[1]}, true);
        break;
      case CellType::Or2: {
        const auto na = add(CellType::Inv, {pin[0]});
        const auto nb = add(CellType::Inv, {pin[1]});
        const auto both = add(CellType::And2, {na, nb});
        add(CellType::Inv, {both}, true);
        break;
      }
      case CellType::Nand2: {
        const auto a = add(CellType::And2, {pin[0], pin[1]});
        add(CellType::Inv, {a}, true);
        break;
      }
      case CellType::Nor2: {
        const auto na = add(CellType::Inv, {pin[0]});
        const auto nb = add(CellType::Inv, {pin[1]});
        add(CellType::And2, {na, nb}, true);
        break;
      }
      case CellType::Inv:
        add(CellType::Inv, {pin[0]}, true);
        break;
      case CellType::Buf:
        alias[c->id] = pin[0];
        break;
      case CellType::Aoi21: {
        // !(ab | c) = !(ab) & !c
        const auto ab = add(CellType::And2, {pin[0], pin[1]});
        const auto nab = add(CellType::Inv, {ab});
        const auto nc = add(CellType::Inv, {pin[2]});
        add(CellType::And2, {nab, nc}, true);
        break;
      }
      case CellType::Oai21: {
        // !((a | b) & c)
        const auto na = add(CellType::Inv, {pin[0]});
        const auto nb = add(CellType::Inv, {pin[1]});
        const auto nor = add(CellType::And2, {na, nb});
        const auto either = add(CellType::Inv, {nor});
        const auto prod = add(CellType::And2, {either, pin[2]});
        add(CellType::Inv, {prod}, true);
        break;
      }
    }
  }
  out.output = resolve(n.output);
  if (!out.find_cell(out.output)) {
    // The output is a buffered primary input; keep a buffer so the netlist
    // still designates a cell.
    Cell wire;
    wire.id = n.output;
    wire.type = CellType::Buf;
    wire.pins = {out.output};
    wire.location = n.location_of(n.output);
    out.cells.push_back(wire);
    out.output = wire.id;
  }
  return out;
}

CriticalPath extract_path(const Netlist& and_inv, std::string_view x) {
  const auto order = and_inv.topological_cells();
  std::unordered_map<std::string_view, std::size_t> position;
  for (std::size_t i = 0; i < order.size(); ++i) position.emplace(order[i]->id, i);
  if (!position.contains(x) && !and_inv.find_input(x)) {
    throw Error(ErrorCode::NotReachable, "unknown critical input '" + std::string(x) + "'");
  }

  std::unordered_map<std::string_view, std::vector<const Cell*>> fanout;
  for (const Cell* c : order) {
    for (const std::string& p : c->pins) {
      auto& f = fanout[p];
      if (f.empty() || f.back() != c) f.push_back(c);
    }
  }
  // Number of x -> output paths starting at each signal, saturated at 2.
  std::unordered_map<std::string_view, int> paths;
  paths[and_inv.output] = 1;
  for (std::size_t i = order.size(); i-- > 0;) {
    const Cell* c = order[i];
    const int through = paths[c->id];
    if (through == 0) continue;
    for (const std::string& p : c->pins) paths[p] = std::min(2, paths[p] + through);
  }
  if (paths[x] == 0) {
    throw Error(ErrorCode::NotReachable, "'" + std::string(x) + "' does not reach the output");
  }

  CriticalPath path;
  path.input = std::string(x);
  path.ambiguous = paths[x] > 1;
  std::string cur(x);
  while (cur != and_inv.output) {
    const Cell* next = nullptr;
    for (const Cell* c : fanout[cur]) {
      if (paths[c->id] == 0) continue;
      if (!next || position[c->id] < position[next->id]) next = c;
    }
    PathStage stage;
    stage.cell = next->id;
    stage.type = next->type;
    if (next->type == CellType::And2) {
      stage.side = next->pins[0] == cur ? next->pins[1] : next->pins[0];
    } else if (next->type != CellType::Inv && next->type != CellType::Buf) {
      throw Error(ErrorCode::Unsupported, "extract_path needs an And2/Inv netlist");
    }
    if (next->type != CellType::Buf) path.stages.push_back(stage);
    cur = next->id;
  }
  return path;
}

NormalPath demorgan_normalize(const CriticalPath& path) {
  NormalPath out;
  std::size_t end = path.stages.size();
  while (end > 0 && path.stages[end - 1].type == CellType::Inv) {
    out.output_inverted = !out.output_inverted;
    --end;
  }
  // inverted: the signal above this point is needed in complemented form.
  bool inverted = false;
  for (std::size_t s = end; s-- > 0;) {
    const PathStage& st = path.stages[s];
    if (st.type == CellType::Inv) {
      inverted = !inverted;
      continue;
    }
    NormalStage n;
    n.cell = st.cell;
    n.kind = inverted ? GateKind::Or : GateKind::And;
    n.side = Literal{st.side, inverted, 0.0};
    out.stages.push_back(std::move(n));
  }
  std::reverse(out.stages.begin(), out.stages.end());
  out.input = Literal{path.input, inverted, 0.0};
  return out;
}

std::vector<double> modified_arrivals(std::span<const TimedPoint> inputs, Point l_out,
                                      const DelayModel& model) {
  std::vector<double> out;
  out.reserve(inputs.size());
  for (const TimedPoint& p : inputs) {
    out.push_back((p.arrival + model.d_dist * l1_distance(p.location, l_out)) / model.d_gate);
  }
  return out;
}

AopPath chain_compress(const NormalPath& path, const std::map<std::string, double>& arrivals) {
  auto timed = [&](Literal l) {
    if (auto it = arrivals.find(l.signal); it != arrivals.end()) l.arrival = it->second;
    return l;
  };
  AopPath out;
  out.input = timed(path.input);
  out.output_inverted = path.output_inverted;
  for (const NormalStage& st : path.stages) {
    if (out.stages.empty() || out.stages.back().kind != st.kind) {
      out.stages.push_back(AopStage{st.kind, {}, 0.0});
    }
    out.stages.back().side.push_back(timed(st.side));
  }
  for (AopStage& st : out.stages) {
    std::vector<double> a;
    for (const Literal& l : st.side) a.push_back(l.arrival);
    st.side_arrival = huffman_delay(a);
  }
  return out;
}

NormalizationResult normalize(const Netlist& n, std::string_view x, const DelayModel& model) {
  n.validate();
  model.validate();
  const Netlist dec = decompose_to_and_inv(n);
  const CriticalPath path = extract_path(dec, x);
  NormalPath spine = demorgan_normalize(path);
  // Side literals name the signal in front of any inverter chain.
  auto peel = [&dec](Literal& l) {
    while (const Cell* c = dec.find_cell(l.signal)) {
      if (c->type != CellType::Inv && c->type != CellType::Buf) break;
      if (c->type == CellType::Inv) l.inverted = !l.inverted;
      l.signal = c->pins[0];
    }
  };
  for (NormalStage& st : spine.stages) peel(st.side);

  // Static timing on the And2/Inv netlist: And2 costs d_gate, inverters are
  // free, wires cost d_dist per um.
  std::map<std::string, double> arrival_ps;
  for (const NetlistInput& i : dec.inputs) arrival_ps[i.id] = i.arrival;
  for (const Cell* c : dec.topological_cells()) {
    double latest = -std::numeric_limits<double>::infinity();
    for (const std::string& p : c->pins) {
      latest = std::max(latest, arrival_ps.at(p) +
                                    model.d_dist * l1_distance(dec.location_of(p), c->location));
    }
    arrival_ps[c->id] = latest + (c->type == CellType::And2 ? model.d_gate : 0.0);
  }

  const Point l_out = n.location_of(n.output);
  std::map<std::string, double> modified;
  for (const auto& [signal, a] : arrival_ps) {
    const TimedPoint tp{a, dec.location_of(signal)};
    modified[signal] = modified_arrivals(std::span(&tp, 1), l_out, model).front();
  }
  const AopPath aop = chain_compress(spine, modified);

  std::vector<double> arrivals;
  std::vector<InputBinding> bindings;
  for (std::size_t s = aop.stages.size(); s-- > 0;) {
    arrivals.push_back(aop.stages[s].side_arrival);
    bindings.push_back(InputBinding{aop.stages[s].side, aop.stages[s].kind});
  }
  arrivals.push_back(aop.input.arrival);
  bindings.push_back(InputBinding{{aop.input}, GateKind::And});
  const Variant variant = !aop.stages.empty() && aop.stages.back().kind == GateKind::Or
                              ? Variant::Dual
                              : Variant::Primal;

  return NormalizationResult{AopInstance::validate(arrivals, variant),
                             std::move(bindings),
                             l_out,
                             aop.output_inverted,
                             path.ambiguous,
                             std::move(arrival_ps)};
}

TruthTable normalized_function(const NormalizationResult& r, const Netlist& n) {
  const auto tables = netlist_truth_tables(decompose_to_and_inv(n));
  std::vector<TruthTable> t;
  for (const InputBinding& b : r.bindings) {
    std::optional<TruthTable> acc;
    for (const Literal& l : b.literals) {
      TruthTable v = tables.at(l.signal);
      if (l.inverted) v = table_not(v);
      acc = acc ? table_op(*acc, v, b.combine) : v;
    }
    t.push_back(std::move(*acc));
  }
  const bool dual = r.instance.variant() == Variant::Dual;
  TruthTable v = t.back();
  for (std::size_t idx = t.size() - 1; idx-- > 0;) {
    const bool use_and = (idx % 2 == 0) != dual;
    v = table_op(t[idx], v, use_and ? GateKind::And : GateKind::Or);
  }
  return r.output_inverted ? table_not(v) : v;
}

bool normalization_preserves_function(const NormalizationResult& r, const Netlist& n) {
  const auto tables = netlist_truth_tables(n);
  return normalized_function(r, n) == tables.at(n.output);
}

}  // namespace aop
