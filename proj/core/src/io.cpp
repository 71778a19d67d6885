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

#include "aop/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace aop {

using Json = nlohmann::ordered_json;

namespace {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
}

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

Json point(Point p) { return Json{{"x", p.x}, {"y", p.y}}; }

Json literal(const Literal& l) {
  return Json{{"signal", l.signal}, {"inverted", l.inverted}, {"arrival", l.arrival}};
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

AopInstance parse_instance(std::string_view text) {
  const Json j = parse_json(text);
  return guarded("instance", [&] {
    const auto arrivals = j.at("arrivals").get<std::vector<double>>();
    const auto m = j.contains("m") ? j.at("m").get<std::size_t>() : arrivals.size();
    const std::string variant = j.value("variant", std::string("g"));
    Variant v;
    if (variant == "g") {
      v = Variant::Primal;
    } else if (variant == "g_star") {
      v = Variant::Dual;
    } else {
      throw Error(ErrorCode::Parse, "variant must be \"g\" or \"g_star\"");
    }
    return validate_instance(m, arrivals, v);
  });
}

std::string format_instance(const AopInstance& inst) {
  Json j;
  j["m"] = inst.size();
  j["arrivals"] = std::vector<double>(inst.arrivals().begin(), inst.arrivals().end());
  j["variant"] = inst.variant() == Variant::Primal ? "g" : "g_star";
  return j.dump(2) + "\n";
}

Circuit parse_circuit(std::string_view text) {
  const Json j = parse_json(text);
  return guarded("circuit", [&] {
    const Json& list = j.at("nodes");
    std::map<std::int64_t, NodeId> index;
    for (const Json& n : list) {
      const auto id = n.at("id").get<std::int64_t>();
      if (!index.emplace(id, static_cast<NodeId>(index.size())).second) {
        throw Error(ErrorCode::Parse, "duplicate node id " + std::to_string(id));
      }
    }
    auto lookup = [&](std::int64_t id) -> NodeId {
      auto it = index.find(id);
      return it == index.end() ? static_cast<NodeId>(list.size() + 1) : it->second;
    };
    std::vector<Node> nodes;
    for (const Json& n : list) {
      Node node;
      const std::string kind = n.at("kind").get<std::string>();
      if (kind == "input") {
        node.kind = NodeKind::Input;
        node.input = n.contains("input") ? n.at("input").get<std::uint32_t>()
                                         : n.at("id").get<std::uint32_t>();
        node.arrival = n.value("arrival", 0.0);
      } else if (kind == "and" || kind == "or") {
        node.kind = kind == "and" ? NodeKind::And : NodeKind::Or;
      } else {
        throw Error(ErrorCode::Parse, "unknown node kind '" + kind + "'");
      }
      if (n.contains("preds")) {
        for (const Json& p : n.at("preds")) node.preds.push_back(lookup(p.get<std::int64_t>()));
      }
      nodes.push_back(std::move(node));
    }
    return Circuit(std::move(nodes), lookup(j.at("output").get<std::int64_t>()));
  });
}

std::string format_circuit(const Circuit& c) {
  Json nodes = Json::array();
  for (std::size_t id = 0; id < c.node_count(); ++id) {
    const Node& n = c.node(static_cast<NodeId>(id));
    Json node;
    node["id"] = id;
    switch (n.kind) {
      case NodeKind::Input:
        node["kind"] = "input";
        node["input"] = n.input;
        node["arrival"] = n.arrival;
        break;
      case NodeKind::And: node["kind"] = "and"; break;
      case NodeKind::Or: node["kind"] = "or"; break;
    }
    if (n.is_gate()) node["preds"] = n.preds;
    nodes.push_back(std::move(node));
  }
  Json j;
  j["nodes"] = std::move(nodes);
  j["output"] = c.output();
  return j.dump(2) + "\n";
}

Netlist parse_netlist(std::string_view text) {
  const Json j = parse_json(text);
  return guarded("netlist", [&] {
    Netlist n;
    for (const Json& i : j.at("inputs")) {
      n.inputs.push_back(NetlistInput{i.at("id").get<std::string>(), i.at("arrival").get<double>(),
                                      Point{i.value("x", 0.0), i.value("y", 0.0)}});
    }
    for (const Json& c : j.at("cells")) {
      Cell cell;
      cell.id = c.at("id").get<std::string>();
      cell.type = parse_cell_type(c.at("type").get<std::string>());
      cell.pins = c.at("pins").get<std::vector<std::string>>();
      cell.location = Point{c.value("x", 0.0), c.value("y", 0.0)};
      n.cells.push_back(std::move(cell));
    }
    n.output = j.at("output").get<std::string>();
    n.validate();
    return n;
  });
}

std::string format_netlist(const Netlist& n) {
  Json inputs = Json::array();
  for (const NetlistInput& i : n.inputs) {
    inputs.push_back(Json{{"id", i.id}, {"arrival", i.arrival}, {"x", i.location.x}, {"y", i.location.y}});
  }
  Json cells = Json::array();
  for (const Cell& c : n.cells) {
    cells.push_back(Json{{"id", c.id},
                         {"type", to_string(c.type)},
                         {"pins", c.pins},
                         {"x", c.location.x},
                         {"y", c.location.y}});
  }
  Json j;
  j["inputs"] = std::move(inputs);
  j["cells"] = std::move(cells);
  j["output"] = n.output;
  return j.dump(2) + "\n";
}

std::string format_normalization(const NormalizationResult& r) {
  Json bindings = Json::array();
  for (std::size_t i = 0; i < r.bindings.size(); ++i) {
    Json lits = Json::array();
    for (const Literal& l : r.bindings[i].literals) lits.push_back(literal(l));
    bindings.push_back(Json{{"input", i},
                            {"combine", to_string(r.bindings[i].combine)},
                            {"arrival", r.instance.arrival(i)},
                            {"literals", std::move(lits)}});
  }
  Json j;
  j["instance"] = Json::parse(format_instance(r.instance));
  j["output_location"] = point(r.output_location);
  j["output_inverted"] = r.output_inverted;
  j["ambiguous_path"] = r.ambiguous_path;
  j["bindings"] = std::move(bindings);
  return j.dump(2) + "\n";
}

std::string format_lower_bound(const LowerBoundReport& r) {
  Json details = Json::array();
  for (const InputBound& b : r.details) {
    details.push_back(Json{{"input", b.input},
                           {"arrival", b.arrival},
                           {"min_gates", b.min_gates},
                           {"bound", b.bound}});
  }
  Json j;
  j["kraft"] = r.kraft;
  j["input_depth"] = r.input_depth;
  j["combined"] = r.combined;
  j["details"] = std::move(details);
  return j.dump(2) + "\n";
}

std::string format_verification(const VerificationReport& r) {
  Json j;
  j["structural_ok"] = r.structural_ok;
  j["equivalent"] = r.equivalent;
  j["delay"] = r.delay;
  j["size"] = r.size;
  j["violations"] = r.violations;
  return j.dump(2) + "\n";
}

std::string format_result_summary(const OptimizationResult& r) {
  Json j;
  j["mode"] = to_string(r.mode);
  j["delay"] = r.delay;
  j["size"] = r.size;
  j["cells"] = r.stats.table.cells;
  j["candidates"] = r.stats.table.candidates;
  j["merges"] = r.stats.table.merges;
  j["pareto_cap_hits"] = r.stats.table.pareto_cap_hits;
  j["elapsed_us"] = r.stats.elapsed_us;
  return j.dump(2) + "\n";
}

}  // namespace aop
