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

#include <string>

#include "aop/io.hpp"
#include "aop/optimizer.hpp"
#include "aop/verify.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace aop;
using namespace aop::testing;

namespace {
std::string data(const char* name) { return read_file(std::string(AOP_TEST_DATA) + "/" + name); }
}  // namespace

TEST_SUITE("io") {
  TEST_CASE("instances") {
    const AopInstance inst = parse_instance(data("instance_m3.json"));
    CHECK(inst.size() == 3);
    CHECK(inst.arrival(1) == 20);
    CHECK(inst.variant() == Variant::Primal);
    CHECK(parse_instance(format_instance(inst)).arrival(1) == 20);

    const AopInstance dual = parse_instance(data("instance_dual_m4.json"));
    CHECK(dual.variant() == Variant::Dual);
    CHECK(parse_instance(format_instance(dual)).variant() == Variant::Dual);

    CHECK(parse_instance(R"({"arrivals": [1.5, 2]})").size() == 2);
    try {
      parse_instance(data("instance_empty.json"));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyInstance);
    }
    CHECK_THROWS_AS(parse_instance(R"({"m": 3, "arrivals": [1, 2]})"), Error);
    CHECK_THROWS_AS(parse_instance(R"({"m": 1, "arrivals": [1], "variant": "h"})"), Error);
    CHECK_THROWS_AS(parse_instance(R"({"m": 1, "arrivals": ["a"]})"), Error);
    CHECK_THROWS_AS(parse_instance("{"), Error);
    CHECK_THROWS_AS(read_file("/nonexistent/aop.json"), Error);
  }

  TEST_CASE("circuits") {
    const Circuit golden = parse_circuit(data("circuit_m3.json"));
    CHECK(check_structure(golden).structural_ok);
    CHECK(circuit_delay(golden) == 22);
    CHECK(equivalent(golden, ExtAopRef{0, 0, 2, false}, 3));
    CHECK(format_circuit(golden) == data("circuit_m3.json"));

    const OptimizationResult r = optimize(make({0, 4, 1, 2, 3, 0, 1}));
    const Circuit back = parse_circuit(format_circuit(r.circuit));
    CHECK(back == r.circuit);

    const Circuit sparse = parse_circuit(R"({"nodes": [
        {"id": 10, "kind": "input", "input": 1, "arrival": 2},
        {"id": 5, "kind": "input", "input": 0},
        {"id": 7, "kind": "or", "preds": [5, 10]}], "output": 7})");
    CHECK(check_structure(sparse).structural_ok);
    CHECK(circuit_delay(sparse) == 3);

    const Circuit dangling = parse_circuit(R"({"nodes": [
        {"id": 0, "kind": "input"}, {"id": 1, "kind": "and", "preds": [0, 4]}], "output": 1})");
    CHECK_FALSE(check_structure(dangling).structural_ok);

    CHECK_THROWS_AS(parse_circuit(R"({"nodes": [{"id": 0, "kind": "xor"}], "output": 0})"), Error);
    CHECK_THROWS_AS(parse_circuit(R"({"nodes": [{"id": 0, "kind": "input"}, {"id": 0, "kind": "input"}], "output": 0})"),
                    Error);
    CHECK_THROWS_AS(parse_circuit(R"({"nodes": []})"), Error);
  }

  TEST_CASE("netlists") {
    const Netlist n = parse_netlist(data("netlist_nor_oai.json"));
    CHECK(n.inputs.size() == 6);
    CHECK(n.cells.size() == 5);
    CHECK(n.find_cell("n2")->type == CellType::Oai21);
    CHECK(n.location_of("c") == Point{30, 40});
    const Netlist back = parse_netlist(format_netlist(n));
    CHECK(format_netlist(back) == format_netlist(n));

    CHECK_THROWS_AS(parse_netlist(R"({"inputs": [], "cells": [{"id": "g", "type": "AND2", "pins": ["a", "b"]}], "output": "g"})"),
                    Error);
    CHECK_THROWS_AS(parse_netlist(R"({"inputs": [{"id": "a", "arrival": 0}], "cells": [{"id": "g", "type": "MUX2", "pins": ["a", "a"]}], "output": "g"})"),
                    Error);
  }

  TEST_CASE("reports") {
    const std::string lb = format_lower_bound(lower_bound(make({0, 20, 0})));
    CHECK(lb.find("\"combined\": 22") != std::string::npos);
    CHECK(data("lb_m3.json") == lb);
    const std::string mapping = format_normalization(
        normalize(parse_netlist(data("netlist_nor_oai.json")), "x", DelayModel{10, 0.5}));
    CHECK(mapping == data("mapping_nor_oai.json"));
  }
}
