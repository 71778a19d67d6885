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

#include <algorithm>
#include <random>

#include "aop/harness.hpp"
#include "aop/io.hpp"
#include "aop/normalize.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace aop;
using namespace aop::testing;

namespace {

NetlistInput in(const std::string& id, double arrival = 0.0, Point p = {}) {
  return NetlistInput{id, arrival, p};
}

Cell cell(const std::string& id, CellType t, std::vector<std::string> pins, Point p = {}) {
  return Cell{id, t, std::move(pins), p};
}

std::size_t count_type(const Netlist& n, CellType t) {
  return static_cast<std::size_t>(
      std::count_if(n.cells.begin(), n.cells.end(), [t](const Cell& c) { return c.type == t; }));
}

// Output table of a netlist over its inputs as a word (<= 6 inputs).
std::uint64_t output_word(const Netlist& n) {
  return netlist_truth_tables(n).at(n.output).words()[0];
}

Netlist load(const char* name) {
  return parse_netlist(read_file(std::string(AOP_TEST_DATA) + "/" + name));
}

}  // namespace

TEST_SUITE("normalize") {
  TEST_CASE("cell names") {
    for (CellType t : {CellType::And2, CellType::Or2, CellType::Nand2, CellType::Nor2, CellType::Inv,
                       CellType::Buf, CellType::Aoi21, CellType::Oai21}) {
      CHECK(parse_cell_type(to_string(t)) == t);
    }
    CHECK_THROWS_AS(parse_cell_type("XOR2"), Error);
    CHECK(pin_count(CellType::Oai21) == 3);
  }

  TEST_CASE("netlist validation") {
    Netlist n;
    n.inputs = {in("a"), in("b")};
    n.cells = {cell("g", CellType::And2, {"a", "b"})};
    n.output = "g";
    CHECK_NOTHROW(n.validate());
    Netlist bad = n;
    bad.cells[0].pins = {"a", "zz"};
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = n;
    bad.cells[0].pins = {"a"};
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = n;
    bad.cells.push_back(cell("h", CellType::Or2, {"g", "h"}));
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = n;
    bad.output = "q";
    CHECK_THROWS_AS(bad.validate(), Error);
    CHECK_THROWS_AS((DelayModel{0.0, 1.0}).validate(), Error);
    CHECK_THROWS_AS((DelayModel{1.0, -1.0}).validate(), Error);
  }

  TEST_CASE("decomposition into and2 and inv") {
    for (CellType t : {CellType::And2, CellType::Or2, CellType::Nand2, CellType::Nor2, CellType::Aoi21,
                       CellType::Oai21}) {
      Netlist n;
      n.inputs = {in("a"), in("b"), in("c")};
      std::vector<std::string> pins{"a", "b", "c"};
      pins.resize(pin_count(t));
      n.cells = {cell("g", t, pins)};
      n.output = "g";
      const Netlist d = decompose_to_and_inv(n);
      for (const Cell& c : d.cells) CHECK((c.type == CellType::And2 || c.type == CellType::Inv));
      CHECK(output_word(d) == output_word(n));
    }

    Netlist nor;
    nor.inputs = {in("a"), in("b")};
    nor.cells = {cell("g", CellType::Nor2, {"a", "b"})};
    nor.output = "g";
    const Netlist dn = decompose_to_and_inv(nor);
    CHECK(count_type(dn, CellType::And2) == 1);
    CHECK(count_type(dn, CellType::Inv) == 2);
    CHECK(dn.find_cell("g")->type == CellType::And2);
    CHECK(output_word(dn) == 0x1);

    Netlist buf;
    buf.inputs = {in("a"), in("b")};
    buf.cells = {cell("w", CellType::Buf, {"a"}), cell("g", CellType::And2, {"w", "b"})};
    buf.output = "g";
    const Netlist db = decompose_to_and_inv(buf);
    CHECK(db.cells.size() == 1);
    CHECK(db.cells[0].pins == std::vector<std::string>{"a", "b"});

    Netlist oai;
    oai.inputs = {in("a"), in("b"), in("c")};
    oai.cells = {cell("g", CellType::Oai21, {"a", "b", "c"})};
    oai.output = "g";
    const Netlist dz = decompose_to_and_inv(oai);
    CHECK(count_type(dz, CellType::And2) == 2);
    std::uint64_t expect = 0;
    for (std::uint64_t x = 0; x < 8; ++x) {
      const bool v = !((bit(x, 0) || bit(x, 1)) && bit(x, 2));
      expect |= std::uint64_t{v} << x;
    }
    CHECK(output_word(dz) == expect);
  }

  TEST_CASE("path extraction") {
    Netlist one;
    one.inputs = {in("x"), in("y")};
    one.cells = {cell("g", CellType::And2, {"x", "y"})};
    one.output = "g";
    const CriticalPath p1 = extract_path(one, "x");
    REQUIRE(p1.stages.size() == 1);
    CHECK(p1.stages[0].side == "y");
    CHECK_FALSE(p1.ambiguous);

    Netlist chain;
    chain.inputs = {in("x"), in("a"), in("b"), in("c")};
    chain.cells = {cell("g3", CellType::And2, {"g2", "c"}), cell("g1", CellType::And2, {"x", "a"}),
                   cell("g2", CellType::Inv, {"g1"})};
    chain.output = "g3";
    const CriticalPath p3 = extract_path(chain, "x");
    REQUIRE(p3.stages.size() == 3);
    CHECK(p3.stages[0].cell == "g1");
    CHECK(p3.stages[1].cell == "g2");
    CHECK(p3.stages[2].cell == "g3");
    CHECK_THROWS_AS(extract_path(chain, "nope"), Error);

    Netlist diamond;
    diamond.inputs = {in("x"), in("a")};
    diamond.cells = {cell("p", CellType::And2, {"x", "a"}), cell("q", CellType::Inv, {"x"}),
                     cell("o", CellType::And2, {"p", "q"})};
    diamond.output = "o";
    const CriticalPath pd = extract_path(diamond, "x");
    CHECK(pd.ambiguous);
    CHECK(pd.stages.size() == 2);

    Netlist apart = one;
    apart.inputs.push_back(in("z"));
    CHECK_THROWS_AS(extract_path(apart, "z"), Error);
  }

  TEST_CASE("inverters leave the spine") {
    CriticalPath p;
    p.input = "x";
    p.stages = {PathStage{"g1", CellType::And2, "s0"}, PathStage{"g2", CellType::Inv, ""},
                PathStage{"g3", CellType::And2, "s2"}};
    const NormalPath n = demorgan_normalize(p);
    REQUIRE(n.stages.size() == 2);
    CHECK(n.stages[0].kind == GateKind::Or);
    CHECK(n.stages[0].side.inverted);
    CHECK(n.stages[1].kind == GateKind::And);
    CHECK_FALSE(n.stages[1].side.inverted);
    CHECK(n.input.inverted);
    CHECK_FALSE(n.output_inverted);
    // (x, s0, s2) = bits (0, 1, 2): !(x & s0) & s2 against (!x | !s0) & s2.
    for (std::uint64_t a = 0; a < 8; ++a) {
      const bool orig = !(bit(a, 0) && bit(a, 1)) && bit(a, 2);
      const bool norm = ((bit(a, 0) != n.input.inverted) || (bit(a, 1) != n.stages[0].side.inverted)) &&
                        bit(a, 2);
      CHECK(orig == norm);
    }

    CriticalPath plain;
    plain.input = "x";
    plain.stages = {PathStage{"g1", CellType::And2, "a"}, PathStage{"g2", CellType::And2, "b"}};
    const NormalPath np = demorgan_normalize(plain);
    CHECK(np.stages.size() == 2);
    CHECK(np.stages[0].kind == GateKind::And);
    CHECK_FALSE(np.input.inverted);
    CHECK_FALSE(np.stages[1].side.inverted);

    plain.stages.push_back(PathStage{"g3", CellType::Inv, ""});
    const NormalPath ni = demorgan_normalize(plain);
    CHECK(ni.output_inverted);
    CHECK(ni.stages.size() == 2);
    CHECK(ni.stages[1].kind == GateKind::And);
  }

  TEST_CASE("modified arrivals") {
    const DelayModel model{10.0, 0.5};
    const std::vector<TimedPoint> pts{{100, {0, 0}}, {50, {30, 40}}, {20, {20, 30}}, {20, {40, 50}}};
    const std::vector<double> a = modified_arrivals(pts, Point{30, 40}, model);
    CHECK(a[0] == doctest::Approx(13.5));
    CHECK(a[1] == doctest::Approx(5.0));
    CHECK(a[2] == doctest::Approx(a[3]));

    const std::vector<double> scaled =
        modified_arrivals(std::vector<TimedPoint>{{300, {0, 0}}, {150, {30, 40}}}, Point{30, 40},
                          DelayModel{30.0, 1.5});
    CHECK(scaled[0] == doctest::Approx(a[0]));
    CHECK(scaled[1] == doctest::Approx(a[1]));

    const std::vector<double> near =
        modified_arrivals(std::vector<TimedPoint>{{100, {0, 0}}, {100, {0, 2}}}, Point{0, 0}, model);
    CHECK(near[1] - near[0] == doctest::Approx(0.1));
  }

  TEST_CASE("chains collapse") {
    NormalPath p;
    p.input = Literal{"x", false, 9};
    p.stages = {NormalStage{"g1", GateKind::And, Literal{"a", false, 0}},
                NormalStage{"g2", GateKind::And, Literal{"b", false, 0}}};
    const AopPath c = chain_compress(p);
    REQUIRE(c.stages.size() == 1);
    CHECK(c.stages[0].side_arrival == 1);
    CHECK(c.stages[0].side.size() == 2);

    p.stages = {NormalStage{"g1", GateKind::And, Literal{"a", false, 0}},
                NormalStage{"g2", GateKind::Or, Literal{"b", false, 3}},
                NormalStage{"g3", GateKind::And, Literal{"c", true, 2}}};
    const AopPath alt = chain_compress(p);
    REQUIRE(alt.stages.size() == 3);
    CHECK(alt.stages[1].side_arrival == 3);
    CHECK(alt.stages[2].side[0].inverted);

    p.stages = {NormalStage{"g1", GateKind::And, Literal{"a", false, 0}},
                NormalStage{"g2", GateKind::And, Literal{"b", false, 4}},
                NormalStage{"g3", GateKind::Or, Literal{"c", false, 1}}};
    const AopPath mixed = chain_compress(p);
    REQUIRE(mixed.stages.size() == 2);
    CHECK(mixed.stages[0].kind == GateKind::And);
    CHECK(mixed.stages[0].side_arrival == 5);
    CHECK(mixed.stages[1].kind == GateKind::Or);
    CHECK(mixed.stages[1].side_arrival == 1);

    const AopPath timed = chain_compress(p, {{"a", 7.0}});
    CHECK(timed.stages[0].side_arrival == 8);
  }

  TEST_CASE("golden path with nor and oai cells") {
    const Netlist n = load("netlist_nor_oai.json");
    const NormalizationResult r = normalize(n, "x", DelayModel{10.0, 0.5});
    CHECK(normalization_preserves_function(r, n));
    CHECK(r.instance.size() == r.bindings.size());
    CHECK(r.output_location == Point{30, 40});
    CHECK_FALSE(r.ambiguous_path);
    REQUIRE(r.bindings.back().literals.size() == 1);
    CHECK(r.bindings.back().literals[0].signal == "x");
    CHECK(r.instance.arrivals().back() == doctest::Approx((100 + 0.5 * 70) / 10.0));
    std::vector<std::string> seen;
    for (const InputBinding& b : r.bindings) {
      for (const Literal& l : b.literals) seen.push_back(l.signal);
    }
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  }

  TEST_CASE("an and-or path stays as it is") {
    const Netlist n = load("netlist_chain.json");
    const NormalizationResult r = normalize(n, "t3", DelayModel{10.0, 0.0});
    CHECK(normalization_preserves_function(r, n));
    CHECK(r.instance.variant() == Variant::Primal);
    CHECK_FALSE(r.output_inverted);
    REQUIRE(r.instance.size() == 4);
    const std::vector<double> want{3, 2, 1, 5};
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(r.instance.arrival(i) == doctest::Approx(want[i]));
      REQUIRE(r.bindings[i].literals.size() == 1);
      CHECK(r.bindings[i].literals[0].signal == "t" + std::to_string(i));
      CHECK_FALSE(r.bindings[i].literals[0].inverted);
    }
  }

  TEST_CASE("single and2") {
    Netlist n;
    n.inputs = {in("x", 20), in("y", 40)};
    n.cells = {cell("g", CellType::And2, {"x", "y"})};
    n.output = "g";
    const NormalizationResult r = normalize(n, "x", DelayModel{10.0, 0.0});
    CHECK(r.instance.size() == 2);
    CHECK(r.instance.arrival(0) == doctest::Approx(4.0));
    CHECK(r.instance.arrival(1) == doctest::Approx(2.0));
    CHECK(normalization_preserves_function(r, n));

    Netlist o = n;
    o.cells[0].type = CellType::Or2;
    const NormalizationResult ro = normalize(o, "x", DelayModel{10.0, 0.0});
    CHECK((ro.output_inverted || ro.instance.variant() == Variant::Dual));
    CHECK(normalization_preserves_function(ro, o));
  }

  TEST_CASE("random toy netlists keep their function") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      const ToyNetlist t = random_toy_netlist(seed, 12);
      CHECK(t.netlist.inputs.size() <= 12);
      const NormalizationResult r = normalize(t.netlist, t.critical_input, DelayModel{12.0, 0.3});
      REQUIRE_MESSAGE(normalization_preserves_function(r, t.netlist), "seed ", seed);
      CHECK(r.bindings.size() == r.instance.size());
    }
  }
}
