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
#include <cmath>
#include <random>

#include "aop/huffman.hpp"
#include "aop/weight.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace aop;
using namespace aop::testing;

namespace {

// Smallest delay over every binary combining tree, by trying every pair at
// every step.
double exhaustive_min(std::vector<double> a) {
  if (a.size() == 1) return a[0];
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = x + 1; y < a.size(); ++y) {
      std::vector<double> next;
      for (std::size_t z = 0; z < a.size(); ++z) {
        if (z != x && z != y) next.push_back(a[z]);
      }
      next.push_back(std::max(a[x], a[y]) + 1.0);
      best = std::min(best, exhaustive_min(next));
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("huffman") {
  TEST_CASE("small trees") {
    CHECK(huffman_delay(std::vector<double>{0, 0, 0, 0}) == 2);
    CHECK(huffman_delay(std::vector<double>{0, 1, 2}) == 3);
    CHECK(huffman_delay(std::vector<double>{3}) == 3);
    CHECK_THROWS_AS(huffman_delay(std::vector<double>{}), Error);

    const HuffmanTree t = huffman_tree(std::vector<double>{0, 1, 2}, GateKind::And);
    CHECK(t.delay == 3);
    CHECK(circuit_delay(t.circuit) == 3);
    CHECK(circuit_size(t.circuit) == 2);
    for (std::uint64_t x = 0; x < 8; ++x) CHECK(naive_eval(t.circuit, x) == (x == 7));

    const HuffmanTree one = huffman_tree(std::vector<double>{3}, GateKind::Or);
    CHECK(one.delay == 3);
    CHECK(circuit_size(one.circuit) == 0);
  }

  TEST_CASE("combine in a shared builder") {
    CircuitBuilder b;
    std::vector<Signal> s;
    for (std::uint32_t i = 0; i < 5; ++i) s.push_back(b.add_input(i, i == 4 ? 3.0 : 0.0));
    const Signal out = huffman_combine(b, s, GateKind::Or);
    CHECK(out.arrival == 4);
    CHECK(b.gate_count() == 4);
    const Circuit c = b.build(out);
    for (std::uint64_t x = 0; x < 32; ++x) CHECK(naive_eval(c, x) == (x != 0));
    CHECK_THROWS_AS(huffman_combine(b, std::span<const Signal>{}, GateKind::And), Error);
  }

  TEST_CASE("integral delay is the Kraft ceiling") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 3000; ++trial) {
      const std::size_t n = 1 + rng() % 64;
      const std::vector<double> a = random_integral(rng, n, static_cast<int>(rng() % 50));
      REQUIRE(huffman_delay(a) == static_cast<double>(exact_ceil_log2(a)));
    }
  }

  TEST_CASE("no combining order beats it") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> real(0.0, 6.0);
    for (int trial = 0; trial < 400; ++trial) {
      const std::size_t n = 1 + trial % 6;
      std::vector<double> a(n);
      for (double& v : a) v = trial % 2 ? real(rng) : static_cast<double>(rng() % 6);
      CHECK(huffman_delay(a) == doctest::Approx(exhaustive_min(a)));
    }
  }

  TEST_CASE("gate count and determinism") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
      const std::vector<double> a = random_integral(rng, 1 + trial % 20, 5);
      const HuffmanTree t1 = huffman_tree(a, GateKind::And);
      const HuffmanTree t2 = huffman_tree(a, GateKind::And);
      CHECK(circuit_size(t1.circuit) == a.size() - 1);
      CHECK(t1.circuit == t2.circuit);
      CHECK(t1.delay == circuit_delay(t1.circuit));
    }
  }
}
