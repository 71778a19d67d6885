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

// Reference evaluators used as oracles by the tests. They work one
// assignment at a time straight from the definitions and share no code with
// the library's word-parallel paths.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "aop/circuit.hpp"
#include "aop/types.hpp"

namespace aop::testing {

inline bool bit(std::uint64_t assignment, std::size_t var) { return (assignment >> var) & 1U; }

/// phi_{i,j,k} (or phi*) on one assignment, t_v = bit v.
inline bool naive_phi(const ExtAopRef& r, std::uint64_t x) {
  auto op = [&](bool conj, bool a, bool b) { return (conj != r.dual) ? (a && b) : (a || b); };
  bool v = bit(x, r.k);
  for (std::uint32_t idx = r.k; idx-- > r.j;) v = op((idx - r.j) % 2 == 0, bit(x, idx), v);
  for (std::uint32_t idx = r.i; idx + 2 <= r.j; idx += 2) v = op(true, bit(x, idx), v);
  return v;
}

inline bool naive_eval(const Circuit& c, NodeId id, std::uint64_t x) {
  const Node& n = c.node(id);
  if (n.kind == NodeKind::Input) return bit(x, n.input);
  const bool a = naive_eval(c, n.preds[0], x);
  const bool b = naive_eval(c, n.preds[1], x);
  return n.kind == NodeKind::And ? (a && b) : (a || b);
}

inline bool naive_eval(const Circuit& c, std::uint64_t x) { return naive_eval(c, c.output(), x); }

/// True if c computes phi on every assignment of m variables.
inline bool naive_equivalent(const Circuit& c, const ExtAopRef& r, std::size_t m) {
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
    if (naive_eval(c, x) != naive_phi(r, x)) return false;
  }
  return true;
}

/// ceil(log2(sum 2^a)) for integral arrivals with spread <= 60, by 128-bit
/// integer arithmetic.
inline long long exact_ceil_log2(const std::vector<double>& arrivals) {
  double lo = arrivals[0];
  for (double a : arrivals) lo = std::min(lo, a);
  unsigned __int128 sum = 0;
  for (double a : arrivals) sum += static_cast<unsigned __int128>(1) << static_cast<int>(a - lo);
  long long bits = 0;
  while ((static_cast<unsigned __int128>(1) << bits) < sum) ++bits;
  return static_cast<long long>(lo) + bits;
}

inline std::vector<double> random_integral(std::mt19937_64& rng, std::size_t m, int hi) {
  std::uniform_int_distribution<int> d(0, hi);
  std::vector<double> a(m);
  for (double& v : a) v = d(rng);
  return a;
}

inline AopInstance make(std::vector<double> arrivals, Variant v = Variant::Primal) {
  return AopInstance::validate(arrivals, v);
}

inline ExtAopRef root_of(const AopInstance& inst) {
  return ExtAopRef{0, 0, static_cast<std::uint32_t>(inst.size() - 1),
                   inst.variant() == Variant::Dual};
}

}  // namespace aop::testing
