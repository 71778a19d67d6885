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

// Delay-optimum fan-in-2 trees for multi-input And/Or (Golumbic's greedy
// rule: always join the two earliest signals).

#pragma once

#include <span>
#include <vector>

#include "aop/circuit.hpp"
#include "aop/types.hpp"

namespace aop {

/// Joins `signals` into one with `kind` gates, adding |signals|-1 gates to
/// the builder. Ties on arrival are broken by position in `signals`, then
/// by creation order of intermediate gates. A single signal is returned
/// unchanged. Throws Error{EmptyInstance} on an empty span.
Signal huffman_combine(CircuitBuilder& builder, std::span<const Signal> signals,
                       GateKind kind);

/// Delay of huffman_combine() over the given arrivals without building
/// anything.
double huffman_delay(std::span<const double> arrivals);

struct HuffmanTree {
  Circuit circuit;
  double delay = 0.0;
};

/// Standalone tree whose input i has arrival arrivals[i].
HuffmanTree huffman_tree(std::span<const double> arrivals, GateKind kind);

}  // namespace aop
