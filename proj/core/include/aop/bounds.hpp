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

// Delay lower bounds for And-Or path circuits and an exact optimum for tiny
// instances.

#pragma once

#include <cstddef>
#include <vector>

#include "aop/types.hpp"

namespace aop {

struct InputBound {
  std::size_t input = 0;
  double arrival = 0.0;
  /// Gates every circuit must place between this input and the output.
  std::size_t min_gates = 0;
  double bound = 0.0;
};

struct LowerBoundReport {
  double kraft = 0.0;
  double input_depth = 0.0;
  double combined = 0.0;
  std::vector<InputBound> details;
};

/// ceil(log2 W) for integral arrivals (exact), log2 W otherwise.
double kraft_lb(const AopInstance& inst);

/// Gates input i must traverse: t_0 one gate, every other input two gates
/// once m >= 3 (neither g = t_i & h nor g = t_i | h holds for i >= 1).
std::size_t min_gates_to_output(std::size_t input, std::size_t m);

/// max_i a(t_i) + min_gates_to_output(i, m).
double input_depth_lb(const AopInstance& inst);

LowerBoundReport lower_bound(const AopInstance& inst);

inline constexpr std::size_t kOracleMaxInputs = 5;
inline constexpr double kOracleMaxSpread = 16.0;
inline constexpr std::size_t kOracleMaxFunctions = 2'000'000;

/// Whether exact_optimum() accepts the instance.
bool oracle_eligible(const AopInstance& inst);

/// Minimum delay over all {And2, Or2} circuits for g(t) (or g*(t)), found
/// by a forward closure over truth tables ordered by arrival time. Throws
/// Error{InstanceTooLarge} unless oracle_eligible(inst).
double exact_optimum(const AopInstance& inst);

}  // namespace aop
