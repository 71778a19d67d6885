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

// Reconstructed prior recursions for head-to-head comparison with the
// deferred-realization dynamic program. Every sub-solution is realized as a
// fan-in-2 circuit before it is reused.

#pragma once

#include <string_view>
#include <vector>

#include "aop/optimizer.hpp"

namespace aop {

enum class BaselineFamily : std::uint8_t {
  /// g(t_0..) = g(t_0..t_{2l-1}) | (t_0 & t_2 & ... & t_{2l-2} & g(t_{2l}..))
  R2006,
  /// g(t_0..) = g(t_0..t_{2l}) & (t_1 | t_3 | ... | t_{2l-1} | g*(t_{2l+1}..))
  HS2017,
  /// Full extended table, but merges realize both operands immediately.
  ImmediateExt,
};

const char* to_string(BaselineFamily family);

/// Accepts "r2006", "hs2017" and "immediate". Throws Error{Parse}.
BaselineFamily parse_baseline(std::string_view name);

/// Comma separated list; an empty string gives an empty list.
std::vector<BaselineFamily> parse_baseline_list(std::string_view names);

/// Best circuit the family's recursion yields, choosing every split
/// parameter by dynamic programming (minimum delay, then size).
OptimizationResult optimize_baseline(const AopInstance& inst, BaselineFamily family);

}  // namespace aop
