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

// Structural and functional checks of produced circuits.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "aop/circuit.hpp"
#include "aop/types.hpp"

namespace aop {

struct VerificationReport {
  bool structural_ok = false;
  bool equivalent = false;
  double delay = 0.0;
  std::size_t size = 0;
  std::vector<std::string> violations;
};

/// Acyclicity, fan-in two on every gate, one sink, every node reaching the
/// output, valid ids. Violations are reported, never thrown. Violation
/// messages start with one of "output", "ids", "fan-in", "cycle",
/// "single output", "unreachable", "input".
VerificationReport check_structure(const Circuit& c);

inline constexpr std::size_t kDefaultBlockWords = 4096;

/// Exhaustive comparison of c with the extended And-Or path over m inputs,
/// block_words 64-bit words at a time. Requires a structurally sound c.
/// Throws Error{TooLarge} for m > 24 and Error{Malformed} for circuits that
/// fail check_structure or read inputs >= m.
bool equivalent(const Circuit& c, const ExtAopRef& ref, std::size_t m,
                std::size_t block_words = kDefaultBlockWords);

/// check_structure followed by equivalent() when the structure is sound.
VerificationReport verify(const Circuit& c, const ExtAopRef& ref, std::size_t m);

}  // namespace aop
