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

// Bit-parallel truth tables. Input t_i is bit i of the assignment index, so
// assignment a sets t_i = (a >> i) & 1 and is stored in bit (a % 64) of
// word (a / 64).

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "aop/circuit.hpp"
#include "aop/types.hpp"

namespace aop {

inline constexpr std::size_t kMaxTabulatedInputs = 24;

/// Number of 64-bit words holding 2^vars bits.
constexpr std::size_t table_words(std::size_t vars) {
  return vars <= 6 ? 1 : (std::size_t{1} << (vars - 6));
}

/// Mask of the valid bits in every word of a table over vars inputs.
constexpr std::uint64_t table_mask(std::size_t vars) {
  return vars >= 6 ? ~std::uint64_t{0}
                   : ((std::uint64_t{1} << (std::size_t{1} << vars)) - 1);
}

/// Word `word` of the projection onto input `var`.
std::uint64_t variable_word(std::size_t var, std::size_t word);

class TruthTable {
 public:
  TruthTable() = default;
  explicit TruthTable(std::size_t vars);
  TruthTable(std::size_t vars, std::vector<std::uint64_t> words);

  std::size_t vars() const noexcept { return vars_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  bool get(std::size_t assignment) const {
    return (words_[assignment >> 6] >> (assignment & 63)) & 1u;
  }
  void set(std::size_t assignment, bool value);

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  std::size_t vars_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Throws Error{TooLarge} above kMaxTabulatedInputs.
void check_tabulation(std::size_t m);

/// Words [first_word, first_word + out.size()) of the table of phi over m
/// inputs, evaluated directly from the defining formula.
void phi_block(const ExtAopRef& ref, std::size_t m, std::size_t first_word,
               std::span<std::uint64_t> out);

/// Full table of the extended And-Or path over m inputs.
TruthTable phi_truth_table(const ExtAopRef& ref, std::size_t m);

/// Evaluates every node of c on a block of assignments. `scratch` receives
/// node-major rows of out.size() words; the output row is copied to out.
void simulate_block(const Circuit& c, std::span<const NodeId> order,
                    std::size_t first_word, std::span<std::uint64_t> out,
                    std::vector<std::uint64_t>& scratch);

/// Full table of the circuit output over m inputs.
TruthTable simulate(const Circuit& c, std::size_t m);

}  // namespace aop
