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

#include "aop/truth_table.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace aop {

namespace {

constexpr std::array<std::uint64_t, 6> kLowPatterns = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

}  // namespace

std::uint64_t variable_word(std::size_t var, std::size_t word) {
  if (var < 6) return kLowPatterns[var];
  return ((word >> (var - 6)) & 1u) ? ~std::uint64_t{0} : 0;
}

TruthTable::TruthTable(std::size_t vars)
    : vars_(vars), words_(table_words(vars), 0) {}

TruthTable::TruthTable(std::size_t vars, std::vector<std::uint64_t> words)
    : vars_(vars), words_(std::move(words)) {
  words_.resize(table_words(vars), 0);
  for (auto& w : words_) w &= table_mask(vars);
}

void TruthTable::set(std::size_t assignment, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (assignment & 63);
  if (value) {
    words_[assignment >> 6] |= bit;
  } else {
    words_[assignment >> 6] &= ~bit;
  }
}

void check_tabulation(std::size_t m) {
  if (m > kMaxTabulatedInputs) {
    throw Error(ErrorCode::TooLarge, "cannot tabulate " + std::to_string(m) +
                                         " inputs (limit " +
                                         std::to_string(kMaxTabulatedInputs) + ")");
  }
}

void phi_block(const ExtAopRef& ref, std::size_t m, std::size_t first_word,
               std::span<std::uint64_t> out) {
  check_ref(ref, m);
  check_tabulation(m);
  // Primal: tail alternates And/Or starting with And at t_j; the prefix is a
  // conjunction. The dual exchanges both operators.
  const bool dual = ref.dual;
  const std::uint64_t mask = table_mask(m);
  for (std::size_t w = 0; w < out.size(); ++w) {
    const std::size_t word = first_word + w;
    std::uint64_t v = variable_word(ref.k, word);
    for (std::size_t idx = ref.k; idx-- > ref.j;) {
      const bool use_and = ((idx - ref.j) % 2 == 0) != dual;
      const std::uint64_t t = variable_word(idx, word);
      v = use_and ? (t & v) : (t | v);
    }
    for (std::size_t idx = ref.i; idx < ref.j; idx += 2) {
      const std::uint64_t t = variable_word(idx, word);
      v = dual ? (t | v) : (t & v);
    }
    out[w] = v & mask;
  }
}

TruthTable phi_truth_table(const ExtAopRef& ref, std::size_t m) {
  check_tabulation(m);
  TruthTable table(m);
  phi_block(ref, m, 0, table.words());
  return table;
}

void simulate_block(const Circuit& c, std::span<const NodeId> order,
                    std::size_t first_word, std::span<std::uint64_t> out,
                    std::vector<std::uint64_t>& scratch) {
  const std::size_t width = out.size();
  scratch.resize(c.node_count() * width);
  for (NodeId id : order) {
    const Node& n = c.node(id);
    std::uint64_t* row = scratch.data() + std::size_t{id} * width;
    if (!n.is_gate()) {
      for (std::size_t w = 0; w < width; ++w) row[w] = variable_word(n.input, first_word + w);
      continue;
    }
    const std::uint64_t* first = scratch.data() + std::size_t{n.preds.front()} * width;
    std::copy(first, first + width, row);
    for (std::size_t p = 1; p < n.preds.size(); ++p) {
      const std::uint64_t* other = scratch.data() + std::size_t{n.preds[p]} * width;
      if (n.kind == NodeKind::And) {
        for (std::size_t w = 0; w < width; ++w) row[w] &= other[w];
      } else {
        for (std::size_t w = 0; w < width; ++w) row[w] |= other[w];
      }
    }
  }
  const std::uint64_t* result = scratch.data() + std::size_t{c.output()} * width;
  std::copy(result, result + width, out.begin());
}

TruthTable simulate(const Circuit& c, std::size_t m) {
  check_tabulation(m);
  const auto order = topological_order(c);
  TruthTable table(m);
  std::vector<std::uint64_t> scratch;
  auto words = table.words();
  constexpr std::size_t kBlock = 1024;
  for (std::size_t w = 0; w < words.size(); w += kBlock) {
    const std::size_t n = std::min(kBlock, words.size() - w);
    simulate_block(c, order, w, words.subspan(w, n), scratch);
  }
  for (auto& w : words) w &= table_mask(m);
  return table;
}

}  // namespace aop
