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

#include "aop/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aop/truth_table.hpp"
#include "aop/weight.hpp"

namespace aop {

double kraft_lb(const AopInstance& inst) {
  if (inst.integral()) return static_cast<double>(ceil_weight_log2_exact(inst.arrivals()));
  return weight_log2(inst.arrivals());
}

std::size_t min_gates_to_output(std::size_t input, std::size_t m) {
  if (m == 1) return 0;
  if (input == 0 || m == 2) return 1;
  return 2;
}

double input_depth_lb(const AopInstance& inst) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    best = std::max(best, inst.arrival(i) + static_cast<double>(min_gates_to_output(i, inst.size())));
  }
  return best;
}

LowerBoundReport lower_bound(const AopInstance& inst) {
  LowerBoundReport r;
  r.kraft = kraft_lb(inst);
  r.input_depth = input_depth_lb(inst);
  r.combined = std::max(r.kraft, r.input_depth);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const std::size_t gates = min_gates_to_output(i, inst.size());
    r.details.push_back({i, inst.arrival(i), gates, inst.arrival(i) + static_cast<double>(gates)});
  }
  return r;
}

bool oracle_eligible(const AopInstance& inst) {
  return inst.size() <= kOracleMaxInputs && inst.integral() &&
         inst.spread() <= kOracleMaxSpread;
}

namespace {

/// Open-addressing map from 32-bit truth tables to arrival times.
class FunctionTable {
 public:
  FunctionTable() : keys_(kCapacity, kEmpty), values_(kCapacity, 0) {}

  /// Returns false if f is already present.
  bool insert(std::uint32_t f, int arrival) {
    std::size_t h = hash(f);
    while (keys_[h] != kEmpty) {
      if (keys_[h] == f) return false;
      h = (h + 1) & (kCapacity - 1);
    }
    if (++size_ > kOracleMaxFunctions || size_ * 2 > kCapacity) {
      throw Error(ErrorCode::InstanceTooLarge, "oracle function set exceeded its cap");
    }
    keys_[h] = f;
    values_[h] = arrival;
    return true;
  }

  bool contains(std::uint32_t f) const {
    std::size_t h = hash(f);
    while (keys_[h] != kEmpty) {
      if (keys_[h] == f) return true;
      h = (h + 1) & (kCapacity - 1);
    }
    return false;
  }

 private:
  // Constants and the all-ones/all-zeros tables never arise from And/Or of
  // non-constant inputs, so 0 can mark empty slots.
  static constexpr std::uint32_t kEmpty = 0;
  static constexpr std::size_t kCapacity = std::size_t{1} << 15;

  static std::size_t hash(std::uint32_t f) {
    return (std::size_t{f} * 0x9E3779B1u >> 7) & (kCapacity - 1);
  }

  std::vector<std::uint32_t> keys_;
  std::vector<int> values_;
  std::size_t size_ = 0;
};

}  // namespace

double exact_optimum(const AopInstance& inst) {
  if (!oracle_eligible(inst)) {
    throw Error(ErrorCode::InstanceTooLarge,
                "exact optimum needs m <= 5 and integral arrivals with spread <= 16");
  }
  const std::size_t m = inst.size();
  const ExtAopRef root{0, 0, static_cast<std::uint32_t>(m - 1), inst.variant() == Variant::Dual};
  const auto mask = static_cast<std::uint32_t>(table_mask(m));
  const auto target = static_cast<std::uint32_t>(phi_truth_table(root, m).words()[0]);

  const int base = static_cast<int>(inst.min_arrival());
  std::vector<std::vector<std::uint32_t>> by_time;
  auto level = [&](int t) -> std::vector<std::uint32_t>& {
    const auto idx = static_cast<std::size_t>(t - base);
    if (by_time.size() <= idx) by_time.resize(idx + 1);
    return by_time[idx];
  };

  FunctionTable known;
  std::vector<std::uint32_t> available;  // every function with arrival < current time
  for (std::size_t i = 0; i < m; ++i) {
    const auto f = static_cast<std::uint32_t>(variable_word(i, 0)) & mask;
    const int t = static_cast<int>(inst.arrival(i));
    if (known.insert(f, t)) level(t).push_back(f);
  }
  if (m == 1) return inst.arrival(0);

  // Time t: a gate fed by functions arriving at most t-1 outputs at t. Only
  // pairs involving a function that arrived exactly at t-1 are new.
  for (int t = base + 1;; ++t) {
    const std::vector<std::uint32_t> fresh = level(t - 1);
    for (std::uint32_t f : fresh) available.push_back(f);
    std::vector<std::uint32_t> produced;
    for (std::uint32_t f : fresh) {
      for (std::uint32_t h : available) {
        for (std::uint32_t v : {f & h, f | h}) {
          if (v == 0 || v == mask) continue;
          if (known.insert(v, t)) produced.push_back(v);
        }
      }
    }
    auto& slot = level(t);
    slot.insert(slot.end(), produced.begin(), produced.end());
    if (known.contains(target)) {
      // The target may already have been an input; inputs are handled by the
      // m == 1 case, so it first appears as a gate here.
      return static_cast<double>(t);
    }
    if (t - base > static_cast<int>(kOracleMaxSpread) + 64) {
      throw Error(ErrorCode::Invariant, "oracle did not converge");
    }
  }
}

}  // namespace aop
