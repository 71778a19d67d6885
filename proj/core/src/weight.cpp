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

#include "aop/weight.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "aop/types.hpp"

namespace aop {

double weight_log2(std::span<const double> arrivals) {
  if (arrivals.empty()) {
    throw Error(ErrorCode::EmptyInstance, "weight of an empty sequence");
  }
  const double top = *std::max_element(arrivals.begin(), arrivals.end());
  double sum = 0.0;
  for (double a : arrivals) sum += std::exp2(a - top);
  return top + std::log2(sum);
}

std::int64_t ceil_weight_log2_exact(std::span<const double> arrivals) {
  if (arrivals.empty()) {
    throw Error(ErrorCode::EmptyInstance, "weight of an empty sequence");
  }
  std::vector<std::int64_t> exps;
  exps.reserve(arrivals.size());
  for (double a : arrivals) {
    if (a != std::floor(a) || !std::isfinite(a)) {
      throw Error(ErrorCode::Malformed, "exact weight needs integral arrivals");
    }
    exps.push_back(static_cast<std::int64_t>(a));
  }
  std::sort(exps.begin(), exps.end());

  // Add the powers of two bit by bit from the lowest exponent upwards.
  std::size_t ones = 0;
  std::int64_t highest = exps.front();
  std::uint64_t carry = 0;
  std::int64_t e = exps.front();
  std::size_t next = 0;
  while (next < exps.size() || carry != 0) {
    if (carry == 0 && exps[next] > e) e = exps[next];
    std::uint64_t count = carry;
    while (next < exps.size() && exps[next] == e) {
      ++count;
      ++next;
    }
    if (count & 1u) {
      ++ones;
      highest = e;
    }
    carry = count >> 1;
    ++e;
  }
  return ones == 1 ? highest : highest + 1;
}

double WeightScale::scaled(double exponent) const {
  return std::exp2(exponent - reference_);
}

double WeightScale::to_log2(double scaled_weight) const {
  return reference_ + std::log2(scaled_weight);
}

bool WeightScale::lighter(double a, double b) const noexcept {
  if (exact_) return a < b;
  return a < b * (1.0 - kRelativeMargin);
}

bool WeightScale::not_heavier(double a, double b) const noexcept {
  if (exact_) return a <= b;
  return a <= b * (1.0 + kRelativeMargin);
}

}  // namespace aop
