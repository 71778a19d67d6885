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

// Weights W = sum_i 2^{a_i} of arrival-time multisets.

#pragma once

#include <cstdint>
#include <span>

namespace aop {

/// log2(sum_i 2^{a_i}) with the largest exponent factored out. Throws
/// Error{EmptyInstance} on an empty sequence.
double weight_log2(std::span<const double> arrivals);

/// Exact ceil(log2(sum_i 2^{a_i})) for integral exponents of any spread,
/// computed with a binary carry counter. Throws Error{Malformed} if an
/// exponent is not an integer.
std::int64_t ceil_weight_log2_exact(std::span<const double> arrivals);

/// Linear-domain weights relative to a fixed reference exponent. When all
/// exponents that can occur are integers inside a window of 2^52 the
/// scaled sums are exact doubles and comparisons use no tolerance.
class WeightScale {
 public:
  WeightScale(double reference, bool exact)
      : reference_(reference), exact_(exact) {}

  double reference() const noexcept { return reference_; }
  bool exact() const noexcept { return exact_; }

  double scaled(double exponent) const;
  double to_log2(double scaled_weight) const;

  /// a is strictly lighter than b beyond the comparison margin.
  bool lighter(double a, double b) const noexcept;
  /// a is at most b up to the comparison margin.
  bool not_heavier(double a, double b) const noexcept;

  /// Relative margin used for non-exact scales; equals an absolute margin
  /// of 1e-9 on log2 weights.
  static constexpr double kRelativeMargin = 6.931471805599453e-10;

 private:
  double reference_;
  bool exact_;
};

}  // namespace aop
