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

// Domain types shared by every module: instances, extended And-Or path
// references, gate kinds and the library error type.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace aop {

enum class ErrorCode {
  EmptyInstance,
  NonFinite,
  InvalidIndex,
  TooLarge,
  InstanceTooLarge,
  Malformed,
  Parse,
  Unsupported,
  NotReachable,
  Invariant,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class GateKind : std::uint8_t { And, Or };

constexpr GateKind flip(GateKind k) {
  return k == GateKind::And ? GateKind::Or : GateKind::And;
}

/// Kind of the output gate of an undetermined circuit. None means the
/// circuit is a single signal without an output gate.
enum class OutKind : std::uint8_t { And, Or, None };

constexpr OutKind to_out_kind(GateKind k) {
  return k == GateKind::And ? OutKind::And : OutKind::Or;
}

constexpr OutKind flip(OutKind k) {
  switch (k) {
    case OutKind::And: return OutKind::Or;
    case OutKind::Or: return OutKind::And;
    default: return OutKind::None;
  }
}

const char* to_string(GateKind k);
const char* to_string(OutKind k);

/// Primal asks for g(t) = t0 & (t1 | (t2 & ...)), Dual for g*(t).
enum class Variant : std::uint8_t { Primal, Dual };

/// A checked And-Or path instance. Arrival times are in gate-delay units.
class AopInstance {
 public:
  /// Throws Error{EmptyInstance} for no inputs and Error{NonFinite} for
  /// NaN or infinite arrivals.
  static AopInstance validate(std::span<const double> arrivals,
                              Variant variant = Variant::Primal);

  std::size_t size() const noexcept { return arrivals_.size(); }
  std::span<const double> arrivals() const noexcept { return arrivals_; }
  double arrival(std::size_t i) const { return arrivals_.at(i); }
  Variant variant() const noexcept { return variant_; }

  /// True iff every arrival is an integer.
  bool integral() const noexcept { return integral_; }
  double min_arrival() const noexcept { return min_; }
  double max_arrival() const noexcept { return max_; }
  double spread() const noexcept { return max_ - min_; }

  AopInstance with_variant(Variant v) const {
    AopInstance copy = *this;
    copy.variant_ = v;
    return copy;
  }

 private:
  AopInstance() = default;

  std::vector<double> arrivals_;
  Variant variant_ = Variant::Primal;
  bool integral_ = true;
  double min_ = 0.0;
  double max_ = 0.0;
};

/// Checks the declared input count against the arrival list.
AopInstance validate_instance(std::size_t m, std::span<const double> arrivals,
                              Variant variant);

/// Reference to the extended And-Or path
///   phi_{i,j,k}  = t_i & t_{i+2} & ... & t_{j-2} & g(t_j, ..., t_k)
/// or, with dual set, to its dual phi*_{i,j,k}.
struct ExtAopRef {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::uint32_t k = 0;
  bool dual = false;

  /// Number of distinct inputs the function depends on.
  std::size_t input_count() const noexcept {
    return (j - i) / 2 + (k - j + 1);
  }

  bool valid(std::size_t m) const noexcept {
    return i <= j && j <= k && k < m && (j - i) % 2 == 0;
  }

  /// True when the function is a plain multi-input And (Or for duals).
  bool is_conjunction() const noexcept { return k <= j + 1; }

  ExtAopRef dualized() const { return {i, j, k, !dual}; }

  friend bool operator==(const ExtAopRef&, const ExtAopRef&) = default;
};

/// Throws Error{InvalidIndex} unless ref.valid(m).
void check_ref(const ExtAopRef& ref, std::size_t m);

std::string to_string(const ExtAopRef& ref);

}  // namespace aop
