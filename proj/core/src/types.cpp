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

#include "aop/types.hpp"

#include <algorithm>
#include <cmath>

namespace aop {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInstance: return "EmptyInstance";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::NotReachable: return "NotReachable";
    case ErrorCode::Invariant: return "Invariant";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

const char* to_string(GateKind k) { return k == GateKind::And ? "and" : "or"; }

const char* to_string(OutKind k) {
  switch (k) {
    case OutKind::And: return "and";
    case OutKind::Or: return "or";
    default: return "none";
  }
}

AopInstance AopInstance::validate(std::span<const double> arrivals,
                                  Variant variant) {
  if (arrivals.empty()) {
    throw Error(ErrorCode::EmptyInstance, "instance has no inputs");
  }
  AopInstance inst;
  inst.variant_ = variant;
  inst.arrivals_.assign(arrivals.begin(), arrivals.end());
  inst.min_ = arrivals.front();
  inst.max_ = arrivals.front();
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    const double a = arrivals[i];
    if (!std::isfinite(a)) {
      throw Error(ErrorCode::NonFinite,
                  "arrival of input " + std::to_string(i) + " is not finite");
    }
    inst.min_ = std::min(inst.min_, a);
    inst.max_ = std::max(inst.max_, a);
    if (a != std::floor(a)) inst.integral_ = false;
  }
  return inst;
}

AopInstance validate_instance(std::size_t m, std::span<const double> arrivals,
                              Variant variant) {
  if (m == 0) throw Error(ErrorCode::EmptyInstance, "m must be positive");
  if (arrivals.size() != m) {
    throw Error(ErrorCode::Malformed,
                "expected " + std::to_string(m) + " arrivals, got " +
                    std::to_string(arrivals.size()));
  }
  return AopInstance::validate(arrivals, variant);
}

void check_ref(const ExtAopRef& ref, std::size_t m) {
  if (!ref.valid(m)) {
    throw Error(ErrorCode::InvalidIndex,
                "invalid extended And-Or path " + to_string(ref) + " for m=" +
                    std::to_string(m));
  }
}

std::string to_string(const ExtAopRef& ref) {
  return std::string(ref.dual ? "phi*" : "phi") + "(" + std::to_string(ref.i) +
         "," + std::to_string(ref.j) + "," + std::to_string(ref.k) + ")";
}

}  // namespace aop
