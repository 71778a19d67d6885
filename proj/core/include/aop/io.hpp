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

// Text formats. All files are JSON documents:
//
// instance:  {"m": 3, "arrivals": [0, 20, 0], "variant": "g"}
//            variant is "g" (primal) or "g_star" (dual).
// circuit:   {"nodes": [{"id": 0, "kind": "input", "input": 0, "arrival": 0},
//                       {"id": 3, "kind": "and", "preds": [0, 1]}, ...],
//             "output": 4}
//            kind is "input", "and" or "or"; "input" defaults to the id.
// netlist:   {"inputs": [{"id": "a", "arrival": 100, "x": 0, "y": 0}],
//             "cells": [{"id": "g1", "type": "NAND2", "pins": ["a", "b"],
//                        "x": 10, "y": 5}],
//             "output": "g1"}

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "aop/bounds.hpp"
#include "aop/circuit.hpp"
#include "aop/normalize.hpp"
#include "aop/optimizer.hpp"
#include "aop/types.hpp"
#include "aop/verify.hpp"

namespace aop {

/// Whole file as a string; throws Error{Io}.
std::string read_file(const std::string& path);
/// Throws Error{Io}.
void write_file(const std::string& path, std::string_view contents);

AopInstance parse_instance(std::string_view text);
std::string format_instance(const AopInstance& inst);

/// Unknown predecessor ids are kept as out-of-range ids so that
/// check_structure() can report them.
Circuit parse_circuit(std::string_view text);
std::string format_circuit(const Circuit& c);

Netlist parse_netlist(std::string_view text);
std::string format_netlist(const Netlist& n);

/// Instance plus input bindings, output location and polarity.
std::string format_normalization(const NormalizationResult& r);

std::string format_lower_bound(const LowerBoundReport& r);
std::string format_verification(const VerificationReport& r);
std::string format_result_summary(const OptimizationResult& r);

}  // namespace aop
