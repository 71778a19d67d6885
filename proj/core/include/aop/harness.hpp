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

// Benchmark harness: seeded instance generation, per-instance comparison of
// the optimizer against baselines and bounds, CSV rows and per-m summaries,
// DOT output and random toy netlists.
//
// Instance (seed, m, idx) is drawn from a splitmix64 stream started at
// mix(seed ^ mix(m * 0x9e3779b97f4a7c15 + idx)); every arrival is an
// integer drawn uniformly from [0, m] by rejection sampling.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aop/baselines.hpp"
#include "aop/circuit.hpp"
#include "aop/normalize.hpp"
#include "aop/optimizer.hpp"
#include "aop/types.hpp"

namespace aop {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next();
  /// Uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x);

struct BenchConfig {
  std::size_t m_min = 4;
  std::size_t m_max = 28;
  std::size_t count = 1000;
  std::size_t m_ceiling = 28;
  std::uint64_t seed = 1;
  std::vector<BaselineFamily> baselines;
  /// Also run DelaySize mode.
  bool size_mode = true;
  /// Run the exact oracle on eligible instances.
  bool oracle = true;
  /// Simulate the optimized circuit up to this many inputs.
  std::size_t verify_max_m = 12;
  /// Wall times in the CSV. Off gives byte-identical reruns.
  bool record_times = true;
  std::string csv_path;
  std::string summary_path;

  /// Throws Error{Malformed}.
  void validate() const;
};

AopInstance generate_instance(std::uint64_t seed, std::size_t m, std::size_t idx);
/// FNV-1a over size, variant and arrival bit patterns.
std::uint64_t instance_hash(const AopInstance& inst);
/// All instances of the configuration, ordered by (m, idx).
std::vector<AopInstance> gen_instances(const BenchConfig& cfg);

struct AlgoRun {
  double delay = 0.0;
  std::size_t size = 0;
  double time_us = 0.0;
};

struct BenchRecord {
  std::size_t m = 0;
  std::size_t idx = 0;
  std::uint64_t hash = 0;
  double w_log2 = 0.0;
  double lb = 0.0;
  AlgoRun dp;
  std::optional<AlgoRun> dp_size;
  std::vector<std::pair<BaselineFamily, AlgoRun>> baselines;
  std::optional<double> oracle;

  /// Minimum delay over the baselines (ties: smallest size).
  std::optional<AlgoRun> best_baseline() const;
};

/// Runs every algorithm on one instance. Throws Error{Invariant} if a
/// delay undercuts the lower bound or a simulated circuit is wrong.
BenchRecord run_instance(const AopInstance& inst, std::size_t idx, const BenchConfig& cfg);

std::string csv_header(const BenchConfig& cfg);
std::string csv_row(const BenchRecord& r, const BenchConfig& cfg);
/// Parses what csv_header()/csv_row() wrote. Throws Error{Parse}.
std::vector<BenchRecord> parse_bench_csv(const std::string& text);

/// Upper bound on the optimum delay for integral instances, m >= 3.
double delay_upper_bound(double w_log2, std::size_t m);

struct SliceSummary {
  std::size_t m = 0;
  std::size_t count = 0;
  /// best baseline delay - dp delay; empty without baselines.
  std::map<long long, std::size_t> gain_histogram;
  double gain_median = 0.0;
  double gain_mean = 0.0;
  std::size_t dominance_violations = 0;
  std::size_t lb_matches = 0;
  std::size_t bound_violations = 0;
  std::size_t oracle_eligible = 0;
  std::size_t oracle_matches = 0;
  std::size_t oracle_within_one = 0;
  std::size_t size_mode_delay_mismatches = 0;
  std::size_t size_mode_larger = 0;
  /// Mean of dp size / best baseline size - 1 (DelaySize size if present).
  double size_overhead_mean = 0.0;
  double dp_time_mean_us = 0.0;

  bool size_overhead_flagged() const { return size_overhead_mean > 0.30; }
};

std::vector<SliceSummary> summarize(const std::vector<BenchRecord>& records);
std::string format_summary(const std::vector<SliceSummary>& slices);

struct BenchOutcome {
  std::vector<BenchRecord> records;
  std::vector<SliceSummary> summary;
};

/// Runs the whole configuration; writes csv_path / summary_path if set.
/// `progress` is called after every record.
BenchOutcome run_bench(const BenchConfig& cfg,
                       const std::function<void(const BenchRecord&)>& progress = {});

/// Deterministic DOT digraph: inputs ranked first, gates labeled with kind
/// and arrival.
std::string emit_dot(const Circuit& c);

struct ToyNetlist {
  Netlist netlist;
  std::string critical_input;
};

/// Random placed path of mixed cell types with at most `max_inputs`
/// primary inputs (>= 2). Side pins are primary inputs or small gates.
ToyNetlist random_toy_netlist(std::uint64_t seed, std::size_t max_inputs);

}  // namespace aop
