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

// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// if any fails. Thresholds are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "aop/bounds.hpp"
#include "aop/harness.hpp"
#include "aop/huffman.hpp"
#include "aop/normalize.hpp"
#include "aop/optimizer.hpp"
#include "aop/verify.hpp"
#include "aop/weight.hpp"
#include "test_support.hpp"

using namespace aop;

namespace {

constexpr double kEps = 1e-9;

// 1
constexpr std::size_t kCorrectnessMinM = 2;
constexpr std::size_t kCorrectnessMaxM = 12;
constexpr std::size_t kCorrectnessPerM = 200;
constexpr double kCorrectnessBudgetS = 60.0;
constexpr std::uint64_t kCorrectnessSeed = 20260101;
// 2, 3, 4, 6, 7, 8
constexpr std::size_t kBenchMinM = 4;
constexpr std::size_t kBenchMaxM = 28;
constexpr std::size_t kBenchPerM = 1000;
constexpr std::uint64_t kBenchSeed = 1;
constexpr double kBoundSlack = 4.3;
constexpr std::size_t kMinOracleInstances = 2000;
constexpr double kMinOracleMatchRate = 0.90;
constexpr double kMaxOracleGap = 1.0;
constexpr std::size_t kGainM = 18;
constexpr double kMinMedianGain = 1.0;
constexpr double kSizeOverheadFlag = 0.30;
// 5
constexpr std::size_t kHuffmanSets = 10000;
constexpr std::size_t kHuffmanMaxSize = 64;
constexpr std::size_t kHuffmanExhaustiveMax = 6;
// 9
constexpr double kMaxSecondsAt28 = 1.0;
constexpr double kMaxScaling = 32.0 * 2.0;
// 10
constexpr std::size_t kToyNetlists = 50;
constexpr std::size_t kToyMaxInputs = 12;

int failures = 0;
std::map<int, std::string> results;

void report(int id, const char* name, bool pass, const std::string& detail) {
  char head[64];
  std::snprintf(head, sizeof head, "[%s] %2d %-26s ", pass ? "PASS" : "FAIL", id, name);
  results[id] = head + detail;
  std::printf("%s\n", results[id].c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

double exhaustive_min(std::vector<double> a) {
  if (a.size() == 1) return a[0];
  double best = INFINITY;
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = x + 1; y < a.size(); ++y) {
      std::vector<double> next;
      for (std::size_t z = 0; z < a.size(); ++z) {
        if (z != x && z != y) next.push_back(a[z]);
      }
      next.push_back(std::max(a[x], a[y]) + 1.0);
      best = std::min(best, exhaustive_min(next));
    }
  }
  return best;
}

void functional_correctness() {
  const auto start = std::chrono::steady_clock::now();
  std::size_t runs = 0;
  std::size_t bad = 0;
  for (std::size_t m = kCorrectnessMinM; m <= kCorrectnessMaxM; ++m) {
    for (std::size_t idx = 0; idx < kCorrectnessPerM; ++idx) {
      const AopInstance base = generate_instance(kCorrectnessSeed, m, idx);
      const AopInstance inst = idx % 4 == 3 ? base.with_variant(Variant::Dual) : base;
      const OptimizationResult r = optimize(inst);
      const VerificationReport rep = verify(r.circuit, testing::root_of(inst), m);
      ++runs;
      if (!rep.structural_ok || !rep.equivalent) ++bad;
    }
  }
  const double secs = seconds_since(start);
  report(1, "functional correctness", bad == 0 && secs < kCorrectnessBudgetS,
         fmt("%zu instances, %zu failures, %.2f s (budget %.0f s)", runs, bad, secs, kCorrectnessBudgetS));
}

void huffman_optimality() {
  std::mt19937_64 rng(5);
  std::size_t bad = 0;
  std::size_t exhaustive = 0;
  std::size_t exhaustive_bad = 0;
  for (std::size_t s = 0; s < kHuffmanSets; ++s) {
    const std::size_t n = 1 + rng() % kHuffmanMaxSize;
    const std::vector<double> a = testing::random_integral(rng, n, static_cast<int>(rng() % 41));
    const double d = huffman_delay(a);
    if (d != static_cast<double>(testing::exact_ceil_log2(a))) ++bad;
    if (n <= kHuffmanExhaustiveMax) {
      ++exhaustive;
      if (d != exhaustive_min(a)) ++exhaustive_bad;
    }
  }
  report(5, "huffman optimality", bad == 0 && exhaustive_bad == 0 && exhaustive > 0,
         fmt("%zu sets: %zu off the Kraft ceiling; %zu small sets: %zu above the exhaustive optimum",
             kHuffmanSets, bad, exhaustive, exhaustive_bad));
}

void bench_criteria() {
  BenchConfig cfg;
  cfg.m_min = kBenchMinM;
  cfg.m_max = kBenchMaxM;
  cfg.count = kBenchPerM;
  cfg.seed = kBenchSeed;
  cfg.baselines = {BaselineFamily::R2006, BaselineFamily::HS2017, BaselineFamily::ImmediateExt};
  cfg.size_mode = true;
  cfg.oracle = true;
  cfg.verify_max_m = 12;

  const auto start = std::chrono::steady_clock::now();
  std::vector<BenchRecord> records;
  std::size_t invariant_errors = 0;
  std::string first_error;
  for (std::size_t m = cfg.m_min; m <= cfg.m_max; ++m) {
    for (std::size_t idx = 0; idx < cfg.count; ++idx) {
      try {
        records.push_back(run_instance(generate_instance(cfg.seed, m, idx), idx, cfg));
      } catch (const Error& e) {
        if (invariant_errors++ == 0) first_error = e.what();
      }
    }
  }
  const double secs = seconds_since(start);
  std::printf("       bench: %zu instances (m=%zu..%zu, seed %llu) in %.1f s\n", records.size(), cfg.m_min,
              cfg.m_max, static_cast<unsigned long long>(cfg.seed), secs);
  if (invariant_errors) std::printf("       bench: %zu instances aborted, first: %s\n", invariant_errors, first_error.c_str());

  // 2
  std::size_t checked = 0;
  std::size_t bound_bad = 0;
  double worst_margin = -INFINITY;
  for (const BenchRecord& r : records) {
    if (r.m < 3) continue;
    ++checked;
    const double l = std::log2(static_cast<double>(r.m));
    const double bound = r.w_log2 + std::log2(l) + std::log2(std::log2(l)) + kBoundSlack;
    worst_margin = std::max(worst_margin, r.dp.delay - bound);
    if (r.dp.delay > bound + kEps) ++bound_bad;
  }
  report(2, "delay upper bound", bound_bad == 0 && invariant_errors == 0 && checked == 25000,
         fmt("%zu instances, %zu violations, largest delay - bound %.3f", checked, bound_bad, worst_margin));

  // 3
  std::size_t dom_bad = 0;
  std::size_t strictly_better = 0;
  for (const BenchRecord& r : records) {
    bool all_ge = true;
    for (const auto& [family, run] : r.baselines) {
      if (r.dp.delay > run.delay + kEps) ++dom_bad;
      all_ge &= run.delay > r.dp.delay + kEps;
    }
    strictly_better += all_ge;
  }
  report(3, "dominance over baselines", dom_bad == 0 && invariant_errors == 0,
         fmt("%zu instances x 3 baselines, %zu violations; dp strictly best on %zu", records.size(), dom_bad,
             strictly_better));

  // 4
  std::size_t lb_bad = 0;
  std::size_t eligible = 0;
  std::size_t sandwich_bad = 0;
  std::size_t lb_tight = 0;
  for (const BenchRecord& r : records) {
    if (r.lb > r.dp.delay + kEps) ++lb_bad;
    if (std::abs(r.lb - r.dp.delay) < kEps) ++lb_tight;
    if (r.oracle) {
      ++eligible;
      if (!(r.lb <= *r.oracle + kEps && *r.oracle <= r.dp.delay + kEps)) ++sandwich_bad;
    }
  }
  report(4, "lower-bound compliance",
         lb_bad == 0 && sandwich_bad == 0 && eligible >= kMinOracleInstances && invariant_errors == 0,
         fmt("%zu lb violations, dp = lb on %zu; %zu oracle instances, %zu out of order", lb_bad, lb_tight,
             eligible, sandwich_bad));

  // 6
  std::size_t match = 0;
  std::size_t within = 0;
  for (const BenchRecord& r : records) {
    if (!r.oracle) continue;
    const double gap = r.dp.delay - *r.oracle;
    if (std::abs(gap) < kEps) ++match;
    if (gap <= kMaxOracleGap + kEps) ++within;
  }
  const double rate = eligible ? static_cast<double>(match) / static_cast<double>(eligible) : 0.0;
  report(6, "oracle optimality rate", eligible >= kMinOracleInstances && rate >= kMinOracleMatchRate && within == eligible,
         fmt("dp optimal on %zu/%zu (%.2f%%, need %.0f%%), within %.0f on %zu", match, eligible, 100 * rate,
             100 * kMinOracleMatchRate, kMaxOracleGap, within));

  const std::vector<SliceSummary> summary = summarize(records);

  // 7
  const auto slice = std::find_if(summary.begin(), summary.end(), [](const SliceSummary& s) { return s.m == kGainM; });
  if (slice == summary.end()) {
    report(7, "delay gain trend", false, "no slice");
  } else {
    std::string hist;
    for (const auto& [gain, n] : slice->gain_histogram) hist += fmt(" %lld:%zu", gain, n);
    report(7, "delay gain trend", slice->gain_median >= kMinMedianGain && slice->count == kBenchPerM,
           fmt("m=%zu: median gain %.2f (need %.0f), mean %.3f, histogram%s", kGainM, slice->gain_median,
               kMinMedianGain, slice->gain_mean, hist.c_str()));
  }

  // 8
  std::size_t delay_diff = 0;
  std::size_t larger = 0;
  std::size_t smaller = 0;
  for (const BenchRecord& r : records) {
    if (!r.dp_size) {
      ++delay_diff;
      continue;
    }
    if (std::abs(r.dp_size->delay - r.dp.delay) > kEps) ++delay_diff;
    if (r.dp_size->size > r.dp.size) ++larger;
    if (r.dp_size->size < r.dp.size) ++smaller;
  }
  std::string flagged;
  double worst = -INFINITY;
  std::size_t worst_m = 0;
  for (const SliceSummary& s : summary) {
    if (s.size_overhead_mean > kSizeOverheadFlag) flagged += fmt(" %zu", s.m);
    if (s.size_overhead_mean > worst) {
      worst = s.size_overhead_mean;
      worst_m = s.m;
    }
  }
  report(8, "size mode", delay_diff == 0 && larger == 0 && invariant_errors == 0,
         fmt("%zu delay changes, %zu larger, %zu smaller; size overhead vs best baseline at most %.1f%% (m=%zu)%s",
             delay_diff, larger, smaller, 100 * worst, worst_m,
             flagged.empty() ? "" : (", above 30% at m =" + flagged).c_str()));
  for (const SliceSummary& s : summary) {
    std::printf("       m=%2zu size overhead %+6.2f%%%s\n", s.m, 100 * s.size_overhead_mean,
                s.size_overhead_mean > kSizeOverheadFlag ? "  FLAG" : "");
  }
}

double median_optimize_seconds(std::size_t m, std::size_t runs) {
  std::vector<double> t;
  for (std::size_t i = 0; i < runs; ++i) {
    const AopInstance inst = generate_instance(9, m, i);
    const auto start = std::chrono::steady_clock::now();
    const OptimizationResult r = optimize(inst);
    t.push_back(seconds_since(start));
    if (r.size == 0 && m > 1) t.back() = INFINITY;
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

void performance() {
  double slowest28 = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    const auto start = std::chrono::steady_clock::now();
    optimize(generate_instance(10, 28, i));
    slowest28 = std::max(slowest28, seconds_since(start));
  }
  const double t28 = median_optimize_seconds(28, 21);
  const double t14 = median_optimize_seconds(14, 101);
  const double ratio = t28 / t14;
  report(9, "performance", slowest28 < kMaxSecondsAt28 && ratio <= kMaxScaling,
         fmt("slowest m=28 call %.1f ms (limit %.0f ms); median m=28 %.2f ms, m=14 %.3f ms, ratio %.1f (limit %.0f)",
             1e3 * slowest28, 1e3 * kMaxSecondsAt28, 1e3 * t28, 1e3 * t14, ratio, kMaxScaling));
}

void normalization_round_trip() {
  std::size_t bad = 0;
  std::size_t inputs = 0;
  for (std::size_t s = 0; s < kToyNetlists; ++s) {
    const ToyNetlist t = random_toy_netlist(1000 + s, kToyMaxInputs);
    inputs = std::max(inputs, t.netlist.inputs.size());
    try {
      const NormalizationResult r = normalize(t.netlist, t.critical_input, DelayModel{10.0, 0.25});
      if (!normalization_preserves_function(r, t.netlist)) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  report(10, "normalization round trip", bad == 0,
         fmt("%zu netlists (up to %zu inputs), %zu failures", kToyNetlists, inputs, bad));
}

}  // namespace

int main() {
  functional_correctness();
  huffman_optimality();
  performance();
  normalization_round_trip();
  bench_criteria();
  std::printf("\n");
  for (const auto& [id, line] : results) std::printf("%s\n", line.c_str());
  std::printf("%s: %d of %zu criteria failed\n", failures ? "FAILED" : "OK", failures, results.size());
  return failures ? 1 : 0;
}
