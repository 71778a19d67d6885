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

#include "aop/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "aop/bounds.hpp"
#include "aop/io.hpp"
#include "aop/verify.hpp"
#include "aop/weight.hpp"

namespace aop {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t v = next();
    if (v < limit) return v % bound;
  }
}

void BenchConfig::validate() const {
  if (m_min < 1 || m_min > m_max) throw Error(ErrorCode::Malformed, "need 1 <= m-min <= m-max");
  if (m_max > m_ceiling) {
    throw Error(ErrorCode::Malformed,
                "m-max " + std::to_string(m_max) + " above ceiling " + std::to_string(m_ceiling));
  }
  if (count < 1) throw Error(ErrorCode::Malformed, "count must be at least 1");
}

AopInstance generate_instance(std::uint64_t seed, std::size_t m, std::size_t idx) {
  SplitMix64 rng(mix64(seed ^ mix64(m * 0x9e3779b97f4a7c15ULL + idx)));
  std::vector<double> arrivals(m);
  for (double& a : arrivals) a = static_cast<double>(rng.below(m + 1));
  return AopInstance::validate(arrivals, Variant::Primal);
}

std::uint64_t instance_hash(const AopInstance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  feed(inst.size());
  feed(inst.variant() == Variant::Primal ? 0 : 1);
  for (double a : inst.arrivals()) {
    std::uint64_t bits;
    std::memcpy(&bits, &a, sizeof bits);
    feed(bits);
  }
  return h;
}

std::vector<AopInstance> gen_instances(const BenchConfig& cfg) {
  cfg.validate();
  std::vector<AopInstance> out;
  out.reserve((cfg.m_max - cfg.m_min + 1) * cfg.count);
  for (std::size_t m = cfg.m_min; m <= cfg.m_max; ++m) {
    for (std::size_t idx = 0; idx < cfg.count; ++idx) out.push_back(generate_instance(cfg.seed, m, idx));
  }
  return out;
}

std::optional<AlgoRun> BenchRecord::best_baseline() const {
  std::optional<AlgoRun> best;
  for (const auto& [family, run] : baselines) {
    if (!best || run.delay < best->delay || (run.delay == best->delay && run.size < best->size)) {
      best = run;
    }
  }
  return best;
}

namespace {

constexpr double kEps = 1e-9;

using Clock = std::chrono::steady_clock;

double micros_since(Clock::time_point start) {
  return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

void check_circuit(const Circuit& c, const AopInstance& inst, const char* who) {
  const ExtAopRef root{0, 0, static_cast<std::uint32_t>(inst.size() - 1),
                       inst.variant() == Variant::Dual};
  const VerificationReport rep = verify(c, root, inst.size());
  if (!rep.structural_ok || !rep.equivalent) {
    throw Error(ErrorCode::Invariant, std::string(who) + " circuit is wrong for " + format_instance(inst));
  }
}

void check_not_below(double delay, double bound, const char* who, const char* what) {
  if (delay < bound - kEps) {
    throw Error(ErrorCode::Invariant, std::string(who) + " delay " + std::to_string(delay) +
                                          " below " + what + " " + std::to_string(bound));
  }
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BenchRecord run_instance(const AopInstance& inst, std::size_t idx, const BenchConfig& cfg) {
  BenchRecord r;
  r.m = inst.size();
  r.idx = idx;
  r.hash = instance_hash(inst);
  r.w_log2 = weight_log2(inst.arrivals());
  r.lb = lower_bound(inst).combined;
  const bool simulate = inst.size() <= cfg.verify_max_m;

  auto start = Clock::now();
  const OptimizationResult dp = optimize(inst, Mode::Delay);
  r.dp = AlgoRun{dp.delay, dp.size, micros_since(start)};
  if (simulate) check_circuit(dp.circuit, inst, "dp");
  check_not_below(dp.delay, r.lb, "dp", "lower bound");

  if (cfg.size_mode) {
    start = Clock::now();
    const OptimizationResult ds = optimize(inst, Mode::DelaySize);
    r.dp_size = AlgoRun{ds.delay, ds.size, micros_since(start)};
    if (simulate) check_circuit(ds.circuit, inst, "dp size mode");
    check_not_below(ds.delay, r.lb, "dp size mode", "lower bound");
  }

  for (BaselineFamily family : cfg.baselines) {
    start = Clock::now();
    const OptimizationResult b = optimize_baseline(inst, family);
    r.baselines.emplace_back(family, AlgoRun{b.delay, b.size, micros_since(start)});
    if (simulate) check_circuit(b.circuit, inst, to_string(family));
    check_not_below(b.delay, r.lb, to_string(family), "lower bound");
  }

  if (cfg.oracle && oracle_eligible(inst)) {
    const double opt = exact_optimum(inst);
    check_not_below(opt, r.lb, "oracle", "lower bound");
    check_not_below(dp.delay, opt, "dp", "exact optimum");
    r.oracle = opt;
  }
  return r;
}

std::string csv_header(const BenchConfig& cfg) {
  std::string h = "m,idx,hash,W_log2,lb,dp_delay,dp_size";
  if (cfg.size_mode) h += ",dpsize_delay,dpsize_size";
  for (BaselineFamily f : cfg.baselines) {
    h += std::string(",") + to_string(f) + "_delay," + to_string(f) + "_size";
  }
  h += ",oracle_delay";
  if (cfg.record_times) {
    h += ",dp_time_us";
    if (cfg.size_mode) h += ",dpsize_time_us";
    for (BaselineFamily f : cfg.baselines) h += std::string(",") + to_string(f) + "_time_us";
  }
  return h;
}

std::string csv_row(const BenchRecord& r, const BenchConfig& cfg) {
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(r.hash));
  std::string s = std::to_string(r.m) + "," + std::to_string(r.idx) + "," + hash + "," +
                  fixed(r.w_log2, 9) + "," + num(r.lb) + "," + num(r.dp.delay) + "," +
                  std::to_string(r.dp.size);
  if (cfg.size_mode) {
    if (!r.dp_size) throw Error(ErrorCode::Invariant, "record lacks size-mode result");
    s += "," + num(r.dp_size->delay) + "," + std::to_string(r.dp_size->size);
  }
  if (r.baselines.size() != cfg.baselines.size()) {
    throw Error(ErrorCode::Invariant, "record baselines do not match configuration");
  }
  for (const auto& [family, run] : r.baselines) s += "," + num(run.delay) + "," + std::to_string(run.size);
  s += ",";
  if (r.oracle) s += num(*r.oracle);
  if (cfg.record_times) {
    s += "," + fixed(r.dp.time_us, 1);
    if (cfg.size_mode) s += "," + fixed(r.dp_size->time_us, 1);
    for (const auto& [family, run] : r.baselines) s += "," + fixed(run.time_us, 1);
  }
  return s;
}

std::vector<BenchRecord> parse_bench_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "empty CSV");
  const std::vector<std::string> header = split_line(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* required : {"m", "idx", "hash", "W_log2", "lb", "dp_delay", "dp_size", "oracle_delay"}) {
    if (!col.count(required)) throw Error(ErrorCode::Parse, std::string("CSV lacks column ") + required);
  }
  std::vector<BaselineFamily> families;
  for (const std::string& h : header) {
    if (ends_with(h, "_delay") && h != "dp_delay" && h != "dpsize_delay" && h != "oracle_delay") {
      families.push_back(parse_baseline(h.substr(0, h.size() - 6)));
    }
  }

  std::vector<BenchRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_line(line);
    if (f.size() != header.size()) {
      throw Error(ErrorCode::Parse, "CSV line " + std::to_string(line_no) + " has wrong field count");
    }
    auto get = [&](const std::string& name) -> const std::string& { return f[col.at(name)]; };
    auto opt_time = [&](const std::string& name) {
      return col.count(name) ? std::stod(get(name)) : 0.0;
    };
    try {
      BenchRecord r;
      r.m = std::stoull(get("m"));
      r.idx = std::stoull(get("idx"));
      r.hash = std::stoull(get("hash"), nullptr, 16);
      r.w_log2 = std::stod(get("W_log2"));
      r.lb = std::stod(get("lb"));
      r.dp = AlgoRun{std::stod(get("dp_delay")), std::stoull(get("dp_size")), opt_time("dp_time_us")};
      if (col.count("dpsize_delay")) {
        r.dp_size = AlgoRun{std::stod(get("dpsize_delay")), std::stoull(get("dpsize_size")),
                            opt_time("dpsize_time_us")};
      }
      for (BaselineFamily fam : families) {
        const std::string name = to_string(fam);
        r.baselines.emplace_back(fam, AlgoRun{std::stod(get(name + "_delay")),
                                              std::stoull(get(name + "_size")),
                                              opt_time(name + "_time_us")});
      }
      if (!get("oracle_delay").empty()) r.oracle = std::stod(get("oracle_delay"));
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::Parse, "CSV line " + std::to_string(line_no) + " has a bad number");
    }
  }
  return out;
}

double delay_upper_bound(double w_log2, std::size_t m) {
  const double l1 = std::log2(static_cast<double>(m));
  return w_log2 + std::log2(l1) + std::log2(std::log2(l1)) + 4.3;
}

std::vector<SliceSummary> summarize(const std::vector<BenchRecord>& records) {
  std::map<std::size_t, std::vector<const BenchRecord*>> by_m;
  for (const BenchRecord& r : records) by_m[r.m].push_back(&r);

  std::vector<SliceSummary> out;
  for (const auto& [m, rows] : by_m) {
    SliceSummary s;
    s.m = m;
    s.count = rows.size();
    std::vector<double> gains;
    double overhead_sum = 0.0;
    std::size_t overhead_n = 0;
    double time_sum = 0.0;
    for (const BenchRecord* r : rows) {
      time_sum += r->dp.time_us;
      if (std::abs(r->dp.delay - r->lb) < kEps) ++s.lb_matches;
      if (m >= 3 && r->dp.delay > delay_upper_bound(r->w_log2, m) + kEps) ++s.bound_violations;
      if (r->oracle) {
        ++s.oracle_eligible;
        const double diff = r->dp.delay - *r->oracle;
        if (std::abs(diff) < kEps) ++s.oracle_matches;
        if (diff <= 1.0 + kEps) ++s.oracle_within_one;
      }
      if (r->dp_size) {
        if (std::abs(r->dp_size->delay - r->dp.delay) > kEps) ++s.size_mode_delay_mismatches;
        if (r->dp_size->size > r->dp.size) ++s.size_mode_larger;
      }
      for (const auto& [family, run] : r->baselines) {
        if (r->dp.delay > run.delay + kEps) ++s.dominance_violations;
      }
      if (const auto best = r->best_baseline()) {
        const double gain = best->delay - r->dp.delay;
        gains.push_back(gain);
        ++s.gain_histogram[std::llround(gain)];
        const std::size_t size = r->dp_size ? r->dp_size->size : r->dp.size;
        if (best->size > 0) {
          overhead_sum += static_cast<double>(size) / static_cast<double>(best->size) - 1.0;
          ++overhead_n;
        }
      }
    }
    if (!gains.empty()) {
      s.gain_median = median(gains);
      double sum = 0.0;
      for (double g : gains) sum += g;
      s.gain_mean = sum / static_cast<double>(gains.size());
    }
    if (overhead_n) s.size_overhead_mean = overhead_sum / static_cast<double>(overhead_n);
    s.dp_time_mean_us = time_sum / static_cast<double>(rows.size());
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_summary(const std::vector<SliceSummary>& slices) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%4s %6s %8s %8s %6s %8s %6s %13s %8s %9s %10s  %s\n", "m", "count",
                "gain_med", "gain_avg", "dom_x", "lb_rate", "thm_x", "oracle_match", "within1",
                "size_ovh", "dp_us", "gain_histogram");
  os << buf;
  for (const SliceSummary& s : slices) {
    std::string hist;
    for (const auto& [gain, n] : s.gain_histogram) {
      if (!hist.empty()) hist += ' ';
      hist += std::to_string(gain) + ":" + std::to_string(n);
    }
    const double n = static_cast<double>(s.count);
    const std::string oracle =
        s.oracle_eligible ? std::to_string(s.oracle_matches) + "/" + std::to_string(s.oracle_eligible) : "-";
    const std::string within =
        s.oracle_eligible ? std::to_string(s.oracle_within_one) : "-";
    std::snprintf(buf, sizeof buf, "%4zu %6zu %8.2f %8.3f %6zu %8.3f %6zu %13s %8s %8.1f%%%s %10.1f  %s\n",
                  s.m, s.count, s.gain_median, s.gain_mean, s.dominance_violations,
                  static_cast<double>(s.lb_matches) / n, s.bound_violations, oracle.c_str(),
                  within.c_str(), 100.0 * s.size_overhead_mean, s.size_overhead_flagged() ? "!" : " ",
                  s.dp_time_mean_us, hist.c_str());
    os << buf;
  }
  return os.str();
}

BenchOutcome run_bench(const BenchConfig& cfg,
                       const std::function<void(const BenchRecord&)>& progress) {
  cfg.validate();
  std::ofstream csv;
  if (!cfg.csv_path.empty()) {
    csv.open(cfg.csv_path, std::ios::binary | std::ios::trunc);
    if (!csv) throw Error(ErrorCode::Io, "cannot write '" + cfg.csv_path + "'");
    csv << csv_header(cfg) << '\n';
  }
  BenchOutcome out;
  for (std::size_t m = cfg.m_min; m <= cfg.m_max; ++m) {
    for (std::size_t idx = 0; idx < cfg.count; ++idx) {
      BenchRecord r = run_instance(generate_instance(cfg.seed, m, idx), idx, cfg);
      if (csv.is_open()) csv << csv_row(r, cfg) << '\n';
      if (progress) progress(r);
      out.records.push_back(std::move(r));
    }
  }
  if (csv.is_open()) {
    csv.flush();
    if (!csv) throw Error(ErrorCode::Io, "write to '" + cfg.csv_path + "' failed");
  }
  out.summary = summarize(out.records);
  if (!cfg.summary_path.empty()) write_file(cfg.summary_path, format_summary(out.summary));
  return out;
}

std::string emit_dot(const Circuit& c) {
  const std::vector<NodeId> order = topological_order(c);
  std::vector<double> arrival(c.node_count(), 0.0);
  for (NodeId id : order) {
    const Node& n = c.node(id);
    if (!n.is_gate()) {
      arrival[id] = n.arrival;
      continue;
    }
    double a = -std::numeric_limits<double>::infinity();
    for (NodeId p : n.preds) a = std::max(a, arrival[p]);
    arrival[id] = a + 1.0;
  }

  std::ostringstream os;
  os << "digraph circuit {\n  rankdir=LR;\n  node [fontname=\"Helvetica\"];\n";
  os << "  { rank=source;\n";
  for (NodeId id = 0; id < c.node_count(); ++id) {
    const Node& n = c.node(id);
    if (n.is_gate()) continue;
    os << "    n" << id << " [shape=box, label=\"t" << n.input << "\\n@" << num(arrival[id]) << "\"];\n";
  }
  os << "  }\n";
  for (NodeId id = 0; id < c.node_count(); ++id) {
    const Node& n = c.node(id);
    if (!n.is_gate()) continue;
    os << "  n" << id << " [shape=" << (id == c.output() ? "doublecircle" : "circle") << ", label=\""
       << (n.kind == NodeKind::And ? "AND" : "OR") << "\\n@" << num(arrival[id]) << "\"];\n";
  }
  for (NodeId id = 0; id < c.node_count(); ++id) {
    for (NodeId p : c.node(id).preds) os << "  n" << p << " -> n" << id << ";\n";
  }
  os << "}\n";
  return os.str();
}

ToyNetlist random_toy_netlist(std::uint64_t seed, std::size_t max_inputs) {
  if (max_inputs < 2) throw Error(ErrorCode::Malformed, "toy netlist needs at least 2 inputs");
  SplitMix64 rng(mix64(seed ^ 0x6a09e667f3bcc909ULL));
  Netlist n;
  auto coord = [&] { return static_cast<double>(rng.below(101)); };
  auto new_input = [&] {
    std::string id = "i" + std::to_string(n.inputs.size());
    const double arrival = static_cast<double>(rng.below(201));
    n.inputs.push_back(NetlistInput{id, arrival, Point{coord(), coord()}});
    return id;
  };
  auto add_cell = [&](CellType type, std::vector<std::string> pins) {
    std::string id = "c" + std::to_string(n.cells.size());
    n.cells.push_back(Cell{id, type, std::move(pins), Point{coord(), coord()}});
    return id;
  };

  const std::size_t budget = 2 + rng.below(max_inputs - 1);
  const std::string x = new_input();
  std::string spine = x;
  static constexpr CellType kLogic[] = {CellType::And2, CellType::Or2,   CellType::Nand2,
                                        CellType::Nor2, CellType::Aoi21, CellType::Oai21};
  static constexpr CellType kTwoPin[] = {CellType::And2, CellType::Or2, CellType::Nand2,
                                         CellType::Nor2};
  static constexpr CellType kSide[] = {CellType::And2, CellType::Nor2, CellType::Nand2};
  while (n.inputs.size() < budget) {
    const std::size_t left = budget - n.inputs.size();
    if (rng.below(6) == 0) {
      spine = add_cell(rng.below(2) ? CellType::Inv : CellType::Buf, {spine});
      continue;
    }
    const CellType type = left >= 2 ? kLogic[rng.below(6)] : kTwoPin[rng.below(4)];
    const std::size_t pins = pin_count(type);
    std::vector<std::string> drivers(pins);
    const std::size_t spine_pin = rng.below(pins);
    std::size_t remaining = left;
    for (std::size_t p = 0; p < pins; ++p) {
      if (p == spine_pin) continue;
      const std::size_t needed_after = pins - 1 - p - (spine_pin > p ? 1 : 0);
      if (remaining >= needed_after + 3 && rng.below(4) == 0) {
        const std::string a = new_input();
        const std::string b = new_input();
        drivers[p] = add_cell(kSide[rng.below(3)], {a, b});
        remaining -= 2;
      } else {
        drivers[p] = new_input();
        remaining -= 1;
      }
    }
    drivers[spine_pin] = spine;
    spine = add_cell(type, std::move(drivers));
  }
  n.output = spine;
  n.validate();
  return ToyNetlist{std::move(n), x};
}

}  // namespace aop
