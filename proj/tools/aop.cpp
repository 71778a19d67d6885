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

// aop: command line front end.
//
// Exit status: 0 success, 1 invalid input or failed check, 2 internal
// invariant violation.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "aop/baselines.hpp"
#include "aop/bounds.hpp"
#include "aop/harness.hpp"
#include "aop/io.hpp"
#include "aop/normalize.hpp"
#include "aop/optimizer.hpp"
#include "aop/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kInvariant = 2;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    aop::write_file(path, text);
  }
}

struct OptimizeArgs {
  std::string input;
  std::string mode = "delay";
  std::string algorithm = "dp";
  std::string emit = "circuit";
  std::string output;
  bool stats = false;
};

int run_optimize(const OptimizeArgs& a) {
  const aop::AopInstance inst = aop::parse_instance(aop::read_file(a.input));
  aop::OptimizationResult r = [&] {
    if (a.algorithm == "dp") {
      return aop::optimize(inst, a.mode == "delay" ? aop::Mode::Delay : aop::Mode::DelaySize);
    }
    return aop::optimize_baseline(inst, aop::parse_baseline(a.algorithm));
  }();
  emit(a.output, a.emit == "dot" ? aop::emit_dot(r.circuit) : aop::format_circuit(r.circuit));
  if (a.stats) std::cerr << aop::format_result_summary(r);
  return kOk;
}

struct BenchArgs {
  aop::BenchConfig cfg;
  std::string baselines = "r2006,hs2017,immediate";
  bool no_oracle = false;
  bool no_size_mode = false;
  bool no_times = false;
  bool quiet = false;
};

int run_bench(BenchArgs a) {
  a.cfg.baselines = aop::parse_baseline_list(a.baselines);
  a.cfg.oracle = !a.no_oracle;
  a.cfg.size_mode = !a.no_size_mode;
  a.cfg.record_times = !a.no_times;
  std::size_t current_m = 0;
  const aop::BenchOutcome out = aop::run_bench(a.cfg, [&](const aop::BenchRecord& r) {
    if (!a.quiet && r.m != current_m) {
      current_m = r.m;
      std::cerr << "m=" << r.m << "\n";
    }
  });
  std::cout << aop::format_summary(out.summary);
  for (const aop::SliceSummary& s : out.summary) {
    if (s.dominance_violations || s.bound_violations || s.size_mode_delay_mismatches ||
        s.size_mode_larger) {
      std::cerr << "check failed at m=" << s.m << "\n";
      return kInvariant;
    }
  }
  return kOk;
}

int run_lb(const std::string& input) {
  const aop::AopInstance inst = aop::parse_instance(aop::read_file(input));
  std::cout << aop::format_lower_bound(aop::lower_bound(inst));
  return kOk;
}

int run_verify(const std::string& circuit_path, const std::string& instance_path) {
  const aop::AopInstance inst = aop::parse_instance(aop::read_file(instance_path));
  const aop::Circuit c = aop::parse_circuit(aop::read_file(circuit_path));
  const aop::ExtAopRef root{0, 0, static_cast<std::uint32_t>(inst.size() - 1),
                            inst.variant() == aop::Variant::Dual};
  const aop::VerificationReport rep = aop::verify(c, root, inst.size());
  std::cout << aop::format_verification(rep);
  return rep.structural_ok && rep.equivalent ? kOk : kInvalid;
}

struct NormalizeArgs {
  std::string netlist;
  std::string critical_input;
  double d_gate = 1.0;
  double d_dist = 0.0;
  std::string instance_out;
  std::string mapping_out;
};

int run_normalize(const NormalizeArgs& a) {
  const aop::Netlist n = aop::parse_netlist(aop::read_file(a.netlist));
  const aop::NormalizationResult r =
      aop::normalize(n, a.critical_input, aop::DelayModel{a.d_gate, a.d_dist});
  if (!a.instance_out.empty()) aop::write_file(a.instance_out, aop::format_instance(r.instance));
  emit(a.mapping_out, aop::format_normalization(r));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay optimization of And-Or paths"};
  app.require_subcommand(1);

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "Build a fast circuit for an instance");
  optimize->add_option("--input", opt.input, "Instance file")->required();
  optimize->add_option("--mode", opt.mode)->check(CLI::IsMember({"delay", "delay-size"}));
  optimize->add_option("--algorithm", opt.algorithm, "dp or a baseline")
      ->check(CLI::IsMember({"dp", "r2006", "hs2017", "immediate"}));
  optimize->add_option("--emit", opt.emit)->check(CLI::IsMember({"circuit", "dot"}));
  optimize->add_option("-o,--output", opt.output, "Output file (default stdout)");
  optimize->add_flag("--stats", opt.stats, "Print statistics to stderr");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Random instances against baselines and bounds");
  bench_cmd->add_option("--m-min", bench.cfg.m_min);
  bench_cmd->add_option("--m-max", bench.cfg.m_max);
  bench_cmd->add_option("--m-ceiling", bench.cfg.m_ceiling);
  bench_cmd->add_option("--count", bench.cfg.count);
  bench_cmd->add_option("--seed", bench.cfg.seed);
  bench_cmd->add_option("--baselines", bench.baselines, "Comma separated, may be empty");
  bench_cmd->add_option("--csv", bench.cfg.csv_path);
  bench_cmd->add_option("--summary", bench.cfg.summary_path);
  bench_cmd->add_flag("--no-oracle", bench.no_oracle);
  bench_cmd->add_flag("--no-size-mode", bench.no_size_mode);
  bench_cmd->add_flag("--no-times", bench.no_times, "Omit wall times from the CSV");
  bench_cmd->add_flag("-q,--quiet", bench.quiet);

  std::string lb_input;
  auto* lb = app.add_subcommand("lb", "Delay lower bounds");
  lb->add_option("--input", lb_input)->required();

  std::string verify_circuit, verify_instance;
  auto* verify = app.add_subcommand("verify", "Check a circuit against an instance");
  verify->add_option("--circuit", verify_circuit)->required();
  verify->add_option("--instance", verify_instance)->required();

  NormalizeArgs norm;
  auto* normalize = app.add_subcommand("normalize", "Turn a placed path into an instance");
  normalize->add_option("--netlist", norm.netlist)->required();
  normalize->add_option("--critical-input", norm.critical_input)->required();
  normalize->add_option("--dgate", norm.d_gate, "ps per gate");
  normalize->add_option("--ddist", norm.d_dist, "ps per um");
  normalize->add_option("--instance-out", norm.instance_out);
  normalize->add_option("--mapping-out", norm.mapping_out, "Mapping file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*optimize) return run_optimize(opt);
    if (*bench_cmd) return run_bench(bench);
    if (*lb) return run_lb(lb_input);
    if (*verify) return run_verify(verify_circuit, verify_instance);
    if (*normalize) return run_normalize(norm);
  } catch (const aop::Error& e) {
    std::cerr << "aop: " << e.what() << "\n";
    return e.code() == aop::ErrorCode::Invariant ? kInvariant : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "aop: " << e.what() << "\n";
    return kInvariant;
  }
  return kInvalid;
}
