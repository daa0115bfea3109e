// SPDX-License-Identifier: Apache-2.0
//
// ils: exact integer linear scaling (nearest integer to i*D/A) on checked
// fixed-width integer lanes. Subcommands: solve, check, fuzz, bench,
// zeroed-sweep. All numeric arguments are exact decimal integers; float
// literals are rejected by parsing.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ils/ils.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitOverflow = 2;
constexpr int kExitFuzzFailure = 3;

ils::Width parse_width(std::int64_t bits) {
  if (bits == 32) return ils::Width::w32;
  if (bits == 64) return ils::Width::w64;
  throw CLI::ValidationError("--width must be 32 or 64");
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

// Writes content to path atomically: temp file in place, then rename.
bool write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << content;
    if (!out.flush()) {
      std::remove(tmp.c_str());
      return false;
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    return false;
  }
  return true;
}

struct SolveArgs {
  std::string algo;
  std::int64_t width_bits = 64;
  std::int64_t i = 0;
  std::int64_t d = 0;
  std::int64_t a = 1;
  std::int64_t sign = +1;
  std::optional<std::int64_t> kappa;
  std::optional<std::int64_t> chunks;
};

int run_solve(const SolveArgs& args) {
  const ils::Width w = parse_width(args.width_bits);
  if (args.sign != 1 && args.sign != -1) {
    std::cerr << "--sign must be +1 or -1\n";
    return kExitUsage;
  }
  const ils::ScaleProblem p{args.i, args.d, args.a};
  const bool negate = args.sign == -1 && p.i != 0 && p.d != 0;
  const ils::BigNearest truth = ils::exact_nearest_half_up(p.i, p.d, p.a);

  std::string j_text, delta_text;
  if (args.algo == "oracle") {
    const ils::BigInt j = negate ? ils::BigInt(-truth.j) : truth.j;
    const ils::BigInt delta = negate ? ils::BigInt(-truth.delta) : truth.delta;
    j_text = j.str();
    delta_text = delta.str();
  } else {
    ils::Result<ils::NearestSolution> r = [&]() {
      if (args.algo == "div") return ils::round_half_up_div(p, w);
      if (args.algo == "mdid") return ils::mdid(p, w);
      if (args.algo == "ds") {
        return ils::direct_search(p, args.kappa.value_or(p.i), 0, w);
      }
      if (args.algo == "adds") {
        ils::ChunkPlan plan;
        if (args.chunks) {
          plan.chunks = ils::split_even(p.i, *args.chunks);
          plan.width = w;
        } else {
          auto planned = ils::plan_chunks(p.i, p.d, p.a, w);
          if (!planned) return ils::Result<ils::NearestSolution>(planned.error());
          plan = planned.value();
        }
        auto run = ils::additive_direct_search(plan, p.d, p.a);
        if (!run) return ils::Result<ils::NearestSolution>(run.error());
        return ils::Result<ils::NearestSolution>(
            ils::NearestSolution{run.value().j, run.value().delta});
      }
      throw CLI::ValidationError(
          "--algo must be one of div|mdid|ds|adds|oracle");
    }();
    if (!r) {
      std::cerr << "overflow: " << r.error().describe() << "\n";
      return kExitOverflow;
    }
    const std::int64_t j = negate ? -r.value().j : r.value().j;
    const std::int64_t delta = negate ? -r.value().delta : r.value().delta;
    j_text = std::to_string(j);
    delta_text = std::to_string(delta);
  }
  std::cout << "j=" << j_text << " delta=" << delta_text
            << " algo=" << args.algo << " ties=" << bool_str(truth.tie)
            << "\n";
  return kExitOk;
}

struct CheckArgs {
  std::string algo;
  std::int64_t width_bits = 64;
  std::int64_t i = 0;
  std::int64_t d = 0;
  std::int64_t a = 1;
  std::optional<std::int64_t> kappa;
  std::int64_t carry = 0;
  std::optional<std::int64_t> chunks;
};

int run_check(const CheckArgs& args) {
  const ils::Width w = parse_width(args.width_bits);
  const ils::ScaleProblem p{args.i, args.d, args.a};
  ils::GuardReport rep;
  if (args.algo == "div") {
    rep = ils::check_rounded_div(p, w);
  } else if (args.algo == "mdid") {
    rep = ils::check_mdid(p, w);
  } else if (args.algo == "ds") {
    rep = ils::check_ds(p, args.kappa.value_or(p.i), args.carry, w);
  } else if (args.algo == "adds") {
    ils::ChunkPlan plan;
    if (args.chunks) {
      plan.chunks = ils::split_even(p.i, *args.chunks);
      plan.width = w;
    } else {
      auto planned = ils::plan_chunks(p.i, p.d, p.a, w);
      if (!planned) {
        std::cout << "algorithm=adds satisfied=false\n";
        std::cout << "violated: " << planned.error().describe() << "\n";
        return kExitOverflow;
      }
      plan = planned.value();
    }
    rep = ils::check_adds(plan, p.d, p.a);
  } else {
    throw CLI::ValidationError("--algo must be one of div|mdid|ds|adds");
  }
  std::cout << "algorithm=" << ils::algorithm_name(rep.algorithm)
            << " satisfied=" << bool_str(rep.satisfied) << "\n";
  for (const std::string& name : rep.violated_names()) {
    std::cout << "violated: " << name << "\n";
  }
  return rep.satisfied ? kExitOk : kExitOverflow;
}

int run_fuzz(std::int64_t width_bits, std::int64_t trials,
             std::uint64_t seed) {
  const ils::Width w = parse_width(width_bits);
  if (trials < 1) {
    std::cerr << "--trials must be >= 1\n";
    return kExitUsage;
  }
  const auto suites = ils::fuzz::run_all_suites(w, trials, seed);
  bool any_failed = false;
  std::string first_failure;
  for (const auto& s : suites) {
    std::cout << "suite=" << s.name << " checked=" << s.checked
              << " failures=" << s.failures << "\n";
    if (s.failures > 0 && !any_failed) {
      any_failed = true;
      first_failure = s.first_failure;
    }
  }
  if (any_failed) {
    std::cerr << "failing instance: " << first_failure << "\n";
    return kExitFuzzFailure;
  }
  return kExitOk;
}

struct BenchArgs {
  std::string scenario;
  std::string out;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> width_bits;
  std::optional<std::int64_t> d;
  std::vector<std::int64_t> i_values;
  std::vector<std::int64_t> adds_n;
  std::optional<std::int64_t> skew_ppm;
  std::vector<std::string> algos;
};

int run_bench(const BenchArgs& args) {
  using namespace ils::bench;
  // fig3-* presets are zeroed-carry sweeps; everything else is a table run.
  if (auto sweep = sweep_preset(args.scenario)) {
    if (args.samples) sweep->samples = *args.samples;
    if (args.seed) sweep->seed = *args.seed;
    const SweepResult res = run_zeroed_sweep(*sweep);
    std::ostringstream csv;
    write_sweep_csv(csv, *sweep, res);
    if (!write_file_atomic(args.out, csv.str())) {
      std::cerr << "cannot write " << args.out << "\n";
      return kExitUsage;
    }
    std::cout << "wrote " << args.out << " rows=" << res.cells.size()
              << " max_abs_error=" << res.max_abs_error
              << " bound_ok=" << bool_str(res.bound_ok) << "\n";
    return kExitOk;
  }

  ScenarioConfig cfg;
  if (!args.scenario.empty()) {
    const auto preset = table_preset(args.scenario);
    if (!preset) {
      std::cerr << "unknown scenario: " << args.scenario << "\n";
      return kExitUsage;
    }
    cfg = *preset;
  } else {
    if (!args.width_bits || !args.d || args.i_values.empty()) {
      std::cerr << "need --scenario, or --width, --d and --i\n";
      return kExitUsage;
    }
    cfg.width = parse_width(*args.width_bits);
    cfg.d = *args.d;
    cfg.i_values = args.i_values;
    cfg.adds_n_override = args.adds_n;
  }
  if (args.samples) cfg.samples = *args.samples;
  if (args.seed) cfg.seed = *args.seed;
  if (args.skew_ppm) cfg.skew_ppm = *args.skew_ppm;
  if (!args.algos.empty()) {
    cfg.algorithms.clear();
    for (const std::string& name : args.algos) {
      if (name == "binary32") cfg.algorithms.push_back(BenchAlgo::binary32);
      else if (name == "binary64") cfg.algorithms.push_back(BenchAlgo::binary64);
      else if (name == "mdid") cfg.algorithms.push_back(BenchAlgo::mdid);
      else if (name == "adds") cfg.algorithms.push_back(BenchAlgo::adds);
      else {
        std::cerr << "unknown algorithm: " << name << "\n";
        return kExitUsage;
      }
    }
  }
  std::vector<TableRow> rows;
  try {
    rows = run_table_experiment(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  std::ostringstream csv;
  write_table_csv(csv, cfg, rows);
  if (!write_file_atomic(args.out, csv.str())) {
    std::cerr << "cannot write " << args.out << "\n";
    return kExitUsage;
  }
  std::cout << "wrote " << args.out << " rows=" << rows.size() << "\n";
  return kExitOk;
}

struct SweepArgs {
  std::int64_t width_bits = 32;
  std::int64_t i_equals_d = 1'000'000;
  std::int64_t u_range = 1'000;
  std::vector<std::int64_t> n_values;
  std::int64_t samples = 10'000;
  std::uint64_t seed = 42;
  std::string out;
};

int run_sweep(const SweepArgs& args) {
  using namespace ils::bench;
  FigureSweepConfig cfg;
  cfg.width = parse_width(args.width_bits);
  cfg.i_equals_d = args.i_equals_d;
  cfg.u_range = args.u_range;
  for (std::int64_t n : args.n_values) cfg.n_values.push_back(static_cast<int>(n));
  cfg.samples = args.samples;
  cfg.seed = args.seed;
  SweepResult res;
  try {
    res = run_zeroed_sweep(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  std::ostringstream csv;
  write_sweep_csv(csv, cfg, res);
  if (!write_file_atomic(args.out, csv.str())) {
    std::cerr << "cannot write " << args.out << "\n";
    return kExitUsage;
  }
  std::cout << "wrote " << args.out << " rows=" << res.cells.size()
            << " max_abs_error=" << res.max_abs_error
            << " bound_ok=" << bool_str(res.bound_ok) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact integer linear scaling: nearest integer to i*D/A"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "solve one instance with a chosen kernel");
  solve_cmd->add_option("--algo", solve.algo, "div|mdid|ds|adds|oracle")
      ->required();
  solve_cmd->add_option("--width", solve.width_bits, "lane width (32|64)");
  solve_cmd->add_option("--i", solve.i, "count")->required();
  solve_cmd->add_option("--d", solve.d, "numerator scale")->required();
  solve_cmd->add_option("--a", solve.a, "denominator scale")->required();
  solve_cmd->add_option("--sign", solve.sign, "sign of i*D (+1|-1)");
  auto* kappa_opt =
      solve_cmd->add_option("--kappa", solve.kappa, "ds initial guess");
  auto* chunks_opt =
      solve_cmd->add_option("--chunks", solve.chunks, "adds chunk count");

  CheckArgs check;
  CLI::App* check_cmd = app.add_subcommand(
      "check", "evaluate non-overflow conditions without running");
  check_cmd->add_option("--algo", check.algo, "div|mdid|ds|adds")->required();
  check_cmd->add_option("--width", check.width_bits, "lane width (32|64)");
  check_cmd->add_option("--i", check.i, "count")->required();
  check_cmd->add_option("--d", check.d, "numerator scale")->required();
  check_cmd->add_option("--a", check.a, "denominator scale")->required();
  check_cmd->add_option("--kappa", check.kappa, "ds initial guess");
  check_cmd->add_option("--carry", check.carry, "ds residual carry");
  check_cmd->add_option("--chunks", check.chunks, "adds chunk count");

  std::int64_t fuzz_width = 64;
  std::int64_t fuzz_trials = 0;
  std::uint64_t fuzz_seed = 42;
  CLI::App* fuzz_cmd =
      app.add_subcommand("fuzz", "run the randomized differential suites");
  fuzz_cmd->add_option("--width", fuzz_width, "lane width (32|64)");
  fuzz_cmd->add_option("--trials", fuzz_trials, "instances per suite")
      ->required();
  fuzz_cmd->add_option("--seed", fuzz_seed, "rng seed")->envname("ILS_SEED");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "run a compensation-error experiment, write CSV");
  bench_cmd->add_option("--scenario", bench.scenario,
                        "int32-d1e6|int32-d1e8|int64-d1e9|int64-d1e12|"
                        "fig3-int32|fig3-int64");
  bench_cmd->add_option("--out", bench.out, "output CSV path")->required();
  bench_cmd->add_option("--samples", bench.samples, "samples per row");
  bench_cmd->add_option("--seed", bench.seed, "rng seed")->envname("ILS_SEED");
  bench_cmd->add_option("--width", bench.width_bits, "lane width (32|64)");
  bench_cmd->add_option("--d", bench.d, "numerator scale");
  bench_cmd->add_option("--i", bench.i_values, "clock values (repeatable)");
  bench_cmd->add_option("--adds-n", bench.adds_n,
                        "explicit adds chunk counts, parallel to --i");
  bench_cmd->add_option("--skew-ppm", bench.skew_ppm, "skew half-range (ppm)");
  bench_cmd->add_option("--algos", bench.algos,
                        "subset of binary32 binary64 mdid adds");

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "zeroed-sweep", "zeroed-carry diagnostic sweep, write CSV");
  sweep_cmd->add_option("--width", sweep.width_bits, "lane width (32|64)");
  sweep_cmd->add_option("--i-equals-d", sweep.i_equals_d, "i and D value")
      ->required();
  sweep_cmd->add_option("--u-range", sweep.u_range, "a = d + u, u in [1,R]")
      ->required();
  sweep_cmd->add_option("--n", sweep.n_values, "chunk counts (default 1..20)");
  sweep_cmd->add_option("--samples", sweep.samples, "samples per N");
  sweep_cmd->add_option("--seed", sweep.seed, "rng seed")->envname("ILS_SEED");
  sweep_cmd->add_option("--out", sweep.out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      if (*kappa_opt && solve.algo != "ds") {
        std::cerr << "--kappa only applies to --algo ds\n";
        return kExitUsage;
      }
      if (*chunks_opt && solve.algo != "adds") {
        std::cerr << "--chunks only applies to --algo adds\n";
        return kExitUsage;
      }
      return run_solve(solve);
    }
    if (check_cmd->parsed()) return run_check(check);
    if (fuzz_cmd->parsed()) return run_fuzz(fuzz_width, fuzz_trials, fuzz_seed);
    if (bench_cmd->parsed()) return run_bench(bench);
    if (sweep_cmd->parsed()) return run_sweep(sweep);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
