// SPDX-License-Identifier: Apache-2.0
#ifndef ILS_BENCH_HPP
#define ILS_BENCH_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ils/core.hpp"
#include "ils/decompose.hpp"
#include "ils/oracle.hpp"
#include "ils/rng.hpp"
#include "ils/types.hpp"

// Clock-skew compensation experiments: for a fixed tick scale d and a sweep
// of clock values i, draw interarrival scales a corresponding to a uniform
// skew, run each algorithm per sample, and tabulate the compensation error
// against the exact oracle. Deterministic: every sample's randomness comes
// from a stream keyed by (seed, sample index), so output is bit-identical
// for a given config regardless of platform or evaluation order.

namespace ils::bench {

enum class BenchAlgo { binary32, binary64, mdid, adds };

inline const char* bench_algo_name(BenchAlgo a) {
  switch (a) {
    case BenchAlgo::binary32: return "binary32";
    case BenchAlgo::binary64: return "binary64";
    case BenchAlgo::mdid: return "mdid";
    case BenchAlgo::adds: return "adds";
  }
  return "?";
}

// Clock skew as an exact rational, numerator over 1e6 * 2^24 (ppm times a
// binary fraction grid). Generation stays float-free.
struct Skew {
  std::int64_t num = 0;
  static constexpr std::int64_t den = 1'000'000ll * (1ll << 24);
};

struct ScenarioConfig {
  Width width = Width::w32;
  std::int64_t d = 1'000'000;
  std::vector<std::int64_t> i_values;
  std::int64_t samples = 1'000'000;
  std::int64_t skew_ppm = 100;
  std::uint64_t seed = 42;
  // Explicit chunk counts per i (parallel to i_values); empty means the
  // planner picks the minimal safe N per sample.
  std::vector<std::int64_t> adds_n_override;
  std::vector<BenchAlgo> algorithms{BenchAlgo::binary32, BenchAlgo::binary64,
                                    BenchAlgo::mdid, BenchAlgo::adds};
};

inline void validate(const ScenarioConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("bench: samples < 1");
  if (cfg.skew_ppm < 0) throw std::invalid_argument("bench: skew_ppm < 0");
  if (cfg.d < 1 || cfg.d > lane_max(cfg.width)) {
    throw std::invalid_argument("bench: d out of range for width");
  }
  if (cfg.i_values.empty()) throw std::invalid_argument("bench: no i values");
  for (std::int64_t i : cfg.i_values) {
    if (i < 1 || i > lane_max(cfg.width)) {
      throw std::invalid_argument("bench: i out of range for width");
    }
  }
  if (!cfg.adds_n_override.empty() &&
      cfg.adds_n_override.size() != cfg.i_values.size()) {
    throw std::invalid_argument("bench: adds_n_override size mismatch");
  }
  if (cfg.skew_ppm > 500'000) {
    throw std::invalid_argument("bench: skew_ppm too large");
  }
  // The drawn a = round(d*(1+eps)) must itself be representable.
  const __int128 worst_a = static_cast<__int128>(cfg.d) +
                           (static_cast<__int128>(cfg.d) * cfg.skew_ppm +
                            999'999) / 1'000'000;
  if (worst_a > std::numeric_limits<std::int64_t>::max()) {
    throw std::invalid_argument("bench: d*(1+skew) exceeds int64");
  }
}

// a = round(d * (1 + num/den)), clamped to >= 1, rounding half away from
// zero. Exact integer arithmetic throughout.
inline std::int64_t skew_to_a(std::int64_t d, std::int64_t num,
                              std::int64_t den) {
  const __int128 prod = static_cast<__int128>(d) * num;
  const __int128 dden = den;
  __int128 q = prod / dden;
  const __int128 r = prod % dden;
  if (2 * (r < 0 ? -r : r) >= dden) q += (prod < 0 ? -1 : 1);
  __int128 a = static_cast<__int128>(d) + q;
  if (a < 1) a = 1;
  const __int128 hi = std::numeric_limits<std::int64_t>::max();
  if (a > hi) a = hi;
  return static_cast<std::int64_t>(a);
}

// Draws the sample's skew and the resulting integer interarrival scale.
inline std::pair<std::int64_t, Skew> gen_sample(const ScenarioConfig& cfg,
                                                std::int64_t index) {
  KeyedRng rng(cfg.seed, static_cast<std::uint64_t>(index));
  const std::int64_t bound = cfg.skew_ppm * (1ll << 24);
  Skew eps;
  eps.num = bound == 0 ? 0 : rng.next_in(-bound, bound);
  return {skew_to_a(cfg.d, eps.num, Skew::den), eps};
}

// Running error statistics over one table row. Overflowed samples are
// tallied but excluded from min/max/avg.
struct ErrorStats {
  std::optional<std::int64_t> err_min;
  std::optional<std::int64_t> err_max;
  __int128 err_sum = 0;
  std::int64_t overflow_count = 0;
  std::int64_t samples = 0;

  void add(const std::optional<std::int64_t>& err) {
    ++samples;
    if (!err) {
      ++overflow_count;
      return;
    }
    if (!err_min || *err < *err_min) err_min = *err;
    if (!err_max || *err > *err_max) err_max = *err;
    err_sum += *err;
  }

  bool all_overflow() const { return overflow_count == samples; }
  std::int64_t measured() const { return samples - overflow_count; }
};

inline ErrorStats summarize(const std::vector<std::optional<std::int64_t>>& errors) {
  ErrorStats s;
  for (const auto& e : errors) s.add(e);
  return s;
}

// Exact decimal rendering of sum/count, scientific with 6 significant
// digits ("-1.53770e+01"); "0" for an exact zero. Integer long division
// only, so output is platform-independent.
inline std::string format_average(__int128 sum, std::int64_t count) {
  if (count <= 0) throw std::invalid_argument("format_average: count <= 0");
  if (sum == 0) return "0";
  const bool neg = sum < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-sum)
                              : static_cast<unsigned __int128>(sum);
  const unsigned __int128 den = static_cast<unsigned __int128>(count);

  // Find the exponent: shift mag so the leading digit sits in the units
  // place of the quotient.
  int exp10 = 0;
  unsigned __int128 q = mag / den;
  if (q == 0) {
    while (mag * 10 / den == 0) {
      mag *= 10;
      --exp10;
    }
    mag *= 10;
    --exp10;
  } else {
    while (q >= 10) {
      ++exp10;
      q /= 10;
    }
  }

  // Produce 7 significant digits of mag / (den * 10^exp10) by long division.
  std::string digits;
  unsigned __int128 scaled_den = den;
  for (int k = 0; k < exp10; ++k) scaled_den *= 10;
  unsigned __int128 rem = mag;
  for (int k = 0; k < 7; ++k) {
    const unsigned __int128 dq = rem / scaled_den;
    digits.push_back(static_cast<char>('0' + static_cast<int>(dq)));
    rem = (rem - dq * scaled_den) * 10;
  }
  // Round half up on the 7th digit.
  if (digits[6] >= '5') {
    int k = 5;
    for (; k >= 0; --k) {
      if (digits[k] != '9') {
        ++digits[k];
        break;
      }
      digits[k] = '0';
    }
    if (k < 0) {
      digits.insert(digits.begin(), '1');
      ++exp10;
    }
  }
  std::string out = neg ? "-" : "";
  out += digits[0];
  out += '.';
  out += digits.substr(1, 5);
  char buf[8];
  std::snprintf(buf, sizeof buf, "e%+03d", exp10);
  out += buf;
  return out;
}

struct TableRow {
  BenchAlgo algo = BenchAlgo::adds;
  std::int64_t i = 0;
  std::optional<std::int64_t> n;  // chunk count, adds rows only
  ErrorStats stats;
};

namespace detail {

inline std::optional<std::int64_t> eval_fp_or_mdid(BenchAlgo algo,
                                                   const ScaleProblem& p,
                                                   Width w) {
  if (algo == BenchAlgo::mdid) {
    const Result<NearestSolution> r = mdid(p, w);
    if (!r) return std::nullopt;
    return r.value().j;
  }
  const FpReference r = fp_reference(algo == BenchAlgo::binary32
                                         ? FloatPrecision::binary32
                                         : FloatPrecision::binary64,
                                     p.i, p.d, p.a);
  if (r.status != FpStatus::ok) return std::nullopt;
  return r.value;
}

}  // namespace detail

// One row per (algorithm, i), emitted algorithm-major in config order. For
// adds rows the N column reports the override when present, otherwise the
// largest chunk count the planner used across samples.
inline std::vector<TableRow> run_table_experiment(const ScenarioConfig& cfg) {
  validate(cfg);
  std::vector<std::vector<TableRow>> blocks;
  const bool has_override = !cfg.adds_n_override.empty();
  for (std::size_t ii = 0; ii < cfg.i_values.size(); ++ii) {
    const std::int64_t i = cfg.i_values[ii];
    ChunkPlan override_plan;
    if (has_override) {
      override_plan.chunks = split_even(i, cfg.adds_n_override[ii]);
      override_plan.width = cfg.width;
    }

    std::vector<TableRow> block;
    block.reserve(cfg.algorithms.size());
    for (BenchAlgo algo : cfg.algorithms) {
      TableRow row;
      row.algo = algo;
      row.i = i;
      block.push_back(row);
    }
    std::int64_t planner_n_max = 0;
    for (std::int64_t s = 0; s < cfg.samples; ++s) {
      const auto [a, eps] = gen_sample(cfg, s);
      (void)eps;
      const ScaleProblem p{i, cfg.d, a};
      const BigNearest truth = exact_nearest_half_up(p.i, p.d, p.a);
      for (TableRow& row : block) {
        std::optional<std::int64_t> j;
        if (row.algo == BenchAlgo::adds) {
          if (has_override) {
            const Result<CarrySolution> r =
                additive_direct_search(override_plan, p.d, p.a);
            if (r) j = r.value().j;
          } else {
            const Result<ChunkPlan> planned =
                plan_chunks(p.i, p.d, p.a, cfg.width);
            if (planned) {
              planner_n_max = std::max(
                  planner_n_max,
                  static_cast<std::int64_t>(planned.value().chunks.size()));
              const Result<CarrySolution> r =
                  additive_direct_search(planned.value(), p.d, p.a);
              if (r) j = r.value().j;
            }
          }
        } else {
          j = detail::eval_fp_or_mdid(row.algo, p, cfg.width);
        }
        row.stats.add(compensation_error(j, truth));
      }
    }
    for (TableRow& row : block) {
      if (row.algo == BenchAlgo::adds) {
        row.n = has_override ? cfg.adds_n_override[ii] : planner_n_max;
      }
    }
    blocks.push_back(std::move(block));
  }
  std::vector<TableRow> rows;
  rows.reserve(cfg.algorithms.size() * cfg.i_values.size());
  for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
    for (const auto& block : blocks) rows.push_back(block[ai]);
  }
  return rows;
}

inline void write_table_csv(std::ostream& os, const ScenarioConfig& cfg,
                            const std::vector<TableRow>& rows) {
  os << "algorithm,width,D,i,N,samples,err_min,err_max,err_avg,"
        "overflow_count,note\n";
  for (const TableRow& row : rows) {
    os << bench_algo_name(row.algo) << ',' << width_bits(cfg.width) << ','
       << cfg.d << ',' << row.i << ',';
    if (row.n) os << *row.n;
    os << ',' << row.stats.samples << ',';
    if (!row.stats.all_overflow()) {
      os << *row.stats.err_min << ',' << *row.stats.err_max << ','
         << format_average(row.stats.err_sum, row.stats.measured());
    } else {
      os << ",,";
    }
    os << ',' << row.stats.overflow_count << ','
       << (row.stats.overflow_count > 0 ? "Overflow" : "") << '\n';
  }
}

// Zeroed-carry sweep (the diagnostic variant): i == d, a = d + u with u
// uniform in [1, u_range], additive_zeroed over n equal chunks; the error
// against the oracle is bounded by n/2 per run.
struct FigureSweepConfig {
  Width width = Width::w32;
  std::int64_t i_equals_d = 1'000'000;
  std::int64_t u_range = 1'000;
  std::vector<int> n_values;  // default 1..20
  std::int64_t samples = 10'000;
  std::uint64_t seed = 42;
};

struct SweepCell {
  int n = 0;
  std::int64_t sample = 0;
  std::int64_t u = 0;
  std::int64_t error = 0;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::int64_t max_abs_error = 0;
  bool bound_ok = true;  // max |error| <= n/2 held for every cell
};

inline SweepResult run_zeroed_sweep(const FigureSweepConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("sweep: samples < 1");
  if (cfg.u_range < 1) throw std::invalid_argument("sweep: u_range < 1");
  if (cfg.i_equals_d < 1 ||
      cfg.i_equals_d + cfg.u_range > lane_max(cfg.width)) {
    throw std::invalid_argument("sweep: i/u out of range for width");
  }
  std::vector<int> ns = cfg.n_values;
  if (ns.empty()) {
    for (int n = 1; n <= 20; ++n) ns.push_back(n);
  }
  SweepResult out;
  out.cells.reserve(ns.size() * static_cast<std::size_t>(cfg.samples));
  const std::int64_t i = cfg.i_equals_d;
  const std::int64_t d = cfg.i_equals_d;
  for (const int n : ns) {
    ChunkPlan plan;
    plan.width = cfg.width;
    plan.chunks = split_even(i, n);
    for (std::int64_t s = 0; s < cfg.samples; ++s) {
      KeyedRng rng(cfg.seed, static_cast<std::uint64_t>(s));
      const std::int64_t u = rng.next_in(1, cfg.u_range);
      const std::int64_t a = d + u;
      const Result<CarrySolution> r = additive_zeroed(plan, d, a);
      // i < a and the chunks are tiny relative to the lane; the planner
      // envelope holds by construction, so overflow here is a logic error.
      const std::optional<std::int64_t> err =
          compensation_error(r ? std::optional<std::int64_t>(r.value().j)
                               : std::nullopt,
                             i, d, a);
      if (!err) throw std::logic_error("zeroed sweep: unexpected overflow");
      const std::int64_t abs_err = *err < 0 ? -*err : *err;
      out.max_abs_error = std::max(out.max_abs_error, abs_err);
      if (2 * abs_err > n) out.bound_ok = false;
      out.cells.push_back(SweepCell{n, s, u, *err});
    }
  }
  return out;
}

inline void write_sweep_csv(std::ostream& os, const FigureSweepConfig& cfg,
                            const SweepResult& result) {
  os << "width,D,i,N,sample,u,error\n";
  for (const SweepCell& c : result.cells) {
    os << width_bits(cfg.width) << ',' << cfg.i_equals_d << ','
       << cfg.i_equals_d << ',' << c.n << ',' << c.sample << ',' << c.u << ','
       << c.error << '\n';
  }
}

// Named presets for the experiment grids (table scenarios and the
// zeroed-carry figure sweeps).
inline std::optional<ScenarioConfig> table_preset(const std::string& name) {
  ScenarioConfig cfg;
  if (name == "int32-d1e6") {
    cfg.width = Width::w32;
    cfg.d = 1'000'000;
    cfg.i_values = {1'000'000, 10'000'000, 100'000'000, 1'000'000'000};
    cfg.adds_n_override = {1, 1, 10, 100};
    return cfg;
  }
  if (name == "int32-d1e8") {
    cfg.width = Width::w32;
    cfg.d = 100'000'000;
    cfg.i_values = {1'000, 10'000, 100'000, 1'000'000, 10'000'000};
    return cfg;
  }
  if (name == "int64-d1e9") {
    cfg.width = Width::w64;
    cfg.d = 1'000'000'000;
    cfg.i_values = {1'000'000'000'000ll,     10'000'000'000'000ll,
                    100'000'000'000'000ll,   1'000'000'000'000'000ll,
                    10'000'000'000'000'000ll, 100'000'000'000'000'000ll,
                    1'000'000'000'000'000'000ll};
    cfg.adds_n_override = {1, 1, 10, 100, 1'000, 10'000, 100'000};
    return cfg;
  }
  if (name == "int64-d1e12") {
    cfg.width = Width::w64;
    cfg.d = 1'000'000'000'000ll;
    cfg.i_values = {10'000'000ll,         100'000'000ll,
                    1'000'000'000ll,      10'000'000'000ll,
                    100'000'000'000ll,    1'000'000'000'000ll,
                    10'000'000'000'000ll, 100'000'000'000'000ll};
    return cfg;
  }
  return std::nullopt;
}

inline std::optional<FigureSweepConfig> sweep_preset(const std::string& name) {
  FigureSweepConfig cfg;
  if (name == "fig3-int32") {
    cfg.width = Width::w32;
    cfg.i_equals_d = 1'000'000;
    cfg.u_range = 1'000;
    return cfg;
  }
  if (name == "fig3-int64") {
    cfg.width = Width::w64;
    cfg.i_equals_d = 1'000'000'000'000ll;
    cfg.u_range = 1'000'000;
    return cfg;
  }
  return std::nullopt;
}

}  // namespace ils::bench

#endif  // ILS_BENCH_HPP
