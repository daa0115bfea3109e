// SPDX-License-Identifier: Apache-2.0
#ifndef ILS_DECOMPOSE_HPP
#define ILS_DECOMPOSE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ils/core.hpp"
#include "ils/types.hpp"

// Additive decomposition of direct search: i is split into chunks i_1..i_N
// and one direct_search call runs per chunk, the exact residual of each
// chunk carried into the next. No rounding error accumulates for any N.

namespace ils {

// Initial-guess rule inside a chunked run. Only kappa_n = i_n is provided:
// it zeroes (kappa_n - i_n)*a, which is the inequality the planner inverts.
// A different policy would need a different planner bound.
enum class KappaPolicy { chunk_value };

// A partition of i into overflow-safe sub-problems.
struct ChunkPlan {
  std::vector<std::int64_t> chunks;  // non-negative, sums to the original i
  Width width = Width::w64;
  KappaPolicy kappa_policy = KappaPolicy::chunk_value;
};

// Splits i into n near-equal non-negative parts (first parts one larger when
// n does not divide i). Used for explicit-N runs.
inline std::vector<std::int64_t> split_even(std::int64_t i, std::int64_t n) {
  if (i < 0 || n < 1) throw std::invalid_argument("split_even: bad arguments");
  std::vector<std::int64_t> parts(static_cast<std::size_t>(n), i / n);
  for (std::int64_t k = 0; k < i % n; ++k) parts[static_cast<std::size_t>(k)]++;
  return parts;
}

namespace detail {

// Planner core: the per-chunk cap keeping |i_n*(a-d)| at least ceil(a/2)
// inside the lane with kappa_n = i_n, or 0 when the problem needs no
// chunking (zero problem or a == d).
inline Result<std::int64_t> plan_cap(std::int64_t i, std::int64_t d,
                                     std::int64_t a, Width w) {
  if (i < 0 || d < 0 || a < 1) {
    throw std::invalid_argument("plan_chunks: need i >= 0, d >= 0, a >= 1");
  }
  if (i > lane_max(w)) return Overflow{Cond::input_i};
  if (d > lane_max(w)) return Overflow{Cond::input_d};
  if (a > lane_max(w)) return Overflow{Cond::input_a};
  if (i == 0 || d == 0 || a == d) return std::int64_t{0};
  const std::int64_t skew = a > d ? a - d : d - a;   // |a-d|, fits int64
  const std::int64_t half_up_a = a / 2 + (a & 1);    // ceil(a/2)
  const std::int64_t cap = (lane_max(w) - half_up_a) / skew;
  if (cap == 0) return Overflow{Cond::adds_cap};
  return cap;
}

}  // namespace detail

// Number of chunks plan_chunks would produce, without materializing them.
// Useful before committing memory: a plan stores 8 bytes per chunk.
inline Result<std::int64_t> plan_chunk_count(std::int64_t i, std::int64_t d,
                                             std::int64_t a, Width w) {
  const Result<std::int64_t> cap = detail::plan_cap(i, d, a, w);
  if (!cap) return cap;
  if (cap.value() == 0) return std::int64_t{1};
  return i / cap.value() + (i % cap.value() != 0 ? 1 : 0);
}

// Plans the smallest number of equal-size chunks (last chunk smaller) such
// that with kappa_n = i_n every chunk initialization |i_n*(a-d)| stays at
// least ceil(a/2) away from the lane bounds, leaving room for any valid
// carry. When a == d (or the problem is zero) a single chunk suffices.
inline Result<ChunkPlan> plan_chunks(std::int64_t i, std::int64_t d,
                                     std::int64_t a, Width w) {
  const Result<std::int64_t> cap = detail::plan_cap(i, d, a, w);
  if (!cap) return cap.error();

  ChunkPlan plan;
  plan.width = w;
  if (cap.value() == 0) {
    plan.chunks.assign(1, i);
    return plan;
  }
  const std::int64_t n =
      i / cap.value() + (i % cap.value() != 0 ? 1 : 0);
  plan.chunks.reserve(static_cast<std::size_t>(n));
  std::int64_t left = i;
  while (left > cap.value()) {
    plan.chunks.push_back(cap.value());
    left -= cap.value();
  }
  plan.chunks.push_back(left);
  return plan;
}

// Result of a chunked run: the accumulated solution, the final carry, and
// (when requested) the per-chunk (j_n, carry_n) trace.
struct CarrySolution {
  std::int64_t j = 0;
  std::int64_t delta = 0;  // final carry; equals j*a - i*d for the full i
  std::vector<NearestSolution> per_chunk;
};

namespace detail {

inline Result<CarrySolution> run_chunks(const ChunkPlan& plan, std::int64_t d,
                                        std::int64_t a, bool carry_residual,
                                        bool keep_trace) {
  if (d < 0 || a < 1) {
    throw std::invalid_argument("additive run: need d >= 0, a >= 1");
  }
  CarrySolution out;
  if (keep_trace) out.per_chunk.reserve(plan.chunks.size());
  std::int64_t carry = 0;
  int index = 0;
  for (const std::int64_t chunk : plan.chunks) {
    const Result<NearestSolution> r =
        direct_search(ScaleProblem{chunk, d, a}, chunk, carry, plan.width);
    if (!r) return Overflow{r.error().cond, index};
    std::int64_t acc;
    if (add_overflows(out.j, r.value().j, &acc) || acc > lane_max(plan.width)) {
      return Overflow{Cond::output, index};
    }
    out.j = acc;
    out.delta = r.value().delta;
    carry = carry_residual ? r.value().delta : 0;
    if (keep_trace) out.per_chunk.push_back(r.value());
    ++index;
  }
  return out;
}

}  // namespace detail

// Runs direct search over the plan, carrying each chunk's exact residual
// into the next. The result satisfies delta = j*a - i*d and 2*|delta| <= a
// for the full i = sum of chunks, for every N.
inline Result<CarrySolution> additive_direct_search(const ChunkPlan& plan,
                                                    std::int64_t d,
                                                    std::int64_t a,
                                                    bool keep_trace = false) {
  return detail::run_chunks(plan, d, a, /*carry_residual=*/true, keep_trace);
}

// Diagnostic variant: the carry is forced to zero before every chunk, so
// each chunk rounds independently. The accumulated j drifts from the true
// nearest solution by at most N/2 (half a unit per chunk); delta reports the
// last chunk's residual only.
inline Result<CarrySolution> additive_zeroed(const ChunkPlan& plan,
                                             std::int64_t d, std::int64_t a,
                                             bool keep_trace = false) {
  return detail::run_chunks(plan, d, a, /*carry_residual=*/false, keep_trace);
}

}  // namespace ils

#endif  // ILS_DECOMPOSE_HPP
