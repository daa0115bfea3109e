// SPDX-License-Identifier: Apache-2.0
#ifndef ILS_GUARD_HPP
#define ILS_GUARD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ils/bigint.hpp"
#include "ils/core.hpp"
#include "ils/decompose.hpp"
#include "ils/types.hpp"

// Standalone non-overflow predicates. Each check shadows its kernel step by
// step in arbitrary precision and reports every condition the real run would
// violate, so satisfied == true is a hard guarantee that the kernel returns
// a value. Checking itself can never overflow.

namespace ils {

enum class Algorithm { rounded_div, mdid, direct_search, adds };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::rounded_div: return "div";
    case Algorithm::mdid: return "mdid";
    case Algorithm::direct_search: return "ds";
    case Algorithm::adds: return "adds";
  }
  return "?";
}

struct GuardReport {
  Algorithm algorithm = Algorithm::rounded_div;
  bool satisfied = true;  // equivalent to violated.empty()
  std::vector<Overflow> violated;

  std::vector<std::string> violated_names() const {
    std::vector<std::string> names;
    names.reserve(violated.size());
    for (const Overflow& v : violated) names.push_back(v.describe());
    return names;
  }
};

namespace detail {

inline void guard_add(GuardReport* rep, Cond c, int chunk = -1) {
  rep->violated.push_back(Overflow{c, chunk});
  rep->satisfied = false;
}

inline bool in_lane(const BigInt& v, Width w) {
  return v >= lane_min(w) && v <= lane_max(w);
}

inline void guard_inputs(const ScaleProblem& p, Width w, GuardReport* rep) {
  if (p.i > lane_max(w)) guard_add(rep, Cond::input_i);
  if (p.d > lane_max(w)) guard_add(rep, Cond::input_d);
  if (p.a > lane_max(w)) guard_add(rep, Cond::input_a);
}

}  // namespace detail

inline GuardReport check_rounded_div(const ScaleProblem& p, Width w) {
  detail::require_valid(p);
  GuardReport rep;
  rep.algorithm = Algorithm::rounded_div;
  detail::guard_inputs(p, w, &rep);
  if (!rep.satisfied) return rep;

  const BigInt prod = BigInt(p.i) * p.d;
  if (prod > lane_max(w)) detail::guard_add(&rep, Cond::rdiv_product);
  const BigInt sum = prod + p.a / 2;
  if (sum > lane_max(w)) detail::guard_add(&rep, Cond::rdiv_sum);
  return rep;
}

inline GuardReport check_mdid(const ScaleProblem& p, Width w) {
  detail::require_valid(p);
  GuardReport rep;
  rep.algorithm = Algorithm::mdid;
  detail::guard_inputs(p, w, &rep);
  if (!rep.satisfied) return rep;

  const BigInt qd = BigInt(p.i / p.a) * p.d;
  if (qd > lane_max(w)) detail::guard_add(&rep, Cond::mdid_quotient_product);
  const BigInt t = BigInt(p.i % p.a) * p.d + p.a / 2;
  if (t > lane_max(w)) detail::guard_add(&rep, Cond::mdid_remainder_sum);
  if (p.i < p.a && p.d < p.a && BigInt(p.i) * p.d > lane_max(w)) {
    detail::guard_add(&rep, Cond::mdid_small_product);
  }
  if (qd + t / p.a > lane_max(w)) detail::guard_add(&rep, Cond::output);
  return rep;
}

// Shadows one direct_search call exactly, including the i*d == 0 shortcut
// and the evaluation order of the initialization. Also checks k1, which the
// summary condition leaves implicit, under its own name.
inline GuardReport check_ds(const ScaleProblem& p, std::int64_t kappa,
                            std::int64_t carry, Width w) {
  detail::require_valid(p);
  if (kappa < 0) throw std::invalid_argument("check_ds: kappa < 0");
  detail::require_valid_carry(carry, p.a);
  GuardReport rep;
  rep.algorithm = Algorithm::direct_search;
  detail::guard_inputs(p, w, &rep);
  if (kappa > lane_max(w)) detail::guard_add(&rep, Cond::input_kappa);
  if (!rep.satisfied) return rep;
  if (p.i == 0 || p.d == 0) return rep;  // kernel shortcut: j = 0, no lane math

  const BigInt s1 = (BigInt(kappa) - p.i) * p.a;
  if (!detail::in_lane(s1, w)) detail::guard_add(&rep, Cond::ds_guess_product);
  const BigInt s2 = BigInt(p.i) * (BigInt(p.a) - p.d);
  if (!detail::in_lane(s2, w)) detail::guard_add(&rep, Cond::ds_skew_product);
  const BigInt sum = s1 + s2;
  if (!detail::in_lane(sum, w)) detail::guard_add(&rep, Cond::ds_init_sum);
  const BigInt delta0 = sum + carry;
  if (!detail::in_lane(delta0, w)) detail::guard_add(&rep, Cond::ds_init_carry);
  if (!rep.satisfied) return rep;
  if (delta0 == 0) return rep;  // case 1 returns kappa directly

  // Truncated division, as the kernel computes it.
  const BigInt q = delta0 / p.a;
  const BigInt r = delta0 % p.a;
  const BigInt k1 = kappa - q;
  if (!detail::in_lane(k1, w)) detail::guard_add(&rep, Cond::ds_k1);
  BigInt j = k1;
  if (delta0 > 0) {
    if (p.a - r < r) j = k1 - 1;  // case 2.1
  } else {
    if (p.a + r < -r) j = k1 + 1;  // case 3.1
  }
  if (!detail::in_lane(j, w)) detail::guard_add(&rep, Cond::output);
  return rep;
}

// Per-chunk check with the worst-case carry magnitude ceil(a/2): the summary
// condition keeps every chunk initialization ceil(a/2) inside the lane, so
// any residual a previous chunk can emit is safe to add.
inline GuardReport check_adds(const ChunkPlan& plan, std::int64_t d,
                              std::int64_t a) {
  if (d < 0 || a < 1) {
    throw std::invalid_argument("check_adds: need d >= 0, a >= 1");
  }
  const Width w = plan.width;
  GuardReport rep;
  rep.algorithm = Algorithm::adds;
  if (d > lane_max(w)) detail::guard_add(&rep, Cond::input_d);
  if (a > lane_max(w)) detail::guard_add(&rep, Cond::input_a);
  if (!rep.satisfied) return rep;

  const BigInt half_up_a = BigInt(a) / 2 + (a & 1);
  BigInt total_i = 0;
  int index = 0;
  for (const std::int64_t chunk : plan.chunks) {
    if (chunk < 0) throw std::invalid_argument("check_adds: negative chunk");
    total_i += chunk;
    if (chunk > lane_max(w)) {
      detail::guard_add(&rep, Cond::adds_chunk_i, index);
    } else if (d != 0 && chunk != 0) {
      // kappa_n = i_n zeroes the guess term; envelope on i_n*(a-d).
      const BigInt init = BigInt(chunk) * (BigInt(a) - d);
      if (init < BigInt(lane_min(w)) + half_up_a ||
          init > BigInt(lane_max(w)) - half_up_a) {
        detail::guard_add(&rep, Cond::adds_envelope, index);
      }
    }
    ++index;
  }
  const BigInt j_total = (2 * total_i * d + a) / (2 * BigInt(a));
  if (j_total > lane_max(w)) detail::guard_add(&rep, Cond::output);
  return rep;
}

}  // namespace ils

#endif  // ILS_GUARD_HPP
